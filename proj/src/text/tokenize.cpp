#include "kgsec/text/tokenize.hpp"

#include <cctype>

namespace kgsec::text {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

constexpr std::string_view kLeadingStrip = "\"'`([{<*";
constexpr std::string_view kTrailingStrip = "\"'`)]}>.,;:!?*";

std::string_view strip_wrapping(std::string_view tok) {
    bool changed = true;
    while (changed && !tok.empty()) {
        changed = false;
        if (kLeadingStrip.find(tok.front()) != std::string_view::npos) {
            tok.remove_prefix(1);
            changed = true;
        }
        if (!tok.empty() && kTrailingStrip.find(tok.back()) != std::string_view::npos) {
            tok.remove_suffix(1);
            changed = true;
        }
    }
    return tok;
}

}  // namespace

std::string_view trim(std::string_view text) {
    while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
    while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
    return text;
}

std::string to_lower(std::string_view text) {
    std::string out(text);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::vector<std::string> split_whitespace(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        std::size_t j = i;
        while (j < text.size() && !is_space(text[j])) ++j;
        if (j > i) out.emplace_back(text.substr(i, j - i));
        i = j;
    }
    return out;
}

std::vector<std::string> tokenize_preserving(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    auto is_break = [](char c) { return is_space(c) || c == '=' || c == ','; };
    while (i < text.size()) {
        while (i < text.size() && is_break(text[i])) ++i;
        std::size_t j = i;
        while (j < text.size() && !is_break(text[j])) ++j;
        if (j > i) {
            auto tok = strip_wrapping(text.substr(i, j - i));
            if (!tok.empty()) out.emplace_back(tok);
        }
        i = j;
    }
    return out;
}

}  // namespace kgsec::text
