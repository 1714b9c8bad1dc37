#include "kgsec/corpus/html_text.hpp"

#include "kgsec/error.hpp"
#include "kgsec/text/tokenize.hpp"
#include "kgsec/util/files.hpp"

#include <array>
#include <cctype>
#include <cstdint>

namespace kgsec::corpus {

namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

[[noreturn]] void fail(std::string_view html, std::size_t offset, const std::string& what) {
    const auto [line, col] = util::line_column(html, offset);
    throw ParseError(what, line, col);
}

}  // namespace

bool is_block_tag(std::string_view name) {
    static constexpr std::array<std::string_view, 24> kBlocks{
        "p",  "div", "li", "ul", "ol",    "dl",    "dt",      "dd",      "h1",         "h2",     "h3",     "h4",
        "h5", "h6",  "tr", "td", "th",    "table", "section", "article", "blockquote", "header", "footer", "pre"};
    for (auto b : kBlocks)
        if (b == name) return true;
    return false;
}

std::string decode_entities(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '&') {
            out += text[i];
            continue;
        }
        const std::size_t semi = text.find(';', i);
        if (semi == std::string_view::npos || semi - i > 10) {
            out += '&';
            continue;
        }
        const auto name = text.substr(i + 1, semi - i - 1);
        std::string rep;
        if (name == "amp") rep = "&";
        else if (name == "lt") rep = "<";
        else if (name == "gt") rep = ">";
        else if (name == "quot") rep = "\"";
        else if (name == "apos" || name == "#39") rep = "'";
        else if (name == "nbsp") rep = " ";
        else if (name.size() > 1 && name[0] == '#') {
            std::uint32_t cp = 0;
            bool ok = true;
            const bool hex = name[1] == 'x' || name[1] == 'X';
            for (std::size_t k = hex ? 2 : 1; k < name.size(); ++k) {
                const char c = name[k];
                if (hex && std::isxdigit(static_cast<unsigned char>(c)))
                    cp = cp * 16 + static_cast<std::uint32_t>(std::isdigit(static_cast<unsigned char>(c)) ? c - '0' : (std::tolower(c) - 'a' + 10));
                else if (!hex && std::isdigit(static_cast<unsigned char>(c)))
                    cp = cp * 10 + static_cast<std::uint32_t>(c - '0');
                else
                    ok = false;
            }
            if (ok && cp > 0 && cp < 0x110000) append_utf8(rep, cp);
        }
        if (rep.empty()) {
            out += '&';
            continue;
        }
        out += rep;
        i = semi;
    }
    return out;
}

std::vector<HtmlToken> tokenize_html(std::string_view html) {
    std::vector<HtmlToken> tokens;
    std::size_t i = 0;
    std::string text_buf;
    auto flush_text = [&] {
        if (!text_buf.empty()) {
            tokens.push_back({HtmlToken::Kind::Text, {}, decode_entities(text_buf)});
            text_buf.clear();
        }
    };

    while (i < html.size()) {
        if (html[i] != '<') {
            text_buf += html[i++];
            continue;
        }
        // A '<' not followed by a tag-ish character is literal text.
        if (i + 1 >= html.size() ||
            !(std::isalpha(static_cast<unsigned char>(html[i + 1])) || html[i + 1] == '/' || html[i + 1] == '!')) {
            text_buf += html[i++];
            continue;
        }
        flush_text();
        if (html.compare(i, 4, "<!--") == 0) {
            const auto end = html.find("-->", i + 4);
            if (end == std::string_view::npos) fail(html, i, "unterminated HTML comment");
            i = end + 3;
            continue;
        }
        const auto close = html.find('>', i);
        if (close == std::string_view::npos) fail(html, i, "unterminated HTML tag");
        auto inner = html.substr(i + 1, close - i - 1);
        i = close + 1;
        if (!inner.empty() && inner.front() == '!') continue;  // doctype

        const bool closing = !inner.empty() && inner.front() == '/';
        if (closing) inner.remove_prefix(1);
        std::size_t n = 0;
        while (n < inner.size() && (std::isalnum(static_cast<unsigned char>(inner[n])) || inner[n] == '-')) ++n;
        const std::string name = text::to_lower(inner.substr(0, n));
        if (name.empty()) fail(html, i, "malformed HTML tag");

        if (!closing && (name == "script" || name == "style")) {
            const std::string end_tag = "</" + name;
            std::size_t end = i;
            while (true) {
                end = html.find('<', end);
                if (end == std::string_view::npos) fail(html, i, "unterminated <" + name + "> element");
                if (text::to_lower(html.substr(end, end_tag.size())) == end_tag) break;
                ++end;
            }
            const auto gt = html.find('>', end);
            if (gt == std::string_view::npos) fail(html, end, "unterminated HTML tag");
            i = gt + 1;
            continue;
        }
        tokens.push_back({closing ? HtmlToken::Kind::Close : HtmlToken::Kind::Open, name, {}});
    }
    flush_text();
    return tokens;
}

std::string html_to_text(std::string_view html) {
    std::string out;
    for (const auto& tok : tokenize_html(html)) {
        switch (tok.kind) {
            case HtmlToken::Kind::Text: out += tok.text; break;
            case HtmlToken::Kind::Open:
            case HtmlToken::Kind::Close:
                if (tok.name == "br") out += '\n';
                else if (is_block_tag(tok.name)) out += "\n\n";
                break;
        }
    }
    return out;
}

}  // namespace kgsec::corpus
