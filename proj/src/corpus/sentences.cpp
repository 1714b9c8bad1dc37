#include "kgsec/corpus/sentences.hpp"

#include "kgsec/corpus/html_text.hpp"
#include "kgsec/text/tokenize.hpp"

#include <array>
#include <cctype>

namespace kgsec::corpus {

namespace {

constexpr std::array<std::string_view, 5> kAbbreviations{"e.g.", "i.e.", "etc.", "vs.", "cf."};

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool opens_sentence(char c) {
    return is_upper(c) || c == '"' || c == '\'' || c == '`' || c == '-' || static_cast<unsigned char>(c) >= 0x80;
}

// Whether the '.' at `dot` closes an abbreviation or a mid-sentence initial.
bool protected_period(std::string_view para, std::size_t sentence_start, std::size_t dot) {
    std::size_t word_start = dot;
    while (word_start > sentence_start && !is_space(para[word_start - 1])) --word_start;
    auto word = para.substr(word_start, dot - word_start + 1);
    while (!word.empty() && (word.front() == '(' || word.front() == '"' || word.front() == '\'')) word.remove_prefix(1);

    const auto lower = text::to_lower(word);
    for (auto abbr : kAbbreviations)
        if (lower == abbr) return true;

    // "J. Smith" style initial, unless it is the first word of the sentence.
    if (word.size() == 2 && is_upper(word[0])) {
        const bool first_word = text::trim(para.substr(sentence_start, word_start - sentence_start)).empty();
        return !first_word;
    }
    return false;
}

void segment_paragraph(std::string_view para, std::vector<std::string>& out) {
    std::size_t start = 0;
    auto emit = [&](std::size_t end) {
        std::string s;
        for (const auto& w : text::split_whitespace(para.substr(start, end - start))) {
            if (!s.empty()) s += ' ';
            s += w;
        }
        if (!s.empty()) out.push_back(std::move(s));
        start = end;
    };

    for (std::size_t i = 0; i < para.size(); ++i) {
        const char c = para[i];
        if (c != '.' && c != '!' && c != '?') continue;
        std::size_t j = i + 1;
        while (j < para.size() && (para[j] == ')' || para[j] == '"' || para[j] == '\'')) ++j;
        if (j >= para.size()) break;
        if (!is_space(para[j])) continue;
        std::size_t k = j;
        while (k < para.size() && is_space(para[k])) ++k;
        if (k >= para.size()) break;
        if (!opens_sentence(para[k])) continue;
        if (c == '.' && protected_period(para, start, i)) continue;
        emit(j);
        i = j - 1;
    }
    emit(para.size());
}

}  // namespace

std::vector<Sentence> split_sentences(std::string_view text, std::string_view doc_id) {
    std::vector<std::string> pieces;
    std::string paragraph;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const auto line = text.substr(pos, nl - pos);
        if (text::trim(line).empty()) {
            segment_paragraph(paragraph, pieces);
            paragraph.clear();
        } else {
            paragraph += line;
            paragraph += ' ';
        }
        pos = nl + 1;
    }
    segment_paragraph(paragraph, pieces);

    std::vector<Sentence> out;
    out.reserve(pieces.size());
    for (auto& p : pieces) out.push_back({std::string(doc_id), out.size(), std::move(p)});
    return out;
}

std::string document_text(const RawDocument& doc) {
    if (doc.format == DocFormat::Html) return html_to_text(doc.body);
    return doc.body;
}

}  // namespace kgsec::corpus
