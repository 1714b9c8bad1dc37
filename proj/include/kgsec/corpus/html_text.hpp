#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kgsec::corpus {

struct HtmlToken {
    enum class Kind { Text, Open, Close };
    Kind kind = Kind::Text;
    std::string name;  // lowercase tag name for Open/Close
    std::string text;  // decoded text for Text
};

/// Flat tag/text token stream. Comments, doctypes, and script/style bodies are
/// dropped; self-closing tags produce an Open only. Throws ParseError on an
/// unterminated tag or comment.
std::vector<HtmlToken> tokenize_html(std::string_view html);

std::string decode_entities(std::string_view text);

/// Visible text with block elements separated by blank lines and <br> as a newline.
std::string html_to_text(std::string_view html);

/// True for tags that start a new text block.
bool is_block_tag(std::string_view name);

}  // namespace kgsec::corpus
