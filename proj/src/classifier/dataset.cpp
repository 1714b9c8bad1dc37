#include "kgsec/classifier/dataset.hpp"

#include "kgsec/error.hpp"
#include "kgsec/util/files.hpp"

#include <algorithm>

namespace kgsec::classifier {

bool is_concept_label(std::string_view label) {
    return std::find(kConceptLabels.begin(), kConceptLabels.end(), label) != kConceptLabels.end();
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t line = 1, col = 0;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        if (!(row.size() == 1 && row[0].empty())) rows.push_back(std::move(row));
        row.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        ++col;
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                    if (i + 1 < text.size() && text[i + 1] != ',' && text[i + 1] != '\n' && text[i + 1] != '\r')
                        throw ParseError("unexpected character after closing quote", line, col + 1);
                }
            } else {
                if (c == '\n') {
                    ++line;
                    col = 0;
                }
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (field_started) throw ParseError("quote inside an unquoted field", line, col);
                in_quotes = true;
                field_started = true;
                break;
            case ',': end_field(); break;
            case '\r': break;
            case '\n':
                end_row();
                ++line;
                col = 0;
                break;
            default:
                field += c;
                field_started = true;
        }
    }
    if (in_quotes) throw ParseError("unterminated quoted field", line, col);
    if (field_started || !row.empty()) end_row();
    return rows;
}

std::vector<LabeledSentence> parse_labeled_csv(std::string_view text) {
    auto rows = parse_csv(text);
    if (rows.empty()) throw ValidationError("labeled dataset is empty (missing header)");
    if (rows[0] != std::vector<std::string>{"text", "label"})
        throw ValidationError("labeled dataset header must be \"text,label\"");
    std::vector<LabeledSentence> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != 2)
            throw ValidationError("labeled dataset row " + std::to_string(i) + " must have 2 fields");
        if (!is_concept_label(rows[i][1]))
            throw ValidationError("labeled dataset row " + std::to_string(i) + " has unknown label '" + rows[i][1] + "'");
        out.push_back({std::move(rows[i][0]), std::move(rows[i][1])});
    }
    return out;
}

std::vector<LabeledSentence> load_labeled_dataset(const std::filesystem::path& path) {
    return parse_labeled_csv(util::read_file(path));
}

std::string to_labeled_csv(const std::vector<LabeledSentence>& rows) {
    auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += '"';
            out += c;
        }
        return out + "\"";
    };
    std::string out = "text,label\n";
    for (const auto& r : rows) out += quote(r.text) + "," + quote(r.label) + "\n";
    return out;
}

}  // namespace kgsec::classifier
