#include "kgsec/corpus/adapters.hpp"

#include "kgsec/corpus/html_text.hpp"
#include "kgsec/error.hpp"
#include "kgsec/text/tokenize.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>

namespace kgsec::corpus {

namespace {

// Accumulates fields for one argument and applies empty-marker normalization.
class RecordBuilder {
public:
    RecordBuilder(const RawDocument& doc, std::string argument, std::vector<ExtractionWarning>& warnings)
        : doc_(doc), warnings_(warnings) {
        record_.system = doc.system;
        record_.component = doc.component;
        record_.argument = std::move(argument);
        record_.source_doc = doc.id;
    }

    void set_field(std::optional<std::string>& slot, const std::string& field, std::string_view raw) {
        const auto value = text::trim(raw);
        if (is_empty_marker(value)) {
            warn(field, "empty " + field + " marker '" + std::string(value) + "' normalized to absent");
            slot.reset();
            return;
        }
        slot = std::string(value);
    }

    void type_spec(std::string_view raw) { set_field(record_.type_spec, "type", raw); }
    void default_value(std::string_view raw) { set_field(record_.default_value, "default", raw); }
    void description(std::string_view raw) { set_field(record_.description, "description", raw); }

    void options(std::string_view raw) {
        if (is_empty_marker(raw)) {
            warn("options", "empty options marker '" + std::string(text::trim(raw)) + "' normalized to absent");
            return;
        }
        std::size_t pos = 0;
        while (pos <= raw.size()) {
            std::size_t end = raw.find_first_of(",|", pos);
            if (end == std::string_view::npos) end = raw.size();
            add_option(raw.substr(pos, end - pos));
            pos = end + 1;
        }
    }

    void add_option(std::string_view raw) {
        const auto value = text::trim(raw);
        if (is_empty_marker(value)) {
            warn("options", "empty option marker '" + std::string(value) + "' dropped");
            return;
        }
        if (std::find(record_.options.begin(), record_.options.end(), value) == record_.options.end())
            record_.options.emplace_back(value);
    }

    bool has_type() const { return record_.type_spec.has_value(); }
    ConfigRecord take() { return std::move(record_); }

private:
    void warn(const std::string& field, std::string message) {
        warnings_.push_back({doc_.id, record_.argument, field, std::move(message)});
    }

    const RawDocument& doc_;
    std::vector<ExtractionWarning>& warnings_;
    ConfigRecord record_;
};

std::optional<std::string_view> strip_label(std::string_view line, std::string_view label) {
    if (line.size() < label.size()) return std::nullopt;
    for (std::size_t i = 0; i < label.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(line[i])) != label[i]) return std::nullopt;
    return line.substr(label.size());
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        out.push_back(text.substr(pos, end - pos));
        pos = end + 1;
    }
    return out;
}

std::string collapse_spaces(std::string_view text) {
    std::string out;
    for (const auto& w : text::split_whitespace(text)) {
        if (!out.empty()) out += ' ';
        out += w;
    }
    return out;
}

// Parses one (term, definition) pair into a record.
ConfigRecord build_entry(const RawDocument& doc, std::string_view term, std::string_view definition,
                         std::vector<ExtractionWarning>& warnings) {
    auto term_lines = split_lines(term);
    std::string head = collapse_spaces(term_lines.empty() ? std::string_view{} : term_lines.front());
    std::optional<std::string> term_default;
    if (auto pos = head.find("Default:"); pos != std::string::npos) {
        term_default = head.substr(pos + 8);
        head = collapse_spaces(head.substr(0, pos));
    }
    auto words = text::split_whitespace(head);
    if (words.empty()) throw ExtractionError("document '" + doc.id + "': definition term without an argument name");

    RecordBuilder builder(doc, words[0], warnings);
    std::optional<std::string> term_type = words.size() > 1 ? std::optional<std::string>(words[1]) : std::nullopt;
    if (term_default) builder.default_value(*term_default);

    std::vector<std::string_view> extra_lines(term_lines.begin() + (term_lines.empty() ? 0 : 1), term_lines.end());
    auto def_lines = split_lines(definition);
    extra_lines.insert(extra_lines.end(), def_lines.begin(), def_lines.end());

    std::string description;
    bool description_marker = false;
    std::string marker_text;
    bool type_seen = false;
    for (auto raw_line : extra_lines) {
        const auto line = text::trim(raw_line);
        if (line.empty()) continue;
        if (auto v = strip_label(line, "default:")) {
            builder.default_value(*v);
        } else if (auto v = strip_label(line, "type:")) {
            type_seen = true;
            builder.type_spec(*v);
        } else if (auto v = strip_label(line, "options:")) {
            builder.options(*v);
        } else if (auto v = strip_label(line, "allowed values:")) {
            builder.options(*v);
        } else if (auto v = strip_label(line, "one of:")) {
            builder.options(*v);
        } else if (is_empty_marker(line)) {
            description_marker = true;
            marker_text = std::string(line);
        } else {
            if (!description.empty()) description += ' ';
            description += collapse_spaces(line);
        }
    }
    if (!type_seen && term_type) builder.type_spec(*term_type);
    if (!description.empty()) builder.description(description);
    else if (description_marker) builder.description(marker_text);
    return builder.take();
}

bool is_text_break(const HtmlToken& tok) { return tok.name == "br" || (is_block_tag(tok.name) && tok.name != "dd" && tok.name != "dt" && tok.name != "td" && tok.name != "th"); }

}  // namespace

bool is_empty_marker(std::string_view value) {
    const auto v = text::trim(value);
    return v.empty() || v == "[]" || v == "\"\"" || v == "''" || v == "\\";
}

Extraction HtmlAdapter::extract(const RawDocument& doc) const {
    std::vector<HtmlToken> tokens;
    try {
        tokens = tokenize_html(doc.body);
    } catch (const ParseError& e) {
        throw ExtractionError("document '" + doc.id + "': " + e.what());
    }

    Extraction result;
    enum class Slot { None, Term, Definition, Cell };
    Slot slot = Slot::None;
    int dl_depth = 0;
    std::optional<std::string> term;
    std::string buffer;

    struct Row {
        std::vector<std::string> cells;
        bool header = false;
    };
    std::optional<Row> row;

    auto finish_definition = [&] {
        if (!term) throw ExtractionError("document '" + doc.id + "': <dd> without a preceding <dt>");
        result.records.push_back(build_entry(doc, *term, buffer, result.warnings));
        term.reset();
        buffer.clear();
        slot = Slot::None;
    };

    for (const auto& tok : tokens) {
        if (tok.kind == HtmlToken::Kind::Text) {
            if (slot != Slot::None) buffer += tok.text;
            continue;
        }
        const bool open = tok.kind == HtmlToken::Kind::Open;
        const auto& name = tok.name;

        if (name == "dl") {
            if (open) {
                ++dl_depth;
            } else {
                if (slot == Slot::Definition) finish_definition();
                if (term) throw ExtractionError("document '" + doc.id + "': <dt> '" + *term + "' without a <dd>");
                --dl_depth;
            }
        } else if (name == "dt" && dl_depth > 0) {
            if (open) {
                if (slot == Slot::Definition) finish_definition();
                if (term) throw ExtractionError("document '" + doc.id + "': <dt> '" + *term + "' without a <dd>");
                slot = Slot::Term;
                buffer.clear();
            } else if (slot == Slot::Term) {
                term = buffer;
                buffer.clear();
                slot = Slot::None;
            }
        } else if (name == "dd" && dl_depth > 0) {
            if (open) {
                if (slot == Slot::Term) {
                    term = buffer;
                    buffer.clear();
                }
                slot = Slot::Definition;
                buffer.clear();
            } else if (slot == Slot::Definition) {
                finish_definition();
            }
        } else if (name == "tr") {
            if (open) {
                row = Row{};
            } else if (row) {
                if (slot == Slot::Cell) row->cells.push_back(buffer);
                slot = Slot::None;
                buffer.clear();
                if (!row->header && row->cells.size() == 2 && !text::trim(row->cells[0]).empty())
                    result.records.push_back(build_entry(doc, row->cells[0], row->cells[1], result.warnings));
                row.reset();
            }
        } else if ((name == "td" || name == "th") && row) {
            if (open) {
                if (slot == Slot::Cell) row->cells.push_back(buffer);
                if (name == "th") row->header = true;
                slot = Slot::Cell;
                buffer.clear();
            } else if (slot == Slot::Cell) {
                row->cells.push_back(buffer);
                buffer.clear();
                slot = Slot::None;
            }
        } else if (slot != Slot::None && is_text_break(tok)) {
            buffer += '\n';
        }
    }
    if (dl_depth != 0 || term) throw ExtractionError("document '" + doc.id + "': unterminated definition list");
    return result;
}

Extraction JsonlAdapter::extract(const RawDocument& doc) const {
    Extraction result;
    std::size_t lineno = 0;
    for (auto line : split_lines(doc.body)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ExtractionError("document '" + doc.id + "' line " + std::to_string(lineno) + ": " + e.what());
        }
        if (!obj.is_object() || !obj.contains("argument") || !obj["argument"].is_string())
            throw ExtractionError("document '" + doc.id + "' line " + std::to_string(lineno) +
                                  ": expected an object with a string 'argument'");
        const auto argument = obj["argument"].get<std::string>();
        if (text::trim(argument).empty())
            throw ExtractionError("document '" + doc.id + "' line " + std::to_string(lineno) + ": empty argument");

        RecordBuilder builder(doc, argument, result.warnings);
        auto field = [&](std::initializer_list<const char*> keys) -> std::optional<std::string> {
            for (const char* k : keys) {
                auto it = obj.find(k);
                if (it != obj.end() && it->is_string()) return it->get<std::string>();
            }
            return std::nullopt;
        };
        if (auto v = field({"type", "type_spec"})) builder.type_spec(*v);
        if (auto v = field({"default", "default_value"})) builder.default_value(*v);
        if (auto v = field({"description"})) builder.description(*v);
        if (auto it = obj.find("options"); it != obj.end()) {
            if (it->is_array()) {
                for (const auto& o : *it)
                    if (o.is_string()) builder.add_option(o.get<std::string>());
            } else if (it->is_string()) {
                builder.options(it->get<std::string>());
            }
        }
        result.records.push_back(builder.take());
    }
    return result;
}

const FormatAdapter* adapter_for(DocFormat format) {
    static const HtmlAdapter html;
    static const JsonlAdapter jsonl;
    switch (format) {
        case DocFormat::Html: return &html;
        case DocFormat::Jsonl: return &jsonl;
        default: return nullptr;
    }
}

Extraction extract_config_records(const RawDocument& doc, const FormatAdapter& adapter) {
    if (adapter.format() != doc.format)
        throw UsageError("adapter for " + std::string(to_string(adapter.format())) + " cannot read document '" +
                         doc.id + "' of format " + std::string(to_string(doc.format)));
    auto result = adapter.extract(doc);
    if (!result.records.empty() && (doc.system.empty() || doc.component.empty()))
        throw ExtractionError("document '" + doc.id +
                              "' documents configuration arguments but lacks system/component metadata");
    return result;
}

}  // namespace kgsec::corpus
