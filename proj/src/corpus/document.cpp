#include "kgsec/corpus/document.hpp"

#include "kgsec/error.hpp"
#include "kgsec/text/tokenize.hpp"
#include "kgsec/util/files.hpp"

#include <json.hpp>

#include <array>
#include <set>

namespace kgsec::corpus {

using nlohmann::ordered_json;

namespace {

constexpr std::array<std::string_view, 4> kSourceNames{"official-doc", "security-advisory", "internet-artifact",
                                                        "whitepaper"};
constexpr std::array<std::string_view, 4> kFormatNames{"html", "markdown", "plaintext", "jsonl"};

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t lineno = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++lineno;
        auto line = text.substr(pos, end - pos);
        if (!text::trim(line).empty()) fn(line, lineno);
        if (end == text.size()) break;
        pos = end + 1;
    }
}

ordered_json parse_line(std::string_view line, std::size_t lineno) {
    try {
        return ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON line: ") + e.what(), lineno, e.byte);
    }
}

std::string string_field(const ordered_json& obj, const char* key, std::size_t lineno, bool required) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        if (required)
            throw ValidationError("line " + std::to_string(lineno) + ": missing field '" + key + "'");
        return {};
    }
    if (!it->is_string())
        throw ValidationError("line " + std::to_string(lineno) + ": field '" + key + "' must be a string");
    return it->get<std::string>();
}

}  // namespace

std::string_view to_string(SourceKind source) { return kSourceNames[static_cast<std::size_t>(source)]; }
std::string_view to_string(DocFormat format) { return kFormatNames[static_cast<std::size_t>(format)]; }

std::optional<SourceKind> parse_source_kind(std::string_view text) {
    for (std::size_t i = 0; i < kSourceNames.size(); ++i)
        if (kSourceNames[i] == text) return static_cast<SourceKind>(i);
    return std::nullopt;
}

std::optional<DocFormat> parse_doc_format(std::string_view text) {
    for (std::size_t i = 0; i < kFormatNames.size(); ++i)
        if (kFormatNames[i] == text) return static_cast<DocFormat>(i);
    return std::nullopt;
}

std::vector<RawDocument> parse_corpus(std::string_view text) {
    std::vector<RawDocument> docs;
    std::set<std::string> ids;
    for_each_line(text, [&](std::string_view line, std::size_t lineno) {
        const auto obj = parse_line(line, lineno);
        if (!obj.is_object()) throw ValidationError("line " + std::to_string(lineno) + ": expected a JSON object");
        RawDocument doc;
        doc.id = string_field(obj, "id", lineno, true);
        const auto source = parse_source_kind(string_field(obj, "source", lineno, true));
        if (!source) throw ValidationError("line " + std::to_string(lineno) + ": unknown source category");
        doc.source = *source;
        const auto format = parse_doc_format(string_field(obj, "format", lineno, true));
        if (!format) throw ValidationError("line " + std::to_string(lineno) + ": unknown document format");
        doc.format = *format;
        doc.uri = string_field(obj, "uri", lineno, false);
        doc.system = string_field(obj, "system", lineno, false);
        doc.component = string_field(obj, "component", lineno, false);
        doc.body = string_field(obj, "body", lineno, true);
        if (doc.id.empty()) throw ValidationError("line " + std::to_string(lineno) + ": empty document id");
        if (text::trim(doc.body).empty())
            throw ValidationError("document '" + doc.id + "' has an empty body");
        if (!ids.insert(doc.id).second) throw ValidationError("duplicate document id '" + doc.id + "'");
        docs.push_back(std::move(doc));
    });
    return docs;
}

std::vector<RawDocument> load_corpus(const std::filesystem::path& path) {
    return parse_corpus(util::read_file(path));
}

std::string document_to_json_line(const RawDocument& doc) {
    ordered_json j;
    j["id"] = doc.id;
    j["source"] = std::string(to_string(doc.source));
    j["format"] = std::string(to_string(doc.format));
    j["uri"] = doc.uri;
    j["system"] = doc.system;
    j["component"] = doc.component;
    j["body"] = doc.body;
    return j.dump();
}

std::string records_to_jsonl(const std::vector<ConfigRecord>& records) {
    std::string out;
    for (const auto& r : records) {
        ordered_json j;
        j["system"] = r.system;
        j["component"] = r.component;
        j["argument"] = r.argument;
        j["options"] = r.options;
        j["type_spec"] = r.type_spec ? ordered_json(*r.type_spec) : ordered_json(nullptr);
        j["default_value"] = r.default_value ? ordered_json(*r.default_value) : ordered_json(nullptr);
        j["description"] = r.description ? ordered_json(*r.description) : ordered_json(nullptr);
        j["source_doc"] = r.source_doc;
        out += j.dump() + "\n";
    }
    return out;
}

std::vector<ConfigRecord> records_from_jsonl(std::string_view text) {
    std::vector<ConfigRecord> records;
    for_each_line(text, [&](std::string_view line, std::size_t lineno) {
        const auto obj = parse_line(line, lineno);
        ConfigRecord r;
        r.system = string_field(obj, "system", lineno, true);
        r.component = string_field(obj, "component", lineno, true);
        r.argument = string_field(obj, "argument", lineno, true);
        if (auto it = obj.find("options"); it != obj.end() && it->is_array())
            for (const auto& o : *it) r.options.push_back(o.get<std::string>());
        auto opt = [&](const char* key) -> std::optional<std::string> {
            auto v = string_field(obj, key, lineno, false);
            return v.empty() ? std::nullopt : std::optional<std::string>(v);
        };
        r.type_spec = opt("type_spec");
        r.default_value = opt("default_value");
        r.description = opt("description");
        r.source_doc = string_field(obj, "source_doc", lineno, false);
        records.push_back(std::move(r));
    });
    return records;
}

}  // namespace kgsec::corpus
