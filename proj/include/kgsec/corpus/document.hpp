#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kgsec::corpus {

enum class SourceKind { OfficialDoc, SecurityAdvisory, InternetArtifact, Whitepaper };
enum class DocFormat { Html, Markdown, Plaintext, Jsonl };

std::string_view to_string(SourceKind source);
std::string_view to_string(DocFormat format);
std::optional<SourceKind> parse_source_kind(std::string_view text);
std::optional<DocFormat> parse_doc_format(std::string_view text);

struct RawDocument {
    std::string id;
    SourceKind source = SourceKind::OfficialDoc;
    DocFormat format = DocFormat::Plaintext;
    std::string uri;        // provenance only, never fetched
    std::string system;     // optional metadata, empty when absent
    std::string component;  // optional metadata, empty when absent
    std::string body;

    bool operator==(const RawDocument&) const = default;
};

/// One documented configuration argument.
struct ConfigRecord {
    std::string system;
    std::string component;
    std::string argument;
    std::vector<std::string> options;
    std::optional<std::string> type_spec;
    std::optional<std::string> default_value;
    std::optional<std::string> description;
    std::string source_doc;

    bool operator==(const ConfigRecord&) const = default;
};

/// Parses a JSON Lines corpus. Blank lines are ignored. Throws ParseError on
/// malformed lines and ValidationError on missing fields, empty bodies, or
/// duplicate ids.
std::vector<RawDocument> parse_corpus(std::string_view text);
std::vector<RawDocument> load_corpus(const std::filesystem::path& path);

std::string document_to_json_line(const RawDocument& doc);

std::string records_to_jsonl(const std::vector<ConfigRecord>& records);
std::vector<ConfigRecord> records_from_jsonl(std::string_view text);

}  // namespace kgsec::corpus
