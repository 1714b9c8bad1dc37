#pragma once

#include "kgsec/corpus/document.hpp"

#include <memory>
#include <string>
#include <vector>

namespace kgsec::corpus {

struct ExtractionWarning {
    std::string doc_id;
    std::string argument;
    std::string field;
    std::string message;
};

struct Extraction {
    std::vector<ConfigRecord> records;
    std::vector<ExtractionWarning> warnings;
};

/// Format-specific extraction of configuration records from one document.
class FormatAdapter {
public:
    virtual ~FormatAdapter() = default;
    virtual DocFormat format() const = 0;
    virtual Extraction extract(const RawDocument& doc) const = 0;
};

/// Definition lists (<dt>argument [type]</dt><dd>...</dd>) and two-column
/// tables (argument | description). "Default:", "Type:" and "Options:" lines
/// inside the definition or description cell populate the matching fields.
class HtmlAdapter final : public FormatAdapter {
public:
    DocFormat format() const override { return DocFormat::Html; }
    Extraction extract(const RawDocument& doc) const override;
};

/// Pre-normalized corpus: one JSON object per body line with
/// {argument, options, type, default, description}.
class JsonlAdapter final : public FormatAdapter {
public:
    DocFormat format() const override { return DocFormat::Jsonl; }
    Extraction extract(const RawDocument& doc) const override;
};

/// Registered adapter for a format, or nullptr when the format has none.
const FormatAdapter* adapter_for(DocFormat format);

/// Runs the adapter after checking it matches the document format (UsageError
/// otherwise). Markup failures surface as ExtractionError naming the document;
/// so does a document that yields records without system/component metadata.
Extraction extract_config_records(const RawDocument& doc, const FormatAdapter& adapter);

/// True when the trimmed value is one of the empty-field markers: blank, "[]", "\"\"", "''", "\\".
bool is_empty_marker(std::string_view value);

}  // namespace kgsec::corpus
