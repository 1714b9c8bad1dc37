#pragma once

#include "kgsec/compliance/parse_tree.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace kgsec::compliance {

enum class ManifestFormat { Yaml, Json };

/// Throws UsageError for anything other than "yaml" or "json".
ManifestFormat parse_manifest_format(std::string_view name);

/// Every document of a YAML stream (or the single JSON document) as a tree.
/// Empty documents are skipped. Syntax errors raise ParseError with line and
/// column. JSON is recognised by a leading '{' or '['.
std::vector<CptNode> parse_documents(std::string_view text);

/// Manifests of a stream; each must be a map with a textual top-level "kind"
/// (ValidationError otherwise). Trees are numbered by document index.
std::vector<ComplianceParseTree> parse_manifests(std::string_view text);

/// Exactly one manifest; ValidationError for an empty or multi-document stream.
ComplianceParseTree parse_manifest(std::string_view text);

std::vector<ComplianceParseTree> load_manifests(const std::filesystem::path& path);

/// Block YAML with two-space indentation; scalars are quoted only when a plain
/// spelling would read back differently.
std::string emit_yaml(const CptNode& node);
std::string emit_json(const CptNode& node);
std::string emit(const ComplianceParseTree& tree, ManifestFormat format);
/// Documents joined with "---" separators (YAML) or as a JSON array when there is more than one.
std::string emit_all(const std::vector<ComplianceParseTree>& trees, ManifestFormat format);

/// Inline YAML form of a scalar (quoted when needed).
std::string yaml_scalar(const Scalar& value);

}  // namespace kgsec::compliance
