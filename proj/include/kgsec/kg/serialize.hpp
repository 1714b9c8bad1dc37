#pragma once

#include "kgsec/kg/graph.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace kgsec::kg {

/// JSON triples document: entities sorted by id, relations sorted by (s, p, o).
std::string serialize(const ConfigKnowledgeGraph& graph);

/// Parses a JSON triples document. Nothing is returned on failure: syntax
/// errors raise ParseError with line/column, structural errors ValidationError,
/// and schema violations the kg_core error of the offending relation.
ConfigKnowledgeGraph deserialize(std::string_view text);

ConfigKnowledgeGraph load_graph(const std::filesystem::path& path);
void save_graph(const ConfigKnowledgeGraph& graph, const std::filesystem::path& path);

/// One CREATE statement per entity followed by one MATCH ... CREATE per relation.
std::string export_cypher(const ConfigKnowledgeGraph& graph);

/// Single-quoted Cypher string literal.
std::string cypher_quote(std::string_view text);

}  // namespace kgsec::kg
