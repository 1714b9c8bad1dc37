#pragma once

#include "kgsec/corpus/document.hpp"
#include "kgsec/kg/graph.hpp"

#include <vector>

namespace kgsec::corpus {

/// Canonical merge order: (system, component, argument, source_doc), then the remaining fields.
void sort_records(std::vector<ConfigRecord>& records);

/// Builds the initial configuration graph. Records are merged in canonical
/// order so the result does not depend on extraction order. Any record that
/// violates the schema aborts the build with a ValidationError naming its
/// index in the canonical order.
kg::ConfigKnowledgeGraph build_kgconfig(std::vector<ConfigRecord> records);

/// Merges records into an existing graph (upsert semantics).
void merge_records(kg::ConfigKnowledgeGraph& graph, std::vector<ConfigRecord> records);

}  // namespace kgsec::corpus
