#pragma once

#include "kgsec/kg/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kgsec::kg {

struct PatternNode {
    EntityKind kind = EntityKind::Argument;
    std::optional<std::string> label;  // nullopt matches any label
};

struct PatternEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    Predicate predicate = Predicate::hasArgument;
};

struct GraphPattern {
    std::vector<PatternNode> nodes;
    std::vector<PatternEdge> edges;

    /// Throws ValidationError when the pattern is empty, has an out-of-range
    /// edge endpoint, or is not weakly connected.
    void validate() const;
};

/// One entity id per pattern node, in pattern-node order.
using Binding = std::vector<EntityId>;

/// All injective bindings of the pattern into the graph, sorted lexicographically by entity id.
std::vector<Binding> match_subgraph(const ConfigKnowledgeGraph& graph, const GraphPattern& pattern);

}  // namespace kgsec::kg
