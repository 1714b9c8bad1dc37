#include "kgsec/kg/pattern.hpp"

#include "kgsec/error.hpp"
#include "kgsec/kg/subgraph_match.hpp"

#include <numeric>

namespace kgsec::kg {

void GraphPattern::validate() const {
    if (nodes.empty()) throw ValidationError("graph pattern must contain at least one node");
    for (const auto& e : edges)
        if (e.from >= nodes.size() || e.to >= nodes.size())
            throw ValidationError("graph pattern edge references a missing node");

    // Union-find over pattern nodes for weak connectivity.
    std::vector<std::size_t> parent(nodes.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : edges) parent[root(e.from)] = root(e.to);
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (root(i) != root(0)) throw ValidationError("graph pattern must be connected");
}

std::vector<Binding> match_subgraph(const ConfigKnowledgeGraph& graph, const GraphPattern& pattern) {
    pattern.validate();

    MatchSpace<EntityId> space;
    for (const auto& node : pattern.nodes) {
        std::vector<EntityId> cands;
        if (node.label) {
            for (const auto& [id, e] : graph.entities())
                if (e.kind == node.kind && e.label == *node.label) cands.push_back(id);
        } else {
            cands = graph.entities_of_kind(node.kind);
        }
        space.candidates.push_back(std::move(cands));
    }
    for (const auto& e : pattern.edges)
        space.edges.push_back({e.from, e.to, static_cast<int>(e.predicate)});

    space.has_edge = [&graph](EntityId s, int p, EntityId o) {
        return graph.has_triple(s, static_cast<Predicate>(p), o);
    };
    space.neighbours = [&graph](EntityId id, int p, bool forward) {
        return forward ? graph.objects(id, static_cast<Predicate>(p)) : graph.subjects(id, static_cast<Predicate>(p));
    };
    return enumerate_matches(space);
}

}  // namespace kgsec::kg
