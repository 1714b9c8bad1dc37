#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <set>
#include <vector>

namespace kgsec::kg {

/// Directed, labelled pattern edge between two pattern node indices.
struct IndexedEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    int label = 0;
};

/// Search space for injective pattern matching over an arbitrary target graph.
///
/// Candidates per pattern node must already satisfy the node constraints and be
/// sorted ascending. The neighbour callback returns sorted targets of the given
/// edge label, forward (id as subject) or backward (id as object).
template <typename Id>
struct MatchSpace {
    std::vector<std::vector<Id>> candidates;
    std::vector<IndexedEdge> edges;
    std::function<bool(Id, int, Id)> has_edge;
    std::function<std::vector<Id>(Id, int, bool)> neighbours;
};

/// Enumerates every injective assignment of pattern nodes to target ids that
/// satisfies all edges. Pattern nodes are bound in index order and each level
/// iterates candidates ascending, so the result is lexicographically sorted.
template <typename Id>
std::vector<std::vector<Id>> enumerate_matches(const MatchSpace<Id>& space) {
    const std::size_t n = space.candidates.size();
    std::vector<std::vector<Id>> results;
    if (n == 0) return results;

    // Edges whose both endpoints are bound once node i is bound.
    std::vector<std::vector<IndexedEdge>> closing(n);
    for (const auto& e : space.edges) closing[std::max(e.from, e.to)].push_back(e);

    std::vector<Id> binding(n);
    std::set<Id> used;

    std::function<void(std::size_t)> extend = [&](std::size_t depth) {
        if (depth == n) {
            results.push_back(binding);
            return;
        }

        // Narrow candidates through an already-bound neighbour when possible.
        const std::vector<Id>* pool = &space.candidates[depth];
        std::vector<Id> narrowed;
        if (space.neighbours) {
            for (const auto& e : closing[depth]) {
                if (e.from == e.to) continue;
                const bool forward = e.from != depth;
                const Id anchor = binding[forward ? e.from : e.to];
                auto adj = space.neighbours(anchor, e.label, forward);
                narrowed.clear();
                std::set_intersection(adj.begin(), adj.end(), space.candidates[depth].begin(),
                                      space.candidates[depth].end(), std::back_inserter(narrowed));
                pool = &narrowed;
                break;
            }
        }

        const std::vector<Id> pool_copy = *pool;
        for (const Id cand : pool_copy) {
            if (used.count(cand)) continue;
            binding[depth] = cand;
            bool ok = true;
            for (const auto& e : closing[depth]) {
                if (!space.has_edge(binding[e.from], e.label, binding[e.to])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            used.insert(cand);
            extend(depth + 1);
            used.erase(cand);
        }
    };
    extend(0);
    return results;
}

}  // namespace kgsec::kg
