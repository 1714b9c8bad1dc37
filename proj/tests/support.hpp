#pragma once

#include "kgsec/compliance/checker.hpp"
#include "kgsec/compliance/parse_tree.hpp"
#include "kgsec/compliance/policy.hpp"
#include "kgsec/kg/graph.hpp"
#include "kgsec/kg/pattern.hpp"
#include "kgsec/util/files.hpp"

#include <cstdint>
#include <algorithm>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <string>

namespace kgsec::testing {

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(KGSEC_FIXTURES_DIR) / name;
}

inline std::string read_fixture(const std::string& name) { return util::read_file(fixture(name)); }

// Scratch directory unique to the calling test; removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("kgsec-" + tag + "-" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

// System -> Component -> Argument -> Option tree with random sizes, plus an
// occasional default value and description. Labels repeat across scopes on purpose.
inline kg::ConfigKnowledgeGraph random_config_graph(std::mt19937_64& rng, int systems = 2) {
    using kg::EntityKind;
    using kg::Predicate;
    kg::ConfigKnowledgeGraph g;
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    for (int s = 0; s < systems; ++s) {
        const auto sys = g.add_entity(EntityKind::System, "sys" + std::to_string(s));
        for (int c = 0, nc = pick(1, 3); c < nc; ++c) {
            const auto comp = g.add_entity(EntityKind::Component, "comp" + std::to_string(c), {}, sys);
            g.add_relation(sys, Predicate::hasComponent, comp);
            for (int a = 0, na = pick(1, 4); a < na; ++a) {
                const auto arg = g.add_entity(EntityKind::Argument, "--arg" + std::to_string(pick(0, 5)), {}, comp);
                g.add_relation(comp, Predicate::hasArgument, arg);
                for (int o = 0, no = pick(0, 3); o < no; ++o) {
                    const auto opt = g.add_entity(EntityKind::Option, "opt" + std::to_string(o), {}, arg);
                    g.add_relation(arg, Predicate::hasOption, opt);
                    if (pick(0, 1)) g.add_relation(arg, Predicate::hasSecuredOption, opt);
                }
                if (pick(0, 1)) {
                    const auto def = g.add_entity(EntityKind::DefaultValue, "opt0", {}, arg);
                    g.add_relation(arg, Predicate::hasDefault, def);
                }
                if (pick(0, 2) == 0) {
                    const auto desc = g.add_entity(EntityKind::Description, "described", {}, arg);
                    g.add_relation(arg, Predicate::hasDescription, desc);
                }
            }
        }
    }
    return g;
}

// Up to max_nodes entities of configuration kinds joined by random
// schema-valid edges, so shared children and several parents both occur.
inline kg::ConfigKnowledgeGraph random_small_graph(std::mt19937_64& rng, std::size_t max_nodes) {
    using kg::EntityKind;
    using kg::Predicate;
    const std::vector<EntityKind> kinds{EntityKind::System, EntityKind::Component, EntityKind::Argument,
                                        EntityKind::Option, EntityKind::DefaultValue};
    const std::vector<Predicate> preds{Predicate::hasComponent, Predicate::hasArgument, Predicate::hasOption,
                                       Predicate::hasDefault, Predicate::hasSecuredOption};
    kg::ConfigKnowledgeGraph g;
    const std::size_t n = 1 + rng() % max_nodes;
    for (std::size_t i = 0; i < n; ++i)
        g.add_entity(kinds[rng() % kinds.size()], "n" + std::to_string(rng() % 3), {}, i + 1);
    for (const auto& [s, se] : g.entities())
        for (const auto& [o, oe] : g.entities())
            for (Predicate p : preds) {
                const auto sig = kg::signature(p);
                if (sig.domain == se.kind && sig.range == oe.kind && rng() % 2) g.add_relation(s, p, o);
            }
    return g;
}

// Exhaustive injective assignment search, independent of the matcher.
inline std::vector<kg::Binding> brute_force_matches(const kg::ConfigKnowledgeGraph& g, const kg::GraphPattern& p) {
    std::vector<std::vector<kg::EntityId>> pools;
    for (const auto& node : p.nodes) {
        std::vector<kg::EntityId> pool;
        for (const auto& [id, e] : g.entities())
            if (e.kind == node.kind && (!node.label || e.label == *node.label)) pool.push_back(id);
        pools.push_back(pool);
    }
    std::vector<kg::Binding> out;
    kg::Binding cur(p.nodes.size());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == p.nodes.size()) {
            std::set<kg::EntityId> distinct(cur.begin(), cur.end());
            if (distinct.size() != cur.size()) return;
            for (const auto& e : p.edges)
                if (!g.has_triple(cur[e.from], e.predicate, cur[e.to])) return;
            out.push_back(cur);
            return;
        }
        for (kg::EntityId id : pools[i]) {
            cur[i] = id;
            rec(i + 1);
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

// Connected pattern of at most max_nodes nodes grown along schema-valid
// predicates from a random start node; some labels are pinned to real ones.
inline kg::GraphPattern random_pattern(std::mt19937_64& rng, const kg::ConfigKnowledgeGraph& g,
                                       std::size_t max_nodes) {
    using kg::EntityKind;
    using kg::Predicate;
    const std::vector<Predicate> preds{Predicate::hasComponent, Predicate::hasArgument, Predicate::hasOption,
                                       Predicate::hasDefault, Predicate::hasDescription,
                                       Predicate::hasSecuredOption};
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    const std::vector<EntityKind> kinds{EntityKind::System, EntityKind::Component, EntityKind::Argument,
                                        EntityKind::Option};
    kg::GraphPattern p;
    p.nodes.push_back({kinds[pick(kinds.size())], std::nullopt});
    const std::size_t target = 1 + pick(max_nodes);
    for (int attempt = 0; attempt < 40 && p.nodes.size() < target; ++attempt) {
        const std::size_t at = pick(p.nodes.size());
        const Predicate pr = preds[pick(preds.size())];
        const auto sig = kg::signature(pr);
        if (sig.domain == p.nodes[at].kind) {
            p.nodes.push_back({sig.range, std::nullopt});
            p.edges.push_back({at, p.nodes.size() - 1, pr});
        } else if (sig.range == p.nodes[at].kind) {
            p.nodes.push_back({sig.domain, std::nullopt});
            p.edges.push_back({p.nodes.size() - 1, at, pr});
        }
    }
    for (auto& node : p.nodes) {
        if (pick(3) != 0) continue;
        auto ids = g.entities_of_kind(node.kind);
        if (!ids.empty()) node.label = g.entity(ids[pick(ids.size())]).label;
    }
    return p;
}

// Removes a random map entry or overwrites a random leaf; "kind" stays intact
// so the same policy keeps applying.
inline void mutate_manifest(compliance::CptNode& root, std::mt19937_64& rng) {
    std::vector<compliance::Path> maps_with_keys, leaves;
    compliance::visit(root, [&](const compliance::Path& p, const compliance::CptNode& n) {
        if (n.is_map() && !n.keys.empty()) maps_with_keys.push_back(p);
        if (n.is_leaf() && !(p.size() == 1 && p[0].key == "kind")) leaves.push_back(p);
    });
    using compliance::Scalar;
    const std::vector<Scalar> values{Scalar::boolean(true), Scalar::boolean(false), Scalar::string("Always"),
                                     Scalar::integer(42), Scalar::null(), Scalar::string("IfNotPresent")};
    if (rng() % 2 && !maps_with_keys.empty()) {
        compliance::CptNode* m = compliance::lookup(root, maps_with_keys[rng() % maps_with_keys.size()]);
        const std::size_t i = rng() % m->keys.size();
        if (m == &root && m->keys[i] == "kind") return;
        m->keys.erase(m->keys.begin() + static_cast<std::ptrdiff_t>(i));
        m->children.erase(m->children.begin() + static_cast<std::ptrdiff_t>(i));
    } else if (!leaves.empty()) {
        compliance::lookup(root, leaves[rng() % leaves.size()])->value = values[rng() % values.size()];
    }
}

// Deletes the node under a required rule or rewrites a guarded leaf to a random
// value drawn from the rule's expected labels and a few insecure ones.
inline void mutate_guarded(compliance::CptNode& root, const std::vector<compliance::PolicyRule>& policy,
                           std::mt19937_64& rng) {
    using namespace compliance;
    if (policy.empty()) return;
    const PolicyRule& rule = policy[rng() % policy.size()];
    const auto hits = match_paths(root, rule.path);
    if (hits.empty()) return;
    const Path& hit = hits[rng() % hits.size()];
    if (rule.kind == RuleKind::RequiredArgument) {
        if (hit.empty() || hit.back().type != PathSegment::Type::Key) return;
        CptNode* parent = lookup(root, Path(hit.begin(), hit.end() - 1));
        if (!parent || !parent->is_map()) return;
        for (std::size_t i = 0; i < parent->keys.size(); ++i) {
            if (parent->keys[i] != hit.back().key) continue;
            parent->keys.erase(parent->keys.begin() + static_cast<std::ptrdiff_t>(i));
            parent->children.erase(parent->children.begin() + static_cast<std::ptrdiff_t>(i));
            return;
        }
    } else {
        std::vector<std::string> labels = rule.expected;
        for (const char* bad : {"true", "Always", "Never", "0"}) labels.push_back(bad);
        if (CptNode* leaf = lookup(root, hit)) *leaf = CptNode::leaf(resolve_plain(labels[rng() % labels.size()]));
    }
}

}  // namespace kgsec::testing
