#include "kgsec/compliance/checker.hpp"

#include "kgsec/compliance/manifest_io.hpp"
#include "kgsec/kg/subgraph_match.hpp"

#include <json.hpp>

#include <algorithm>
#include <climits>
#include <map>

namespace kgsec::compliance {

std::string_view to_string(FindingKind kind) {
    return kind == FindingKind::MissingArgument ? "MissingArgument" : "InsecureOption";
}

namespace {

constexpr int kAnyElement = INT_MIN;

int index_label(std::size_t i) { return -static_cast<int>(i) - 1; }

/// The tree as a labelled graph: node ids in pre-order, map edges labelled by
/// interned key, list edges by -(index + 1).
class TreeGraph {
public:
    explicit TreeGraph(const CptNode& root) { add(root); }

    std::optional<int> key_label(const std::string& key) const {
        auto it = key_ids_.find(key);
        if (it == key_ids_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t size() const { return parent_.size(); }
    const Path& path(std::size_t id) const { return paths_[id]; }

    bool has_edge(std::size_t from, int label, std::size_t to) const {
        if (to >= size() || parent_[to] != static_cast<long>(from)) return false;
        if (label == kAnyElement) return edge_label_[to] < 0;
        return edge_label_[to] == label;
    }

    std::vector<std::size_t> neighbours(std::size_t id, int label, bool forward) const {
        std::vector<std::size_t> out;
        if (forward) {
            for (std::size_t c : children_[id])
                if (label == kAnyElement ? edge_label_[c] < 0 : edge_label_[c] == label) out.push_back(c);
        } else if (parent_[id] >= 0 && has_edge(static_cast<std::size_t>(parent_[id]), label, id)) {
            out.push_back(static_cast<std::size_t>(parent_[id]));
        }
        return out;
    }

private:
    std::size_t add(const CptNode& node, long parent = -1, int label = 0, Path path = {}) {
        const std::size_t id = parent_.size();
        parent_.push_back(parent);
        edge_label_.push_back(label);
        children_.emplace_back();
        paths_.push_back(path);
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            Path child_path = path;
            int child_label;
            if (node.is_map()) {
                child_label = key_ids_.try_emplace(node.keys[i], static_cast<int>(key_ids_.size())).first->second;
                child_path.push_back(PathSegment::of_key(node.keys[i]));
            } else {
                child_label = index_label(i);
                child_path.push_back(PathSegment::of_index(i));
            }
            const std::size_t c = add(node.children[i], static_cast<long>(id), child_label, std::move(child_path));
            children_[id].push_back(c);
        }
        return id;
    }

    std::vector<long> parent_;
    std::vector<int> edge_label_;
    std::vector<std::vector<std::size_t>> children_;
    std::vector<Path> paths_;
    std::map<std::string, int> key_ids_;
};

/// Bindings of a path pattern: one tree node per prefix, root first.
std::vector<std::vector<std::size_t>> match_chain(const TreeGraph& g, const Path& pattern) {
    kg::MatchSpace<std::size_t> space;
    std::vector<std::size_t> all(g.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    space.candidates.push_back({0});
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        const auto& seg = pattern[i];
        int label = kAnyElement;
        if (seg.type == PathSegment::Type::Key) {
            auto k = g.key_label(seg.key);
            if (!k) return {};
            label = *k;
        } else if (seg.type == PathSegment::Type::Index) {
            label = index_label(seg.index);
        }
        space.candidates.push_back(all);
        space.edges.push_back({i, i + 1, label});
    }
    space.has_edge = [&g](std::size_t a, int l, std::size_t b) { return g.has_edge(a, l, b); };
    space.neighbours = [&g](std::size_t id, int l, bool fwd) { return g.neighbours(id, l, fwd); };
    return kg::enumerate_matches(space);
}

}  // namespace

std::vector<Path> match_paths(const CptNode& root, const Path& pattern) {
    const TreeGraph g(root);
    std::vector<Path> out;
    for (const auto& m : match_chain(g, pattern)) out.push_back(g.path(m.back()));
    return out;
}

std::vector<Finding> check(const ComplianceParseTree& tree, const std::vector<PolicyRule>& policy) {
    const TreeGraph g(tree.root);
    std::vector<Finding> findings;

    for (std::size_t r = 0; r < policy.size(); ++r) {
        const PolicyRule& rule = policy[r];
        if (rule.applies_to != tree.kind) continue;

        auto make = [&](Path path, FindingKind kind, std::optional<std::string> observed) {
            Finding f;
            f.document = tree.document;
            f.path = format_path(path);
            f.kind = kind;
            f.observed = std::move(observed);
            f.expected = rule.expected;
            f.rationale = rule.rationale;
            f.fix = rule.remediation;
            f.rule = r;
            f.argument = rule.argument;
            findings.push_back(std::move(f));
        };

        const auto matches = match_chain(g, rule.path);
        if (rule.kind == RuleKind::RequiredArgument) {
            // Anchor: the prefix up to the last wildcard. Each anchor node
            // needs at least one full match passing through it.
            std::size_t anchor_len = 0;
            for (std::size_t i = 0; i < rule.path.size(); ++i)
                if (rule.path[i].type == PathSegment::Type::AnyIndex) anchor_len = i + 1;
            const Path anchor(rule.path.begin(), rule.path.begin() + static_cast<long>(anchor_len));
            std::vector<bool> satisfied(g.size(), false);
            for (const auto& m : matches) satisfied[m[anchor_len]] = true;
            for (const auto& a : match_chain(g, anchor)) {
                if (satisfied[a.back()]) continue;
                Path missing = g.path(a.back());
                missing.insert(missing.end(), rule.path.begin() + static_cast<long>(anchor_len), rule.path.end());
                make(std::move(missing), FindingKind::MissingArgument, std::nullopt);
            }
            continue;
        }
        for (const auto& m : matches) {
            const CptNode* node = lookup(tree.root, g.path(m.back()));
            const std::string observed = option_label(*node);
            const bool listed = std::find(rule.expected.begin(), rule.expected.end(), observed) != rule.expected.end();
            const bool violation = rule.kind == RuleKind::SecuredOptionSet ? !listed : listed;
            if (violation) make(g.path(m.back()), FindingKind::InsecureOption, observed);
        }
    }

    std::stable_sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
        return std::tie(a.document, a.path, a.kind, a.rule) < std::tie(b.document, b.path, b.kind, b.rule);
    });
    return findings;
}

namespace {

std::string render_expected(const Finding& f) {
    if (f.expected.empty()) {
        if (f.fix.is_leaf()) return yaml_scalar(f.fix.value);
        if (f.fix.children.empty()) return f.fix.is_map() ? "{}" : "[]";
        return "present";
    }
    if (f.expected.size() == 1) return f.expected.front();
    std::string out = "{";
    for (std::size_t i = 0; i < f.expected.size(); ++i) out += (i ? "," : "") + f.expected[i];
    return out + "}";
}

}  // namespace

std::string findings_to_json(const std::vector<Finding>& findings) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& f : findings) {
        nlohmann::ordered_json j;
        j["document"] = f.document;
        j["path"] = f.path;
        j["kind"] = std::string(to_string(f.kind));
        j["argument"] = f.argument;
        j["observed"] = f.observed ? nlohmann::ordered_json(*f.observed) : nlohmann::ordered_json(nullptr);
        j["expected"] = f.expected;
        j["fix"] = nlohmann::ordered_json::parse(emit_json(f.fix));
        j["rationale"] = f.rationale;
        j["rule"] = f.rule;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::string findings_to_text(const std::vector<Finding>& findings, bool show_document) {
    std::string out;
    for (const auto& f : findings) {
        if (show_document) out += "[" + std::to_string(f.document) + "] ";
        out += f.path + " " + std::string(to_string(f.kind)) + " " + f.observed.value_or("(absent)") + "→" +
               render_expected(f);
        if (!f.rationale.empty()) out += " — " + f.rationale;
        out += "\n";
    }
    return out;
}

}  // namespace kgsec::compliance
