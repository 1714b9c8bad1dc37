#include "kgsec/compliance/remediation.hpp"

#include "kgsec/compliance/manifest_io.hpp"
#include "kgsec/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace kgsec::compliance {

namespace {

void merge_into(CptNode& target, const CptNode& value) {
    if (!(target.is_map() && value.is_map())) {
        target = value;
        return;
    }
    for (std::size_t i = 0; i < value.keys.size(); ++i) {
        if (CptNode* existing = target.find(value.keys[i]))
            merge_into(*existing, value.children[i]);
        else
            target.set(value.keys[i], value.children[i]);
    }
}

/// Number of leading segments of `path` that already exist in the tree.
std::size_t existing_prefix(const CptNode& root, const Path& path) {
    for (std::size_t n = path.size(); n > 0; --n)
        if (lookup(root, Path(path.begin(), path.begin() + static_cast<long>(n)))) return n;
    return 0;
}

void insert_at(CptNode& root, const Path& path, const CptNode& value, const std::string& where) {
    CptNode* node = &root;
    for (std::size_t i = 0; i < path.size(); ++i) {
        const auto& seg = path[i];
        const bool last = i + 1 == path.size();
        if (seg.type != PathSegment::Type::Key) {
            if (!node->is_list() || seg.index >= node->children.size() || seg.type == PathSegment::Type::AnyIndex)
                throw RemediationError("cannot insert at " + where + ": list element does not exist");
            node = &node->children[seg.index];
            if (last) merge_into(*node, value);
            continue;
        }
        if (node->is_leaf() && node->value.type == ScalarType::Null) *node = CptNode::map();
        if (!node->is_map()) throw RemediationError("cannot insert at " + where + ": an ancestor is not a mapping");
        CptNode* child = node->find(seg.key);
        if (last) {
            if (child)
                merge_into(*child, value);
            else
                node->set(seg.key, value);
            return;
        }
        node = child ? child : &node->set(seg.key, CptNode::map());
    }
    if (path.empty()) merge_into(root, value);
}

}  // namespace

Remediation remediate(const ComplianceParseTree& tree, const std::vector<Finding>& findings,
                      const std::vector<PolicyRule>& policy) {
    Remediation out{tree, {}};
    std::set<std::string> seen;
    for (const auto& f : findings) {
        if (f.document != tree.document) continue;
        if (f.rule >= policy.size()) throw RemediationError("finding at " + f.path + " references no policy rule");
        if (!seen.insert(f.path).second) throw RemediationError("conflicting edits for " + f.path);

        const PolicyRule& rule = policy[f.rule];
        Edit e;
        e.path = f.path;
        e.value = rule.remediation;
        const Path path = parse_path(f.path);
        if (f.kind == FindingKind::InsecureOption) {
            e.type = Edit::Type::ReplaceLeaf;
        } else {
            e.type = Edit::Type::InsertSubtree;
            const std::size_t n = existing_prefix(tree.root, path);
            e.parent_path = format_path(Path(path.begin(), path.begin() + static_cast<long>(n)));
            e.argument = format_path(Path(path.begin() + static_cast<long>(n), path.end()));
        }
        out.plan.edits.push_back(std::move(e));
    }
    std::sort(out.plan.edits.begin(), out.plan.edits.end(),
              [](const Edit& a, const Edit& b) { return a.path < b.path; });

    for (const auto& e : out.plan.edits) {
        const Path path = parse_path(e.path);
        if (e.type == Edit::Type::ReplaceLeaf) {
            CptNode* node = lookup(out.tree.root, path);
            if (!node) throw RemediationError("cannot replace " + e.path + ": path does not exist");
            *node = e.value;
        } else {
            insert_at(out.tree.root, path, e.value, e.path);
        }
    }
    return out;
}

std::string plan_to_json(const RemediationPlan& plan) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : plan.edits) {
        nlohmann::ordered_json j;
        if (e.type == Edit::Type::ReplaceLeaf) {
            j["op"] = "replace-leaf";
            j["path"] = e.path;
        } else {
            j["op"] = "insert-subtree";
            j["parent"] = e.parent_path;
            j["argument"] = e.argument;
        }
        j["value"] = nlohmann::ordered_json::parse(emit_json(e.value));
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

}  // namespace kgsec::compliance
