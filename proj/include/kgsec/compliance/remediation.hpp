#pragma once

#include "kgsec/compliance/checker.hpp"
#include "kgsec/compliance/parse_tree.hpp"
#include "kgsec/compliance/policy.hpp"

#include <string>
#include <vector>

namespace kgsec::compliance {

struct Edit {
    enum class Type { ReplaceLeaf, InsertSubtree };
    Type type = Type::ReplaceLeaf;
    std::string path;         // full path of the replaced or inserted node
    std::string parent_path;  // InsertSubtree: deepest ancestor that already existed
    std::string argument;     // InsertSubtree: path below parent_path that was created
    CptNode value;

    bool operator==(const Edit&) const = default;
};

struct RemediationPlan {
    std::vector<Edit> edits;  // sorted by path
};

struct Remediation {
    ComplianceParseTree tree;
    RemediationPlan plan;
};

/// Replaces insecure leaves with the rule's remediation value and inserts
/// missing arguments, creating intermediate maps as needed. An inserted map
/// merges into a map that appears at the same path through another edit.
/// Throws RemediationError when two findings target the same path, a finding
/// references no rule, or an insertion would have to pass through a scalar or
/// a missing list element.
Remediation remediate(const ComplianceParseTree& tree, const std::vector<Finding>& findings,
                      const std::vector<PolicyRule>& policy);

std::string plan_to_json(const RemediationPlan& plan);

}  // namespace kgsec::compliance
