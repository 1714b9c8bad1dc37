#pragma once

#include "kgsec/compliance/parse_tree.hpp"
#include "kgsec/compliance/policy.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kgsec::compliance {

enum class FindingKind { MissingArgument, InsecureOption };

std::string_view to_string(FindingKind kind);

struct Finding {
    std::size_t document = 0;
    std::string path;  // concrete path
    FindingKind kind = FindingKind::InsecureOption;
    std::optional<std::string> observed;  // absent for MissingArgument
    std::vector<std::string> expected;
    std::string rationale;
    CptNode fix;
    std::size_t rule = 0;  // index into the policy
    std::string argument;

    bool operator==(const Finding&) const = default;
};

/// Concrete paths of the tree that match a pattern, in document order.
std::vector<Path> match_paths(const CptNode& root, const Path& pattern);

/// Applies every rule for the tree's kind. Each rule path is matched as a
/// chain pattern over the tree, with [*] matching any list element. Findings
/// are sorted by path, then kind, then rule index.
std::vector<Finding> check(const ComplianceParseTree& tree, const std::vector<PolicyRule>& policy);

std::string findings_to_json(const std::vector<Finding>& findings);
/// One line per finding: PATH KIND observed→expected — rationale.
std::string findings_to_text(const std::vector<Finding>& findings, bool show_document = false);

}  // namespace kgsec::compliance
