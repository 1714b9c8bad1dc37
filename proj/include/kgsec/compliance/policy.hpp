#pragma once

#include "kgsec/compliance/parse_tree.hpp"
#include "kgsec/kg/graph.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace kgsec::compliance {

/// One row of the path-binding table: a manifest path pattern bound to a KG
/// Argument label.
struct PathBinding {
    std::string kind;
    std::string path;
    std::string argument;
    bool required = false;
    std::optional<CptNode> remediation;

    bool operator==(const PathBinding&) const = default;
};

/// YAML (or JSON) list of {kind, path, argument, required, remediation}.
/// Throws ValidationError on missing or mistyped fields and bad paths.
std::vector<PathBinding> parse_bindings(std::string_view text);
std::vector<PathBinding> load_bindings(const std::filesystem::path& path);

enum class RuleKind { RequiredArgument, SecuredOptionSet, ForbiddenOption };

std::string_view to_string(RuleKind kind);

struct PolicyRule {
    std::string applies_to;  // manifest kind
    Path path;               // may contain [*]
    RuleKind kind = RuleKind::SecuredOptionSet;
    std::vector<std::string> expected;  // option labels (forbidden labels for ForbiddenOption)
    CptNode remediation;
    std::string rationale;
    kg::EntityId source = 0;  // Argument entity the rule was derived from
    std::string argument;

    bool operator==(const PolicyRule&) const = default;
};

/// Label under which a tree node is compared with KG option labels.
std::string option_label(const CptNode& node);

/// Rules for manifests of `kind`, in binding order: a secured-option-set rule
/// for each bound argument with secured options, then a required-argument rule
/// when the binding is flagged required. Bindings whose argument is not in the
/// graph, or that yield no rule, are skipped with a warning.
std::vector<PolicyRule> derive_policy(const kg::ConfigKnowledgeGraph& graph, const std::vector<PathBinding>& bindings,
                                      std::string_view kind);

}  // namespace kgsec::compliance
