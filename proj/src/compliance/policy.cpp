#include "kgsec/compliance/policy.hpp"

#include "kgsec/compliance/manifest_io.hpp"
#include "kgsec/error.hpp"
#include "kgsec/util/files.hpp"
#include "kgsec/util/log.hpp"

#include <algorithm>
#include <set>

namespace kgsec::compliance {

using kg::EntityId;
using kg::EntityKind;
using kg::Predicate;

std::string_view to_string(RuleKind kind) {
    switch (kind) {
        case RuleKind::RequiredArgument: return "required-argument";
        case RuleKind::SecuredOptionSet: return "secured-option-set";
        case RuleKind::ForbiddenOption: return "forbidden-option";
    }
    return "secured-option-set";
}

namespace {

std::string text_field(const CptNode& row, std::string_view key, std::size_t index) {
    const CptNode* v = row.find(key);
    if (!v || !v->is_leaf() || v->value.type == ScalarType::Null || v->value.text.empty())
        throw ValidationError("binding " + std::to_string(index) + ": missing field '" + std::string(key) + "'");
    if (v->value.type != ScalarType::Text)
        throw ValidationError("binding " + std::to_string(index) + ": field '" + std::string(key) +
                              "' must be a string");
    return v->value.text;
}

}  // namespace

std::vector<PathBinding> parse_bindings(std::string_view text) {
    const auto docs = parse_documents(text);
    std::vector<PathBinding> out;
    if (docs.empty()) return out;
    if (docs.size() != 1 || !docs.front().is_list()) throw ValidationError("binding file must be a single list");
    const auto& rows = docs.front().children;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const CptNode& row = rows[i];
        if (!row.is_map()) throw ValidationError("binding " + std::to_string(i) + " must be a mapping");
        for (const auto& key : row.keys)
            if (key != "kind" && key != "path" && key != "argument" && key != "required" && key != "remediation")
                throw ValidationError("binding " + std::to_string(i) + ": unknown field '" + key + "'");
        PathBinding b;
        b.kind = text_field(row, "kind", i);
        b.path = text_field(row, "path", i);
        b.argument = text_field(row, "argument", i);
        if (parse_path(b.path).empty()) throw ValidationError("binding " + std::to_string(i) + ": empty path");
        if (const CptNode* r = row.find("required")) {
            if (!r->is_leaf() || r->value.type != ScalarType::Boolean)
                throw ValidationError("binding " + std::to_string(i) + ": 'required' must be a boolean");
            b.required = r->value.text == "true";
        }
        if (const CptNode* r = row.find("remediation")) b.remediation = *r;
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<PathBinding> load_bindings(const std::filesystem::path& path) {
    return parse_bindings(util::read_file(path));
}

std::string option_label(const CptNode& node) {
    if (node.is_leaf()) return node.value.text;
    return node.is_map() ? "{}" : "[]";
}

std::vector<PolicyRule> derive_policy(const kg::ConfigKnowledgeGraph& graph, const std::vector<PathBinding>& bindings,
                                      std::string_view kind) {
    std::vector<PolicyRule> rules;
    for (const auto& b : bindings) {
        if (b.kind != kind) continue;

        std::vector<EntityId> args;
        if (graph.find_entity(b.argument, EntityKind::Argument))
            for (EntityId id : graph.entities_of_kind(EntityKind::Argument))
                if (graph.entity(id).label == b.argument) args.push_back(id);
        if (args.empty()) {
            log::warn("binding {} -> '{}' skipped: argument not in the graph", b.path, b.argument);
            continue;
        }

        std::set<std::string> secured;
        std::vector<std::string> goals;
        for (EntityId a : args) {
            for (EntityId o : graph.objects(a, Predicate::hasSecuredOption)) secured.insert(graph.entity(o).label);
            for (EntityId g : graph.objects(a, Predicate::hasGoal)) {
                const auto& label = graph.entity(g).label;
                if (std::find(goals.begin(), goals.end(), label) == goals.end()) goals.push_back(label);
            }
        }
        std::string rationale;
        for (const auto& g : goals) rationale += (rationale.empty() ? "" : " ") + g;

        PolicyRule base;
        base.applies_to = b.kind;
        base.path = parse_path(b.path);
        base.rationale = rationale;
        base.source = args.front();
        base.argument = b.argument;

        const std::vector<std::string> expected(secured.begin(), secured.end());
        std::optional<CptNode> remediation = b.remediation;
        if (!remediation && !expected.empty()) remediation = CptNode::leaf(resolve_plain(expected.front()));

        bool emitted = false;
        if (!expected.empty()) {
            if (!remediation->is_leaf() || !secured.count(option_label(*remediation)))
                throw ValidationError("binding " + b.path + ": remediation '" + option_label(*remediation) +
                                      "' is not a secured option of " + b.argument);
            PolicyRule rule = base;
            rule.kind = RuleKind::SecuredOptionSet;
            rule.expected = expected;
            rule.remediation = *remediation;
            rules.push_back(std::move(rule));
            emitted = true;
        }
        if (b.required) {
            if (!remediation)
                throw ValidationError("binding " + b.path + ": a required argument needs a remediation value");
            PolicyRule rule = base;
            rule.kind = RuleKind::RequiredArgument;
            rule.expected = expected;
            rule.remediation = *remediation;
            rules.push_back(std::move(rule));
            emitted = true;
        }
        if (!emitted) log::warn("binding {} -> '{}' yields no rule: no secured option known", b.path, b.argument);
    }
    return rules;
}

}  // namespace kgsec::compliance
