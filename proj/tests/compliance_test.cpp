#include "kgsec/compliance/checker.hpp"
#include "kgsec/compliance/manifest_io.hpp"
#include "kgsec/compliance/parse_tree.hpp"
#include "kgsec/compliance/policy.hpp"
#include "kgsec/compliance/remediation.hpp"
#include "kgsec/error.hpp"
#include "kgsec/kg/serialize.hpp"
#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <random>

using namespace kgsec;
using namespace kgsec::compliance;

namespace {

const kg::ConfigKnowledgeGraph& secgraph() {
    static const auto g = kg::load_graph(testing::fixture("kgsecconfig.json"));
    return g;
}

const std::vector<PathBinding>& bindings() {
    static const auto b = load_bindings(testing::fixture("bindings.yaml"));
    return b;
}

std::vector<std::filesystem::path> manifest_files() {
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(testing::fixture("manifests"))) out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Finding> check_tree(const ComplianceParseTree& tree) {
    return check(tree, derive_policy(secgraph(), bindings(), tree.kind));
}

}  // namespace

TEST_CASE("plain scalar resolution follows the core schema") {
    struct Case {
        const char* text;
        ScalarType type;
        const char* canonical;
    };
    const std::vector<Case> cases{
        {"", ScalarType::Null, "null"},          {"~", ScalarType::Null, "null"},
        {"null", ScalarType::Null, "null"},      {"NULL", ScalarType::Null, "null"},
        {"true", ScalarType::Boolean, "true"},   {"False", ScalarType::Boolean, "false"},
        {"42", ScalarType::Integer, "42"},       {"-17", ScalarType::Integer, "-17"},
        {"+3", ScalarType::Integer, "3"},        {"0o17", ScalarType::Integer, "15"},
        {"0x1F", ScalarType::Integer, "31"},     {"3.25", ScalarType::Float, "3.25"},
        {"1.5e3", ScalarType::Float, "1500.0"},  {".5", ScalarType::Float, "0.5"},
        {".inf", ScalarType::Float, ".inf"},      {"yes", ScalarType::Text, "yes"},
        {"0.5.1", ScalarType::Text, "0.5.1"},    {"256Mi", ScalarType::Text, "256Mi"},
        {"--flag", ScalarType::Text, "--flag"},
    };
    for (const auto& c : cases) {
        CAPTURE(c.text);
        const auto s = resolve_plain(c.text);
        CHECK(s.type == c.type);
        CHECK(s.text == c.canonical);
    }
    CHECK(yaml_scalar(Scalar::string("true")) == "\"true\"");
    CHECK(yaml_scalar(Scalar::string("yes")) == "\"yes\"");
    CHECK(yaml_scalar(Scalar::string("a: b")) == "\"a: b\"");
    CHECK(yaml_scalar(Scalar::string("plain")) == "plain");
    CHECK(yaml_scalar(Scalar::string("")) == "\"\"");
    CHECK(yaml_scalar(Scalar::integer(7)) == "7");
}

TEST_CASE("paths parse and format") {
    const auto p = parse_path("spec.containers[*].env[2][\"a.b/c\"].x_y");
    REQUIRE(p.size() == 7);
    CHECK(p[1] == PathSegment::of_key("containers"));
    CHECK(p[2] == PathSegment::any());
    CHECK(p[4] == PathSegment::of_index(2));
    CHECK(p[5] == PathSegment::of_key("a.b/c"));
    CHECK(p[6] == PathSegment::of_key("x_y"));
    CHECK(format_path(p) == "spec.containers[*].env[2][\"a.b/c\"].x_y");
    CHECK(format_path(parse_path(format_path(p))) == format_path(p));
    CHECK(has_wildcard(p));
    CHECK_FALSE(has_wildcard(parse_path("a.b[0]")));
    CHECK(parse_path("").empty());
    for (const char* bad : {"a..b", "a[", "a[x]", ".a", "a.", "a[\"unterminated]"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_path(bad), ValidationError);
    }
}

TEST_CASE("every fixture manifest round-trips through both emitters") {
    const auto files = manifest_files();
    REQUIRE(files.size() >= 20);
    std::size_t documents = 0;
    std::set<ScalarType> types;
    for (const auto& file : files) {
        CAPTURE(file.filename().string());
        const auto docs = parse_documents(util::read_file(file));
        REQUIRE_FALSE(docs.empty());
        for (const auto& d : docs) {
            ++documents;
            visit(d, [&](const Path&, const CptNode& n) {
                if (n.is_leaf()) types.insert(n.value.type);
            });
            const auto yaml = emit_yaml(d);
            CHECK(parse_documents(yaml) == std::vector<CptNode>{d});
            CHECK(emit_yaml(parse_documents(yaml).front()) == yaml);
            CHECK(parse_documents(emit_json(d)) == std::vector<CptNode>{d});
        }
        const auto trees = load_manifests(file);
        for (auto format : {ManifestFormat::Yaml, ManifestFormat::Json})
            CHECK(parse_manifests(emit_all(trees, format)) == trees);
    }
    CHECK(documents > files.size());
    CHECK(types.size() == 5);
}

TEST_CASE("manifest parsing errors") {
    try {
        parse_documents("a: 1\nb: [1, 2\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() >= 2);
    }
    CHECK_THROWS_AS(parse_documents("{\"a\": }"), ParseError);
    CHECK_THROWS_AS(parse_manifest("a: 1\n"), ValidationError);
    CHECK_THROWS_AS(parse_manifest("- kind: Pod\n"), ValidationError);
    CHECK_THROWS_AS(parse_manifest("kind: 3\n"), ValidationError);
    CHECK_THROWS_AS(parse_manifest("kind: Pod\n---\nkind: Pod\n"), ValidationError);
    CHECK_THROWS_AS(parse_manifest(""), ValidationError);
    CHECK_THROWS_AS(parse_manifest_format("toml"), UsageError);
    const auto trees = parse_manifests("---\nkind: A\n---\n---\nkind: B\n");
    REQUIRE(trees.size() == 2);
    CHECK(trees[1].kind == "B");
    CHECK(parse_documents("x: !!str 12\ny: '12'\nz: 12\n").front().find("x")->value == Scalar::string("12"));
}

TEST_CASE("bindings are validated") {
    CHECK(bindings().size() == 36);
    CHECK(bindings()[0].remediation == CptNode::map());
    CHECK_THROWS_AS(parse_bindings("- kind: Pod\n  path: spec\n"), ValidationError);
    CHECK_THROWS_AS(parse_bindings("- kind: Pod\n  path: 'a..b'\n  argument: x\n"), ValidationError);
    CHECK_THROWS_AS(parse_bindings("- kind: Pod\n  path: a\n  argument: x\n  colour: red\n"), ValidationError);
    CHECK_THROWS_AS(parse_bindings("- kind: Pod\n  path: a\n  argument: x\n  required: maybe\n"), ValidationError);
    CHECK_THROWS_AS(parse_bindings("kind: Pod\n"), ValidationError);
    CHECK_THROWS_AS(parse_bindings("- kind: Pod\n  path: ''\n  argument: x\n"), ValidationError);
}

TEST_CASE("policy derivation") {
    const auto policy = derive_policy(secgraph(), bindings(), "Deployment");
    auto find = [&](const std::string& arg, RuleKind kind) -> const PolicyRule* {
        for (const auto& r : policy)
            if (r.argument == arg && r.kind == kind) return &r;
        return nullptr;
    };
    const auto* pull = find("imagePullPolicy", RuleKind::SecuredOptionSet);
    REQUIRE(pull);
    CHECK(pull->expected == std::vector<std::string>{"IfNotPresent"});
    CHECK(pull->applies_to == "Deployment");
    CHECK_FALSE(find("imagePullPolicy", RuleKind::RequiredArgument));
    CHECK(find("securityContext", RuleKind::RequiredArgument));
    CHECK_FALSE(find("securityContext", RuleKind::SecuredOptionSet));
    CHECK(find("hostNetwork", RuleKind::RequiredArgument));
    for (const auto& r : policy) CHECK_FALSE(r.rationale.empty());
    CHECK(derive_policy(secgraph(), bindings(), "ConfigMap").empty());

    // A required binding whose remediation contradicts the secured set.
    auto bad = parse_bindings("- kind: Pod\n  path: spec.hostNetwork\n  argument: hostNetwork\n"
                              "  required: true\n  remediation: true\n");
    CHECK_THROWS_AS(derive_policy(secgraph(), bad, "Pod"), ValidationError);
    auto unknown = parse_bindings("- kind: Pod\n  path: spec.x\n  argument: --no-such-flag\n  required: true\n");
    CHECK(derive_policy(secgraph(), unknown, "Pod").empty());
}

TEST_CASE("the nginx deployment yields the five expected findings") {
    const auto tree = parse_manifest(testing::read_fixture("manifests/fig8-deployment.yaml"));
    const auto findings = check_tree(tree);
    std::vector<std::tuple<std::string, FindingKind, std::optional<std::string>>> got;
    for (const auto& f : findings) got.emplace_back(f.path, f.kind, f.observed);
    const std::string c = "spec.template.spec.containers[0].";
    const std::vector<std::tuple<std::string, FindingKind, std::optional<std::string>>> expected{
        {c + "imagePullPolicy", FindingKind::InsecureOption, "Always"},
        {c + "securityContext", FindingKind::MissingArgument, std::nullopt},
        {c + "securityContext.allowPrivilegeEscalation", FindingKind::MissingArgument, std::nullopt},
        {c + "securityContext.runAsNonRoot", FindingKind::MissingArgument, std::nullopt},
        {"spec.template.spec.hostNetwork", FindingKind::MissingArgument, std::nullopt},
    };
    CHECK(got == expected);
    CHECK(findings[0].expected == std::vector<std::string>{"IfNotPresent"});

    const auto text = findings_to_text(findings);
    CHECK(text.find(c + "imagePullPolicy InsecureOption Always→IfNotPresent — ") != std::string::npos);

    const auto fixed = remediate(tree, findings, derive_policy(secgraph(), bindings(), tree.kind));
    CHECK(fixed.plan.edits.size() == 5);
    CHECK(check_tree(fixed.tree).empty());
    const auto* ctx = lookup(fixed.tree.root, parse_path(c + "securityContext"));
    REQUIRE(ctx);
    CHECK(ctx->find("runAsNonRoot")->value == Scalar::boolean(true));
    CHECK(ctx->find("allowPrivilegeEscalation")->value == Scalar::boolean(false));
    // Untouched content survives.
    CHECK(lookup(fixed.tree.root, parse_path("spec.replicas"))->value == Scalar::integer(3));
    CHECK(plan_to_json(fixed.plan).find("insert-subtree") != std::string::npos);
}

TEST_CASE("compliant manifests have no findings") {
    for (const char* name : {"manifests/compliant-deployment.yaml", "manifests/configmap.yaml", "manifests/job.yaml"})
        CHECK(check_tree(parse_manifest(testing::read_fixture(name))).empty());
}

TEST_CASE("wildcards report per list element") {
    const auto tree = parse_manifest(testing::read_fixture("manifests/two-containers.yaml"));
    const auto findings = check_tree(tree);
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].path == "spec.template.spec.containers[1].imagePullPolicy");

    const auto root = tree.root;
    CHECK(match_paths(root, parse_path("spec.template.spec.containers[*].name")).size() == 2);
    CHECK(match_paths(root, parse_path("spec.template.spec.containers[1].image")).size() == 1);
    CHECK(match_paths(root, parse_path("spec.template.spec.containers[5].image")).empty());
    CHECK(match_paths(root, parse_path("metadata[*]")).empty());
}

TEST_CASE("remediation closes every finding after random mutations") {
    std::mt19937_64 rng(8);
    const std::vector<std::string> bases{"manifests/compliant-deployment.yaml", "manifests/two-containers.yaml",
                                         "manifests/pod.json", "manifests/fig8-deployment.yaml"};
    int with_findings = 0;
    for (int round = 0; round < 50; ++round) {
        auto tree = parse_manifest(testing::read_fixture(bases[round % bases.size()]));
        const auto policy = derive_policy(secgraph(), bindings(), tree.kind);
        for (int m = 0, n = 1 + static_cast<int>(rng() % 4); m < n; ++m) {
            if (m % 2) testing::mutate_manifest(tree.root, rng);
            else testing::mutate_guarded(tree.root, policy, rng);
        }
        const auto findings = check(tree, policy);
        with_findings += findings.empty() ? 0 : 1;
        const auto fixed = remediate(tree, findings, policy);
        CAPTURE(emit_yaml(tree.root));
        CHECK(check(fixed.tree, policy).empty());
        CHECK(fixed.plan.edits.size() == findings.size());
        // The emitted manifest reads back to the same tree.
        CHECK(parse_manifest(emit(fixed.tree, ManifestFormat::Yaml)) == fixed.tree);
    }
    CHECK(with_findings >= 40);
}

TEST_CASE("remediation rejects conflicting or unsupported edits") {
    const auto tree = parse_manifest(testing::read_fixture("manifests/fig8-deployment.yaml"));
    const auto policy = derive_policy(secgraph(), bindings(), tree.kind);
    auto findings = check(tree, policy);
    auto dup = findings;
    dup.push_back(findings.front());
    CHECK_THROWS_AS(remediate(tree, dup, policy), RemediationError);

    auto orphan = findings;
    orphan.front().rule = policy.size() + 3;
    CHECK_THROWS_AS(remediate(tree, orphan, policy), RemediationError);

    auto scalar = parse_manifest("kind: Pod\nspec: 5\n");
    Finding f;
    f.path = "spec.hostNetwork";
    f.kind = FindingKind::MissingArgument;
    f.fix = CptNode::leaf(Scalar::boolean(false));
    const auto pod_policy = derive_policy(secgraph(), bindings(), "Pod");
    for (std::size_t i = 0; i < pod_policy.size(); ++i)
        if (pod_policy[i].argument == "hostNetwork" && pod_policy[i].kind == RuleKind::RequiredArgument) f.rule = i;
    CHECK_THROWS_AS(remediate(scalar, {f}, pod_policy), RemediationError);

    // A null value is treated as an empty map and filled in.
    auto nulled = parse_manifest("kind: Pod\nspec:\n");
    const auto nf = check(nulled, pod_policy);
    REQUIRE(nf.size() == 1);
    CHECK(check(remediate(nulled, nf, pod_policy).tree, pod_policy).empty());
}
