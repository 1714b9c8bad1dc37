#include "kgsec/classifier/model_io.hpp"
#include "kgsec/corpus/document.hpp"
#include "kgsec/enrich/enrich.hpp"
#include "kgsec/error.hpp"
#include "kgsec/kg/serialize.hpp"
#include "kgsec/relevancy/relevancy.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace kgsec;
using kg::EntityKind;
using kg::Predicate;

namespace {

struct Pipeline {
    kg::ConfigKnowledgeGraph base = kg::load_graph(testing::fixture("kgconfig.json"));
    std::vector<enrich::ConceptPrediction> predictions;

    Pipeline() {
        auto docs = corpus::load_corpus(testing::fixture("security_corpus.jsonl"));
        auto figs = corpus::load_corpus(testing::fixture("figure_docs.jsonl"));
        docs.insert(docs.end(), figs.begin(), figs.end());
        const auto lexicon = relevancy::build_lexicon(base);
        const auto results = relevancy::classify_documents(docs, lexicon, 2);
        const auto model = classifier::load_model(testing::fixture("concept_model.json"));
        predictions = enrich::predict_concepts(docs, results, model, 2);
    }

    kg::ConfigKnowledgeGraph enriched(double threshold) const {
        auto g = base;
        enrich::attach_concepts(g, predictions, threshold);
        enrich::extract_secured_options(g, predictions, threshold);
        return g;
    }
};

const Pipeline& pipeline() {
    static const Pipeline p;
    return p;
}

bool contains_graph(const kg::ConfigKnowledgeGraph& big, const kg::ConfigKnowledgeGraph& small) {
    for (const auto& [id, e] : small.entities()) {
        const auto* other = big.try_entity(id);
        if (!other || !(*other == e)) return false;
    }
    return std::includes(big.triples().begin(), big.triples().end(), small.triples().begin(),
                         small.triples().end());
}

}  // namespace

TEST_CASE("hot-spot counts on a hand-built graph") {
    kg::ConfigKnowledgeGraph g;
    const auto sys = g.add_entity(EntityKind::System, "Kubernetes");
    const auto comp = g.add_entity(EntityKind::Component, "kube-apiserver", {}, sys);
    g.add_relation(sys, Predicate::hasComponent, comp);
    auto argument = [&](const std::string& name, const std::string& def, std::vector<std::string> options,
                        std::vector<std::string> secured) {
        const auto arg = g.add_entity(EntityKind::Argument, name, {}, comp);
        g.add_relation(comp, Predicate::hasArgument, arg);
        for (const auto& o : options) {
            const auto id = g.add_entity(EntityKind::Option, o, {}, arg);
            g.add_relation(arg, Predicate::hasOption, id);
            if (std::find(secured.begin(), secured.end(), o) != secured.end())
                g.add_relation(arg, Predicate::hasSecuredOption, id);
        }
        if (!def.empty()) g.add_relation(arg, Predicate::hasDefault, g.add_entity(EntityKind::DefaultValue, def, {}, arg));
    };
    argument("--authorization-mode", "AlwaysAllow", {"AlwaysAllow", "RBAC"}, {"RBAC"});
    argument("--profiling", "true", {"true", "false"}, {"false"});
    argument("--kubelet-https", "true", {"true", "false"}, {"true"});

    const auto stats = enrich::hotspot_stats(g);
    REQUIRE(stats.count("Kubernetes"));
    const auto& k = stats.at("Kubernetes");
    CHECK(k.total == 3);
    CHECK(k.unsecured == 2);
    CHECK(k.secured_by_default == 1);
    CHECK(enrich::hotspots_to_json(stats).find("\"unsecured\": 2") != std::string::npos);
    CHECK(enrich::hotspots_to_table(stats).find("Kubernetes") != std::string::npos);

    // An argument without a default counts towards the total only.
    argument("--audit-log-path", "", {"x"}, {"x"});
    CHECK(enrich::hotspot_stats(g).at("Kubernetes") == enrich::SystemHotspots{4, 2, 1});
}

TEST_CASE("negation cues") {
    CHECK(enrich::has_negation("Do not set --profiling to true."));
    CHECK(enrich::has_negation("Never configure --icc as true."));
    CHECK(enrich::has_negation("Avoid leaving hostNetwork at true."));
    CHECK(enrich::has_negation("It shouldn't be true."));
    CHECK(enrich::has_negation("You mustn't enable it."));
    CHECK_FALSE(enrich::has_negation("Set --profiling to false."));
    CHECK_FALSE(enrich::has_negation("Notice the knot in the notation."));
}

TEST_CASE("secured options come from statements and actions only") {
    kg::ConfigKnowledgeGraph g;
    const auto sys = g.add_entity(EntityKind::System, "Docker");
    const auto comp = g.add_entity(EntityKind::Component, "dockerd", {}, sys);
    const auto arg = g.add_entity(EntityKind::Argument, "--icc", {}, comp);
    const auto t = g.add_entity(EntityKind::Option, "true", {}, arg);
    const auto f = g.add_entity(EntityKind::Option, "false", {}, arg);
    g.add_relation(sys, Predicate::hasComponent, comp);
    g.add_relation(comp, Predicate::hasArgument, arg);
    g.add_relation(arg, Predicate::hasOption, t);
    g.add_relation(arg, Predicate::hasOption, f);

    const std::vector<enrich::ConceptPrediction> preds{
        {"d", 0, "Set --icc=false on every daemon.", "statement", {"--icc"}, 0.9},
        {"d", 1, "Do not set --icc to true.", "statement", {"--icc"}, 0.9},
        {"d", 2, "Leaving --icc at true lets containers talk.", "goal", {"--icc"}, 0.9},
        {"d", 3, "Restart with --icc=true for testing.", "action", {"--icc"}, 0.3},
        {"d", 4, "Set --unknown to false.", "statement", {"--unknown"}, 0.9},
    };
    const auto report = enrich::attach_concepts(g, preds);
    CHECK(report.attached == 3);
    CHECK(report.below_threshold == 1);
    CHECK(report.unmatched == 1);
    CHECK(g.objects(arg, Predicate::hasStatement).size() == 2);
    CHECK(g.objects(arg, Predicate::hasGoal).size() == 1);
    CHECK(g.objects(arg, Predicate::hasAction).empty());

    const auto pairs = enrich::extract_secured_options(g, preds);
    CHECK(pairs == std::vector<enrich::SecuredPair>{{arg, f}});
    CHECK(g.objects(arg, Predicate::hasSecuredOption) == std::vector<kg::EntityId>{f});

    const auto stmt = g.objects(arg, Predicate::hasStatement).front();
    CHECK(g.entity(stmt).attrs.at("doc_id") == "d");
    CHECK(g.entity(stmt).attrs.count("confidence"));
    CHECK(g.entity(stmt).scope == kg::kGlobalScope);
}

TEST_CASE("predictions skip the other class and follow document order") {
    const auto& p = pipeline();
    REQUIRE_FALSE(p.predictions.empty());
    for (const auto& pr : p.predictions) {
        CHECK(pr.label != "other");
        CHECK_FALSE(pr.arguments.empty());
        CHECK(pr.confidence > 0);
        CHECK(pr.confidence <= 1);
    }
    for (std::size_t i = 1; i < p.predictions.size(); ++i) {
        const auto& a = p.predictions[i - 1];
        const auto& b = p.predictions[i];
        if (a.doc_id == b.doc_id) CHECK(a.sentence_index < b.sentence_index);
    }
}

TEST_CASE("enrichment is idempotent and only adds") {
    const auto& p = pipeline();
    const auto once = p.enriched(enrich::kDefaultThreshold);
    CHECK(kg::serialize(once) == testing::read_fixture("kgsecconfig.json"));
    CHECK(contains_graph(once, p.base));

    auto twice = once;
    const auto report = enrich::attach_concepts(twice, p.predictions);
    enrich::extract_secured_options(twice, p.predictions);
    CHECK(report.edges_added == 0);
    CHECK(twice == once);
    CHECK_NOTHROW(twice.check_integrity());
}

TEST_CASE("raising the threshold never adds knowledge") {
    const auto& p = pipeline();
    std::size_t previous_relations = SIZE_MAX;
    std::set<std::pair<std::string, std::string>> previous;
    for (double threshold : {0.3, 0.5, 0.7, 0.9, 0.99}) {
        const auto g = p.enriched(threshold);
        std::set<std::pair<std::string, std::string>> concepts;
        for (const auto& t : g.triples()) {
            if (t.predicate == Predicate::hasStatement || t.predicate == Predicate::hasGoal ||
                t.predicate == Predicate::hasAction || t.predicate == Predicate::hasSecuredOption)
                concepts.emplace(g.entity(t.subject).label + "#" + std::to_string(t.subject),
                                 std::string(kg::to_string(t.predicate)) + ":" + g.entity(t.object).label);
        }
        if (previous_relations != SIZE_MAX) {
            CHECK(g.relation_count() <= previous_relations);
            CHECK(std::includes(previous.begin(), previous.end(), concepts.begin(), concepts.end()));
        }
        previous_relations = g.relation_count();
        previous = std::move(concepts);
    }
}

TEST_CASE("fixture graph has the expected secured options") {
    const auto g = kg::load_graph(testing::fixture("kgsecconfig.json"));
    auto secured = [&](const std::string& arg) {
        std::set<std::string> out;
        for (auto id : enrich::argument_entities(g, arg))
            for (auto o : g.objects(id, Predicate::hasSecuredOption)) out.insert(g.entity(o).label);
        return out;
    };
    CHECK(secured("imagePullPolicy") == std::set<std::string>{"IfNotPresent"});
    CHECK(secured("--authorization-mode") == std::set<std::string>{"RBAC"});
    CHECK(secured("hostNetwork") == std::set<std::string>{"false"});
    CHECK(secured("securityContext").empty());
    CHECK_FALSE(g.objects(enrich::argument_entities(g, "securityContext").front(), Predicate::hasGoal).empty());
}
