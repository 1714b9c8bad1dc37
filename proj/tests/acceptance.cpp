// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include "kgsec/classifier/dataset.hpp"
#include "kgsec/classifier/features.hpp"
#include "kgsec/classifier/linear_model.hpp"
#include "kgsec/classifier/metrics.hpp"
#include "kgsec/classifier/model_io.hpp"
#include "kgsec/classifier/preprocess.hpp"
#include "kgsec/classifier/tfidf.hpp"
#include "kgsec/cli/commands.hpp"
#include "kgsec/compliance/checker.hpp"
#include "kgsec/compliance/manifest_io.hpp"
#include "kgsec/compliance/remediation.hpp"
#include "kgsec/corpus/document.hpp"
#include "kgsec/enrich/enrich.hpp"
#include "kgsec/kg/serialize.hpp"
#include "kgsec/util/log.hpp"
#include "kgsec/relevancy/relevancy.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

using namespace kgsec;

namespace {

// Pinned tolerances and limits.
constexpr double kScenarioSeconds = 1.0;
constexpr double kRelevancySeconds = 1.0;
constexpr double kCvSeconds = 60.0;
constexpr double kPipelineSeconds = 120.0;
constexpr double kMinMeanMcc = 0.5;
constexpr double kAccuracyMargin = 0.15;
constexpr double kFeatureSlack = 0.05;
constexpr double kMccTolerance = 1e-12;
constexpr double kKappaIndependent = 0.05;
constexpr double kGradientRelError = 1e-4;
constexpr double kGradientFloor = 1e-2;  // denominator floor for the relative error
constexpr double kFiniteStep = 1e-5;
constexpr double kTfidfTolerance = 1e-9;
constexpr double kNormTolerance = 1e-9;

struct Result {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (!ok) detail << "; ";
            ok = false;
            detail << what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun cli_run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliRun r;
    r.code = cli::run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string fx(const std::string& name) { return testing::fixture(name).string(); }

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

Result criterion1() {
    Result r;
    const auto start = Clock::now();
    const std::vector<std::string> common{"--graph", fx("kgsecconfig.json"), "--bindings", fx("bindings.yaml")};
    std::vector<std::string> check_args{"check", "--format", "json"};
    check_args.insert(check_args.end(), common.begin(), common.end());
    check_args.push_back(fx("manifests/fig8-deployment.yaml"));
    const auto check = cli_run(check_args);
    r.require(check.code == cli::kExitFindings, "check exit " + std::to_string(check.code));

    std::set<std::pair<std::string, std::string>> got;
    const auto report = nlohmann::json::parse(check.out);
    for (const auto& f : report.at(0).at("findings")) {
        const auto path = f.at("path").get<std::string>();
        got.emplace(f.at("kind").get<std::string>(),
                    path.substr(path.rfind('.') + 1) + (f.contains("observed") && f["observed"].is_string() ? "=" + f["observed"].get<std::string>() : ""));
    }
    const std::set<std::pair<std::string, std::string>> expected{
        {"MissingArgument", "securityContext"},     {"MissingArgument", "runAsNonRoot"},
        {"MissingArgument", "allowPrivilegeEscalation"}, {"InsecureOption", "imagePullPolicy=Always"},
        {"MissingArgument", "hostNetwork"}};
    std::string listed;
    for (const auto& [kind, what] : got) listed += " " + kind + ":" + what;
    r.require(got == expected, "finding set differs:" + listed);

    testing::TempDir dir("acceptance-c1");
    const auto fixed_path = (dir / "fixed.yaml").string();
    std::vector<std::string> fix_args{"fix"};
    fix_args.insert(fix_args.end(), common.begin(), common.end());
    fix_args.insert(fix_args.end(), {fx("manifests/fig8-deployment.yaml"), "--out", fixed_path});
    r.require(cli_run(fix_args).code == cli::kExitOk, "fix failed");
    const auto fixed = util::read_file(fixed_path);
    r.require(contains(fixed, "imagePullPolicy: IfNotPresent"), "fixed manifest lacks imagePullPolicy: IfNotPresent");
    r.require(contains(fixed, "allowPrivilegeEscalation: false"), "fixed manifest lacks allowPrivilegeEscalation: false");

    std::vector<std::string> recheck{"check"};
    recheck.insert(recheck.end(), common.begin(), common.end());
    recheck.push_back(fixed_path);
    const auto again = cli_run(recheck);
    r.require(again.code == cli::kExitOk && again.out == "findings=0\n", "re-check is not clean");

    const double secs = seconds_since(start);
    r.require(secs < kScenarioSeconds, "took " + fmt(secs) + " s");
    if (r.ok) r.detail << got.size() << " findings as expected, fixed manifest clean, " << fmt(secs) << " s";
    return r;
}

Result criterion2() {
    Result r;
    const auto start = Clock::now();
    const auto graph = kg::load_graph(testing::fixture("kgconfig.json"));
    const auto docs = corpus::load_corpus(testing::fixture("relevancy_corpus.jsonl"));
    const auto results = relevancy::classify_documents(docs, relevancy::build_lexicon(graph), 1);
    const double secs = seconds_since(start);

    auto truth = [](const std::string& id) { return id.rfind("irrelevant-", 0) != 0; };
    std::size_t tp = 0, fp = 0;
    std::set<std::string> false_negatives, traps;
    for (const auto& d : docs)
        if (d.id.rfind("trap-", 0) == 0) traps.insert(d.id);
    for (const auto& res : results) {
        if (res.relevant && truth(res.doc_id)) ++tp;
        if (res.relevant && !truth(res.doc_id)) ++fp;
        if (!res.relevant && truth(res.doc_id)) false_negatives.insert(res.doc_id);
    }
    const double precision = tp + fp ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0;
    r.require(docs.size() == 40 && traps.size() == 5, "unexpected corpus shape");
    r.require(precision == 1.0, "precision " + fmt(precision));
    r.require(false_negatives == traps, std::to_string(false_negatives.size()) + " false negatives, not the 5 traps");
    r.require(secs < kRelevancySeconds, "took " + fmt(secs) + " s");
    if (r.ok) r.detail << "precision 1, tp=" << tp << ", false negatives = 5 traps, " << fmt(secs) << " s";
    return r;
}

Result criterion3() {
    Result r;
    const auto start = Clock::now();
    const auto rows = classifier::load_labeled_dataset(testing::fixture("labeled_sentences.csv"));
    std::map<std::string, std::size_t> counts;
    for (const auto& row : rows) ++counts[row.label];
    std::size_t majority = 0;
    for (const auto& [label, n] : counts) majority = std::max(majority, n);
    const double baseline = static_cast<double>(majority) / static_cast<double>(rows.size());

    classifier::FeatureConfig both, word;
    word.mode = classifier::FeatureMode::Word;
    const auto cv_both = classifier::cross_validate_concepts(rows, 10, 42, {}, both, {}, 2);
    const auto cv_word = classifier::cross_validate_concepts(rows, 10, 42, {}, word, {}, 2);
    const double secs = seconds_since(start);

    r.require(cv_both.folds.size() == 10, "fold count");
    r.require(cv_both.mean_mcc >= kMinMeanMcc, "mean MCC " + fmt(cv_both.mean_mcc));
    r.require(cv_both.mean_accuracy >= baseline + kAccuracyMargin,
              "accuracy " + fmt(cv_both.mean_accuracy) + " vs baseline " + fmt(baseline));
    r.require(cv_both.mean_mcc >= cv_word.mean_mcc - kFeatureSlack,
              "word+char " + fmt(cv_both.mean_mcc) + " < word " + fmt(cv_word.mean_mcc) + " - slack");
    r.require(secs < kCvSeconds, "took " + fmt(secs) + " s");
    if (r.ok)
        r.detail << "mean MCC " << fmt(cv_both.mean_mcc) << ", accuracy " << fmt(cv_both.mean_accuracy)
                 << " (baseline " << fmt(baseline) << "), word-only MCC " << fmt(cv_word.mean_mcc) << ", "
                 << fmt(secs) << " s";
    return r;
}

// Multi-class MCC straight from the confusion matrix.
double mcc_from_confusion(const std::vector<std::vector<std::size_t>>& m) {
    const std::size_t k = m.size();
    double s = 0, c = 0, sum_pt = 0, sum_pp = 0, sum_tt = 0;
    std::vector<double> t(k, 0), p(k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            t[i] += static_cast<double>(m[i][j]);
            p[j] += static_cast<double>(m[i][j]);
            s += static_cast<double>(m[i][j]);
        }
    for (std::size_t i = 0; i < k; ++i) {
        c += static_cast<double>(m[i][i]);
        sum_pt += p[i] * t[i];
        sum_pp += p[i] * p[i];
        sum_tt += t[i] * t[i];
    }
    const double denom = (s * s - sum_pp) * (s * s - sum_tt);
    return denom == 0 ? 0 : (c * s - sum_pt) / std::sqrt(denom);
}

Result criterion4() {
    Result r;
    std::mt19937_64 rng(4);
    const std::vector<std::string> names{"action", "goal", "other", "statement", "extra"};
    double worst = 0;
    for (int round = 0; round < 100; ++round) {
        const std::size_t k = 2 + rng() % 4;
        std::vector<std::vector<std::size_t>> m(k, std::vector<std::size_t>(k));
        std::vector<std::string> truth, predicted;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                m[i][j] = rng() % 12;
                for (std::size_t n = 0; n < m[i][j]; ++n) {
                    truth.push_back(names[i]);
                    predicted.push_back(names[j]);
                }
            }
        if (truth.empty()) {
            m[0][0] = 1;
            truth.push_back(names[0]);
            predicted.push_back(names[0]);
        }
        worst = std::max(worst, std::abs(classifier::matthews_corrcoef(truth, predicted) - mcc_from_confusion(m)));
    }
    r.require(worst < kMccTolerance, "max |delta| " + fmt(worst));

    const std::vector<std::string> bt{"p", "p", "p", "n", "n", "n"};
    const std::vector<std::string> bp{"p", "p", "n", "p", "n", "n"};
    r.require(classifier::matthews_corrcoef(bt, bp) == 1.0 / 3.0, "binary case is not 1/3");

    std::vector<std::string> a, b;
    std::uniform_int_distribution<int> pick(0, 3);
    for (int i = 0; i < 10000; ++i) {
        a.push_back(names[pick(rng)]);
        b.push_back(names[pick(rng)]);
    }
    r.require(classifier::cohen_kappa(a, a) == 1.0, "kappa on identical sequences");
    const double independent = classifier::cohen_kappa(a, b);
    r.require(std::abs(independent) < kKappaIndependent, "independent kappa " + fmt(independent));
    if (r.ok) r.detail << "max MCC delta " << fmt(worst) << ", binary 1/3, independent kappa " << fmt(independent);
    return r;
}

classifier::SparseVector random_sparse(std::mt19937_64& rng, std::size_t dim) {
    std::normal_distribution<double> nd;
    classifier::SparseVector v;
    v.dimension = dim;
    for (std::size_t j = 0; j < dim; ++j)
        if (rng() % 3) v.entries.emplace_back(static_cast<std::uint32_t>(j), nd(rng));
    return v;
}

Result criterion5() {
    Result r;
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    double worst = 0;
    for (int round = 0; round < 20; ++round) {
        const std::size_t dim = 3 + rng() % 6;
        std::vector<classifier::SparseVector> xs;
        std::vector<double> ys;
        for (int i = 0; i < 12; ++i) {
            xs.push_back(random_sparse(rng, dim));
            ys.push_back(rng() % 2 ? 1.0 : -1.0);
        }
        const classifier::BinaryProblem prob{xs, ys, 0.5 + static_cast<double>(rng() % 40) / 10.0, dim};
        std::vector<double> w(dim);
        for (auto& x : w) x = nd(rng);
        const double b = nd(rng);
        std::vector<double> gw;
        double gb = 0;
        classifier::gradient(prob, w, b, gw, gb);
        auto rel = [](double fd, double an) {
            return std::abs(fd - an) / std::max({std::abs(fd), std::abs(an), kGradientFloor});
        };
        for (std::size_t j = 0; j < dim; ++j) {
            auto wp = w, wm = w;
            wp[j] += kFiniteStep;
            wm[j] -= kFiniteStep;
            const double fd = (classifier::objective(prob, wp, b) - classifier::objective(prob, wm, b)) / (2 * kFiniteStep);
            worst = std::max(worst, rel(fd, gw[j]));
        }
        const double fdb = (classifier::objective(prob, w, b + kFiniteStep) -
                            classifier::objective(prob, w, b - kFiniteStep)) / (2 * kFiniteStep);
        worst = std::max(worst, rel(fdb, gb));
    }
    r.require(worst < kGradientRelError, "gradient relative error " + fmt(worst));

    classifier::FeatureConfig word;
    word.mode = classifier::FeatureMode::Word;
    const auto toy = classifier::TfidfModel::fit({{"a", "b"}, {"a", "c"}, {"a", "d"}}, word);
    const double idf_a = std::log(4.0 / 4.0) + 1, idf_b = std::log(4.0 / 2.0) + 1;
    const double norm = std::sqrt(idf_a * idf_a + 4 * idf_b * idf_b);
    std::map<std::uint32_t, double> got;
    for (const auto& [i, v] : toy.transform({"a", "b", "b"}).entries) got[i] = v;
    const double tfidf_err = std::max(std::abs(got[toy.vocabulary().at("w:a")] - idf_a / norm),
                                      std::abs(got[toy.vocabulary().at("w:b")] - 2 * idf_b / norm));
    r.require(got.size() == 2 && tfidf_err < kTfidfTolerance, "toy tf-idf error " + fmt(tfidf_err));

    const auto rows = classifier::load_labeled_dataset(testing::fixture("labeled_sentences.csv"));
    classifier::Preprocessor pre;
    std::vector<std::vector<std::string>> tokens;
    for (const auto& row : rows) tokens.push_back(pre(row.text));
    tokens.push_back({});
    std::size_t bad_norms = 0, vectors = 0;
    for (auto mode : {classifier::FeatureMode::Word, classifier::FeatureMode::Char, classifier::FeatureMode::WordChar}) {
        classifier::FeatureConfig cfg;
        cfg.mode = mode;
        const auto model = classifier::TfidfModel::fit(tokens, cfg);
        for (const auto& t : tokens) {
            const double n = model.transform(t).norm();
            ++vectors;
            if (!(n == 0 || std::abs(n - 1) < kNormTolerance)) ++bad_norms;
        }
    }
    r.require(bad_norms == 0, std::to_string(bad_norms) + " vectors without unit or zero norm");
    if (r.ok)
        r.detail << "gradient rel error " << fmt(worst) << ", toy tf-idf error " << fmt(tfidf_err) << ", " << vectors
                 << " vectors with norm 1 or 0";
    return r;
}

Result criterion6() {
    Result r;
    std::mt19937_64 rng(6);
    std::size_t mismatches = 0, nonempty = 0;
    for (int round = 0; round < 200; ++round) {
        const auto g = testing::random_small_graph(rng, 10);
        const auto p = testing::random_pattern(rng, g, 3);
        const auto got = kg::match_subgraph(g, p);
        if (g.entity_count() > 10 || p.nodes.size() > 3 || got != testing::brute_force_matches(g, p)) ++mismatches;
        nonempty += got.empty() ? 0 : 1;
    }
    r.require(mismatches == 0, std::to_string(mismatches) + " matcher mismatches");

    for (const char* name : {"kgconfig.json", "kgsecconfig.json"}) {
        const auto text = testing::read_fixture(name);
        r.require(kg::serialize(kg::deserialize(text)) == text, std::string(name) + " does not round-trip");
    }

    const auto base = kg::load_graph(testing::fixture("kgconfig.json"));
    auto docs = corpus::load_corpus(testing::fixture("security_corpus.jsonl"));
    const auto figs = corpus::load_corpus(testing::fixture("figure_docs.jsonl"));
    docs.insert(docs.end(), figs.begin(), figs.end());
    const auto results = relevancy::classify_documents(docs, relevancy::build_lexicon(base), 2);
    const auto predictions =
        enrich::predict_concepts(docs, results, classifier::load_model(testing::fixture("concept_model.json")), 2);
    auto enriched = [&](double threshold) {
        auto g = base;
        enrich::attach_concepts(g, predictions, threshold);
        enrich::extract_secured_options(g, predictions, threshold);
        return g;
    };
    const auto once = enriched(enrich::kDefaultThreshold);
    auto twice = once;
    enrich::attach_concepts(twice, predictions);
    enrich::extract_secured_options(twice, predictions);
    r.require(twice == once, "enrichment is not idempotent");

    const auto& base_triples = base.triples();
    r.require(std::includes(once.triples().begin(), once.triples().end(), base_triples.begin(), base_triples.end()),
              "enrichment removed base relations");
    // Concept entities get fresh ids, so compare knowledge by subject id and object label.
    auto knowledge = [](const kg::ConfigKnowledgeGraph& g) {
        std::set<std::tuple<kg::EntityId, std::string, std::string>> out;
        for (const auto& t : g.triples())
            out.emplace(t.subject, std::string(kg::to_string(t.predicate)), g.entity(t.object).label);
        return out;
    };
    std::set<std::tuple<kg::EntityId, std::string, std::string>> previous;
    std::size_t previous_relations = 0;
    bool monotone = true, first = true;
    for (double threshold : {0.3, 0.5, 0.7, 0.9}) {
        const auto g = enriched(threshold);
        auto current = knowledge(g);
        if (!first && (g.relation_count() > previous_relations ||
                       !std::includes(previous.begin(), previous.end(), current.begin(), current.end())))
            monotone = false;
        first = false;
        previous_relations = g.relation_count();
        previous = std::move(current);
    }
    r.require(monotone, "raising the threshold added relations");
    if (r.ok)
        r.detail << "200 matcher instances agree (" << nonempty << " nonempty), fixtures round-trip, idempotent, monotone";
    return r;
}

Result criterion7() {
    Result r;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(testing::fixture("manifests"))) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::set<compliance::ScalarType> types;
    std::size_t documents = 0, failures = 0, nested_lists = 0;
    bool multi_doc = false;
    for (const auto& file : files) {
        const auto docs = compliance::parse_documents(util::read_file(file));
        multi_doc = multi_doc || docs.size() > 1;
        for (const auto& d : docs) {
            ++documents;
            compliance::visit(d, [&](const compliance::Path&, const compliance::CptNode& n) {
                if (n.is_leaf()) types.insert(n.value.type);
                if (n.is_list()) ++nested_lists;
            });
            if (compliance::parse_documents(compliance::emit_yaml(d)) != std::vector<compliance::CptNode>{d}) ++failures;
            if (compliance::parse_documents(compliance::emit_json(d)) != std::vector<compliance::CptNode>{d}) ++failures;
        }
    }
    r.require(files.size() >= 20, std::to_string(files.size()) + " manifests");
    r.require(types.size() == 5, std::to_string(types.size()) + " scalar types");
    r.require(multi_doc && nested_lists > 0, "corpus lacks multi-document streams or sequences");
    r.require(failures == 0, std::to_string(failures) + " round-trip failures");

    const auto graph = kg::load_graph(testing::fixture("kgsecconfig.json"));
    const auto bindings = compliance::load_bindings(testing::fixture("bindings.yaml"));
    const std::vector<std::string> bases{"manifests/compliant-deployment.yaml", "manifests/two-containers.yaml",
                                         "manifests/pod.json", "manifests/fig8-deployment.yaml"};
    std::mt19937_64 rng(7);
    std::size_t open = 0, with_findings = 0;
    for (int round = 0; round < 50; ++round) {
        auto tree = compliance::parse_manifest(testing::read_fixture(bases[round % bases.size()]));
        const auto policy = compliance::derive_policy(graph, bindings, tree.kind);
        for (int m = 0, n = 1 + static_cast<int>(rng() % 4); m < n; ++m) {
            if (m % 2) testing::mutate_manifest(tree.root, rng);
            else testing::mutate_guarded(tree.root, policy, rng);
        }
        const auto findings = compliance::check(tree, policy);
        with_findings += findings.empty() ? 0 : 1;
        const auto fixed = compliance::remediate(tree, findings, policy);
        const auto reread = compliance::parse_manifest(compliance::emit(fixed.tree, compliance::ManifestFormat::Yaml));
        if (!compliance::check(reread, policy).empty()) ++open;
    }
    r.require(open == 0, std::to_string(open) + " mutated manifests not closed by remediation");
    if (r.ok)
        r.detail << files.size() << " manifests / " << documents << " documents round-trip, 50 mutations closed ("
                 << with_findings << " had findings)";
    return r;
}

// Runs the whole CLI pipeline in `dir` and returns the hash of every output.
std::map<std::string, std::uint64_t> run_pipeline(const std::filesystem::path& dir, std::string& error) {
    const auto p = [&](const char* name) { return (dir / name).string(); };
    util::write_file(dir / "docs.jsonl",
                     testing::read_fixture("security_corpus.jsonl") + testing::read_fixture("figure_docs.jsonl"));
    const std::vector<std::string> common{"--graph", p("kgsec.json"), "--bindings", fx("bindings.yaml")};
    const std::vector<std::pair<std::string, std::vector<std::string>>> steps{
        {"", {"build-kg", "--corpus", fx("config_docs.jsonl"), "--out", p("kg.json")}},
        {"", {"filter-docs", "--graph", p("kg.json"), "--corpus", p("docs.jsonl"), "--out", p("relevancy.jsonl")}},
        {"cv.json", {"train", "--dataset", fx("labeled_sentences.csv"), "--out", p("model.json"), "--jobs", "2"}},
        {"", {"enrich", "--graph", p("kg.json"), "--model", p("model.json"), "--corpus", p("docs.jsonl"),
              "--relevancy", p("relevancy.jsonl"), "--out", p("kgsec.json")}},
        {"", {"stats", "--graph", p("kgsec.json"), "--format", "json", "--out", p("stats.json")}},
        {"", {"export", "--graph", p("kgsec.json"), "--out", p("graph.cypher")}},
        {"", {"export", "--graph", p("kgsec.json"), "--format", "json", "--out", p("export.json")}},
    };
    for (const auto& [capture, args] : steps) {
        const auto run = cli_run(args);
        if (run.code != cli::kExitOk) {
            error = args[0] + " exited " + std::to_string(run.code) + ": " + run.err;
            return {};
        }
        if (!capture.empty()) util::write_file(dir / capture, run.out);
    }
    auto with = [&](std::string cmd, std::vector<std::string> tail) {
        std::vector<std::string> args{std::move(cmd)};
        args.insert(args.end(), common.begin(), common.end());
        args.insert(args.end(), tail.begin(), tail.end());
        return cli_run(args);
    };
    if (with("check", {"--format", "json", "--out", p("report.json"), fx("manifests/fig8-deployment.yaml"),
                       fx("manifests/two-containers.yaml"), fx("manifests/multi-doc.yaml")})
            .code != cli::kExitFindings) {
        error = "check did not report findings";
        return {};
    }
    if (with("fix", {fx("manifests/fig8-deployment.yaml"), "--out", p("fixed.yaml")}).code != cli::kExitOk) {
        error = "fix failed";
        return {};
    }
    std::map<std::string, std::uint64_t> hashes;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        hashes[e.path().filename().string()] = fnv1a(util::read_file(e.path()));
    return hashes;
}

Result criterion8() {
    Result r;
    const auto start = Clock::now();
    testing::TempDir first("acceptance-c8a"), second("acceptance-c8b");
    std::string error;
    const auto a = run_pipeline(first.path(), error);
    r.require(error.empty(), error);
    const auto b = run_pipeline(second.path(), error);
    r.require(error.empty(), error);
    const double secs = seconds_since(start);
    if (!r.ok) return r;

    std::size_t differing = 0;
    for (const auto& [name, hash] : a)
        if (!b.count(name) || b.at(name) != hash) ++differing;
    r.require(a.size() == b.size() && differing == 0, std::to_string(differing) + " outputs differ between runs");
    r.require(util::read_file(first / "kg.json") == testing::read_fixture("kgconfig.json"),
              "kg.json differs from the committed fixture");
    r.require(util::read_file(first / "model.json") == testing::read_fixture("concept_model.json"),
              "model.json differs from the committed fixture");
    r.require(util::read_file(first / "kgsec.json") == testing::read_fixture("kgsecconfig.json"),
              "kgsec.json differs from the committed fixture");
    r.require(secs < kPipelineSeconds, "pipeline took " + fmt(secs) + " s");
    if (r.ok)
        r.detail << a.size() << " outputs byte-identical across two runs and equal to the fixtures, " << fmt(secs)
                 << " s for both runs";
    return r;
}

}  // namespace

int main() {
    log::set_level(spdlog::level::err);
    const std::vector<std::function<Result()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                        criterion5, criterion6, criterion7, criterion8};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Result r;
        try {
            r = criteria[i]();
        } catch (const std::exception& e) {
            r.ok = false;
            r.detail << "exception: " << e.what();
        }
        std::cout << (r.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << r.detail.str() << std::endl;
        failed += r.ok ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
