#include "kgsec/cli/commands.hpp"

#include "kgsec/classifier/model_io.hpp"
#include "kgsec/compliance/checker.hpp"
#include "kgsec/compliance/manifest_io.hpp"
#include "kgsec/compliance/remediation.hpp"
#include "kgsec/corpus/adapters.hpp"
#include "kgsec/corpus/build.hpp"
#include "kgsec/enrich/enrich.hpp"
#include "kgsec/error.hpp"
#include "kgsec/kg/serialize.hpp"
#include "kgsec/relevancy/relevancy.hpp"
#include "kgsec/util/files.hpp"
#include "kgsec/util/log.hpp"
#include "kgsec/util/parallel.hpp"

#include <CLI11.hpp>

#include <json.hpp>

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace kgsec::cli {

namespace {

struct RunConfig {
    std::string corpus, graph, model, dataset, bindings, out, format, relevancy, config;
    std::string features = "word+char";
    std::uint64_t seed = 42;
    std::size_t folds = 10;
    double threshold = enrich::kDefaultThreshold;
    unsigned jobs = 1;
    bool dry_run = false;
    bool verbose = false;
    std::vector<std::string> manifests;
};

/// Options of one subcommand that may also come from the --config file.
class Options {
public:
    explicit Options(CLI::App* app) : app_(app) {}

    template <typename T>
    Options& add(const std::string& name, T& target, const std::string& help) {
        CLI::Option* opt = app_->add_option("--" + name, target, help);
        setters_[name] = {opt, [&target, name](const std::string& raw) {
                              T value{};
                              if (!CLI::detail::lexical_conversion<T, T>({raw}, value))
                                  throw UsageError("config value for '" + name + "' is invalid: " + raw);
                              target = value;
                          }};
        return *this;
    }

    CLI::App* app() const { return app_; }

    /// Fills options not given on the command line from the config entries.
    void apply(const std::map<std::string, std::string>& config) const {
        for (const auto& [key, value] : config) {
            auto it = setters_.find(key);
            if (it == setters_.end()) continue;
            if (it->second.first->count() == 0) it->second.second(value);
        }
    }

private:
    CLI::App* app_;
    std::map<std::string, std::pair<CLI::Option*, std::function<void(const std::string&)>>> setters_;
};

const std::vector<std::string> kConfigKeys{"corpus", "graph",    "model",     "dataset", "bindings",
                                           "out",    "format",   "seed",      "folds",   "threshold",
                                           "jobs",   "features", "relevancy"};

std::map<std::string, std::string> load_config(const std::string& path) {
    std::map<std::string, std::string> out;
    const auto docs = compliance::parse_documents(util::read_file(path));
    if (docs.empty()) return out;
    if (docs.size() != 1 || !docs.front().is_map()) throw UsageError("config file must be a single mapping");
    const auto& root = docs.front();
    for (std::size_t i = 0; i < root.keys.size(); ++i) {
        const std::string key = root.keys[i];
        if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end())
            throw UsageError("unknown config key '" + key + "'");
        if (!root.children[i].is_leaf()) throw UsageError("config key '" + key + "' must be a scalar");
        out[key] = root.children[i].value.text;
    }
    return out;
}

void require(const std::string& value, const char* flag) {
    if (value.empty()) throw UsageError(std::string("missing required option --") + flag);
}

/// Writes to --out when given, standard output otherwise.
void deliver(const RunConfig& rc, const std::string& text, std::ostream& out) {
    if (rc.out.empty())
        out << text;
    else
        util::write_file(rc.out, text);
}

kg::ConfigKnowledgeGraph build_graph_from_corpus(const std::vector<corpus::RawDocument>& docs, unsigned jobs) {
    std::vector<corpus::Extraction> per_doc(docs.size());
    util::parallel_for(docs.size(), jobs, [&](std::size_t i) {
        const auto& doc = docs[i];
        if (doc.source != corpus::SourceKind::OfficialDoc) return;
        const corpus::FormatAdapter* adapter = corpus::adapter_for(doc.format);
        if (!adapter) return;
        per_doc[i] = corpus::extract_config_records(doc, *adapter);
    });
    std::vector<corpus::ConfigRecord> records;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        const auto& doc = docs[i];
        if (doc.source == corpus::SourceKind::OfficialDoc && !corpus::adapter_for(doc.format))
            log::warn("document '{}': no extractor for format {}", doc.id, corpus::to_string(doc.format));
        for (const auto& w : per_doc[i].warnings)
            log::warn("document '{}' argument '{}' field {}: {}", w.doc_id, w.argument, w.field, w.message);
        std::move(per_doc[i].records.begin(), per_doc[i].records.end(), std::back_inserter(records));
    }
    return corpus::build_kgconfig(std::move(records));
}

int cmd_build_kg(const RunConfig& rc, std::ostream& out) {
    require(rc.corpus, "corpus");
    require(rc.out, "out");
    const auto graph = build_graph_from_corpus(corpus::load_corpus(rc.corpus), rc.jobs);
    kg::save_graph(graph, rc.out);
    out << "entities=" << graph.entity_count() << " relations=" << graph.relation_count() << "\n";
    return kExitOk;
}

std::vector<relevancy::RelevancyResult> run_relevancy(const RunConfig& rc, const kg::ConfigKnowledgeGraph& graph,
                                                      const std::vector<corpus::RawDocument>& docs) {
    if (docs.empty()) return {};
    return relevancy::classify_documents(docs, relevancy::build_lexicon(graph), rc.jobs);
}

int cmd_filter_docs(const RunConfig& rc, std::ostream& out) {
    require(rc.graph, "graph");
    require(rc.corpus, "corpus");
    const auto graph = kg::load_graph(rc.graph);
    const auto results = run_relevancy(rc, graph, corpus::load_corpus(rc.corpus));
    std::string text;
    std::size_t relevant = 0;
    for (const auto& r : results) {
        text += relevancy::result_to_json_line(r) + "\n";
        relevant += r.relevant ? 1 : 0;
    }
    deliver(rc, text, out);
    if (!rc.out.empty()) out << "documents=" << results.size() << " relevant=" << relevant << "\n";
    return kExitOk;
}

int cmd_train(const RunConfig& rc, std::ostream& out) {
    require(rc.dataset, "dataset");
    require(rc.out, "out");
    if (rc.folds < 2) throw UsageError("--folds must be at least 2");
    const auto rows = classifier::load_labeled_dataset(rc.dataset);
    classifier::FeatureConfig feature;
    feature.mode = classifier::parse_feature_mode(rc.features);
    classifier::TrainingHyper hyper;
    hyper.seed = rc.seed;
    const auto report = classifier::cross_validate_concepts(rows, rc.folds, rc.seed, {}, feature, hyper, rc.jobs);
    out << classifier::cv_report_to_json(report);
    classifier::save_model(classifier::train_concept_model(rows, {}, feature, hyper), rc.out);
    return kExitOk;
}

int cmd_enrich(const RunConfig& rc, std::ostream& out) {
    require(rc.graph, "graph");
    require(rc.model, "model");
    require(rc.corpus, "corpus");
    require(rc.out, "out");
    auto graph = kg::load_graph(rc.graph);
    const auto model = classifier::load_model(rc.model);
    const auto docs = corpus::load_corpus(rc.corpus);
    const auto results = rc.relevancy.empty() ? run_relevancy(rc, graph, docs)
                                              : relevancy::results_from_jsonl(util::read_file(rc.relevancy));
    const auto predictions = enrich::predict_concepts(docs, results, model, rc.jobs);
    const auto report = enrich::attach_concepts(graph, predictions, rc.threshold);
    const auto pairs = enrich::extract_secured_options(graph, predictions, rc.threshold);
    kg::save_graph(graph, rc.out);
    out << "predictions=" << predictions.size() << " attached=" << report.attached
        << " skipped=" << report.unmatched + report.below_threshold << " secured_pairs=" << pairs.size()
        << " entities=" << graph.entity_count() << " relations=" << graph.relation_count() << "\n";
    return kExitOk;
}

struct CheckedManifest {
    std::vector<compliance::ComplianceParseTree> trees;
    std::vector<std::vector<compliance::PolicyRule>> policies;  // per tree
    std::vector<std::vector<compliance::Finding>> findings;     // per tree
};

CheckedManifest check_file(const std::string& path, const kg::ConfigKnowledgeGraph& graph,
                           const std::vector<compliance::PathBinding>& bindings) {
    CheckedManifest m;
    m.trees = compliance::load_manifests(path);
    for (const auto& tree : m.trees) {
        m.policies.push_back(compliance::derive_policy(graph, bindings, tree.kind));
        m.findings.push_back(compliance::check(tree, m.policies.back()));
    }
    return m;
}

int cmd_check(const RunConfig& rc, std::ostream& out) {
    require(rc.graph, "graph");
    require(rc.bindings, "bindings");
    if (rc.manifests.empty()) throw UsageError("check needs at least one manifest");
    const std::string format = rc.format.empty() ? "text" : rc.format;
    if (format != "text" && format != "json") throw UsageError("check --format must be text or json");
    const auto graph = kg::load_graph(rc.graph);
    const auto bindings = compliance::load_bindings(rc.bindings);

    std::vector<CheckedManifest> checked(rc.manifests.size());
    util::parallel_for(rc.manifests.size(), rc.jobs,
                       [&](std::size_t i) { checked[i] = check_file(rc.manifests[i], graph, bindings); });

    std::size_t total = 0;
    if (format == "json") {
        nlohmann::ordered_json doc = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < checked.size(); ++i) {
            std::vector<compliance::Finding> all;
            for (const auto& f : checked[i].findings) all.insert(all.end(), f.begin(), f.end());
            total += all.size();
            doc.push_back({{"manifest", rc.manifests[i]},
                           {"findings", nlohmann::ordered_json::parse(compliance::findings_to_json(all))}});
        }
        const std::string text = doc.dump(2) + "\n";
        deliver(rc, text, out);
    } else {
        std::string text;
        for (std::size_t i = 0; i < checked.size(); ++i) {
            const bool multi = checked[i].trees.size() > 1;
            for (const auto& f : checked[i].findings) {
                total += f.size();
                std::istringstream lines(compliance::findings_to_text(f, multi));
                for (std::string line; std::getline(lines, line);)
                    text += (rc.manifests.size() > 1 ? rc.manifests[i] + ": " : "") + line + "\n";
            }
        }
        text += "findings=" + std::to_string(total) + "\n";
        deliver(rc, text, out);
    }
    return total == 0 ? kExitOk : kExitFindings;
}

int cmd_fix(const RunConfig& rc, std::ostream& out) {
    require(rc.graph, "graph");
    require(rc.bindings, "bindings");
    if (rc.manifests.size() != 1) throw UsageError("fix takes exactly one manifest");
    const auto graph = kg::load_graph(rc.graph);
    const auto bindings = compliance::load_bindings(rc.bindings);
    const auto checked = check_file(rc.manifests.front(), graph, bindings);

    std::vector<compliance::ComplianceParseTree> patched;
    std::size_t total = 0;
    std::string plans;
    for (std::size_t i = 0; i < checked.trees.size(); ++i) {
        auto result = compliance::remediate(checked.trees[i], checked.findings[i], checked.policies[i]);
        total += checked.findings[i].size();
        plans += compliance::plan_to_json(result.plan);
        patched.push_back(std::move(result.tree));
    }
    if (rc.dry_run) {
        out << plans;
        return total == 0 ? kExitOk : kExitFindings;
    }
    const auto format = compliance::parse_manifest_format(rc.format.empty() ? "yaml" : rc.format);
    deliver(rc, compliance::emit_all(patched, format), out);
    return kExitOk;
}

int cmd_stats(const RunConfig& rc, std::ostream& out) {
    require(rc.graph, "graph");
    const std::string format = rc.format.empty() ? "text" : rc.format;
    const auto stats = enrich::hotspot_stats(kg::load_graph(rc.graph));
    if (format == "json")
        deliver(rc, enrich::hotspots_to_json(stats), out);
    else if (format == "text")
        deliver(rc, enrich::hotspots_to_table(stats), out);
    else
        throw UsageError("stats --format must be text or json");
    return kExitOk;
}

int cmd_export(const RunConfig& rc, std::ostream& out) {
    require(rc.graph, "graph");
    const std::string format = rc.format.empty() ? "cypher" : rc.format;
    const auto graph = kg::load_graph(rc.graph);
    if (format == "cypher")
        deliver(rc, kg::export_cypher(graph), out);
    else if (format == "json")
        deliver(rc, kg::serialize(graph), out);
    else
        throw UsageError("export --format must be cypher or json");
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig rc;
    CLI::App app{"Security configuration knowledge graph toolkit", "kgsec"};
    app.require_subcommand(1);
    app.add_flag("-v,--verbose", rc.verbose, "Log informational messages");

    std::deque<std::pair<Options, std::function<int(const RunConfig&, std::ostream&)>>> commands;
    auto command = [&](const char* name, const char* help, auto handler) -> Options& {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", rc.config, "YAML file with default option values");
        commands.emplace_back(Options(sub), handler);
        return commands.back().first.add("jobs", rc.jobs, "Worker threads");
    };

    command("build-kg", "Build the configuration knowledge graph from a corpus", cmd_build_kg)
        .add("corpus", rc.corpus, "Corpus JSONL")
        .add("out", rc.out, "Output graph JSON");
    command("filter-docs", "Keep the documents that mention known arguments", cmd_filter_docs)
        .add("graph", rc.graph, "Graph JSON")
        .add("corpus", rc.corpus, "Documents JSONL")
        .add("out", rc.out, "Output relevancy JSONL");
    command("train", "Cross-validate and train the concept classifier", cmd_train)
        .add("dataset", rc.dataset, "Labelled sentences CSV")
        .add("out", rc.out, "Output model JSON")
        .add("folds", rc.folds, "Cross-validation folds")
        .add("seed", rc.seed, "Random seed")
        .add("features", rc.features, "word, char, word+char or nlp");
    command("enrich", "Attach security concepts and secured options to the graph", cmd_enrich)
        .add("graph", rc.graph, "Input graph JSON")
        .add("model", rc.model, "Concept model JSON")
        .add("corpus", rc.corpus, "Documents JSONL")
        .add("relevancy", rc.relevancy, "Precomputed relevancy JSONL")
        .add("threshold", rc.threshold, "Minimum classifier confidence")
        .add("out", rc.out, "Output graph JSON");
    command("check", "Report misconfigurations in manifests", cmd_check)
        .add("graph", rc.graph, "Enriched graph JSON")
        .add("bindings", rc.bindings, "Path-binding YAML")
        .add("format", rc.format, "text or json")
        .add("out", rc.out, "Report file")
        .app()
        ->add_option("manifests", rc.manifests, "Manifest files");
    auto& fix = command("fix", "Remediate a manifest", cmd_fix)
                    .add("graph", rc.graph, "Enriched graph JSON")
                    .add("bindings", rc.bindings, "Path-binding YAML")
                    .add("format", rc.format, "yaml or json")
                    .add("out", rc.out, "Output manifest");
    fix.app()->add_option("manifest", rc.manifests, "Manifest file");
    fix.app()->add_flag("--dry-run", rc.dry_run, "Print the remediation plan instead of the manifest");
    command("stats", "Hot-spot statistics per system", cmd_stats)
        .add("graph", rc.graph, "Graph JSON")
        .add("format", rc.format, "text or json")
        .add("out", rc.out, "Output file");
    command("export", "Export the graph for external tools", cmd_export)
        .add("graph", rc.graph, "Graph JSON")
        .add("format", rc.format, "cypher or json")
        .add("out", rc.out, "Output file");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }

    log::set_level(rc.verbose ? spdlog::level::info : spdlog::level::warn);
    try {
        for (auto& [options, handler] : commands) {
            if (!options.app()->parsed()) continue;
            if (!rc.config.empty()) options.apply(load_config(rc.config));
            if (rc.jobs < 1) throw UsageError("--jobs must be at least 1");
            return handler(rc, out);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << " (line " << e.line() << ", column " << e.column() << ")\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

}  // namespace kgsec::cli
