#include "kgsec/enrich/enrich.hpp"

#include "kgsec/corpus/sentences.hpp"
#include "kgsec/text/tokenize.hpp"
#include "kgsec/util/log.hpp"
#include "kgsec/util/parallel.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <set>

namespace kgsec::enrich {

using kg::EntityId;
using kg::EntityKind;
using kg::Predicate;

namespace {

std::optional<std::pair<EntityKind, Predicate>> concept_kind(std::string_view label) {
    if (label == "statement") return std::pair{EntityKind::Statement, Predicate::hasStatement};
    if (label == "goal") return std::pair{EntityKind::Goal, Predicate::hasGoal};
    if (label == "action") return std::pair{EntityKind::Action, Predicate::hasAction};
    return std::nullopt;
}

}  // namespace

std::vector<ConceptPrediction> predict_concepts(const std::vector<corpus::RawDocument>& docs,
                                                const std::vector<relevancy::RelevancyResult>& results,
                                                const classifier::ConceptModel& model, unsigned jobs) {
    std::map<std::string_view, const relevancy::RelevancyResult*> by_doc;
    for (const auto& r : results)
        if (r.relevant) by_doc.emplace(r.doc_id, &r);

    std::vector<std::vector<ConceptPrediction>> per_doc(docs.size());
    util::parallel_for(docs.size(), jobs, [&](std::size_t d) {
        auto it = by_doc.find(docs[d].id);
        if (it == by_doc.end()) return;
        std::map<std::size_t, std::vector<std::string>> surfaces;
        for (const auto& m : it->second->matches) {
            auto& s = surfaces[m.sentence_index];
            if (std::find(s.begin(), s.end(), m.surface) == s.end()) s.push_back(m.surface);
        }
        const auto sentences = corpus::split_sentences(corpus::document_text(docs[d]), docs[d].id);
        for (const auto& [index, args] : surfaces) {
            if (index >= sentences.size()) continue;
            const auto prediction = model.classify(sentences[index].text);
            if (prediction.label == "other") continue;
            per_doc[d].push_back({docs[d].id, index, sentences[index].text, prediction.label, args,
                                  prediction.confidence});
        }
    });

    std::vector<ConceptPrediction> out;
    for (auto& v : per_doc) std::move(v.begin(), v.end(), std::back_inserter(out));
    return out;
}

std::vector<EntityId> argument_entities(const kg::ConfigKnowledgeGraph& graph, std::string_view label) {
    std::vector<EntityId> out;
    if (!graph.find_entity(label, EntityKind::Argument)) return out;
    for (EntityId id : graph.entities_of_kind(EntityKind::Argument))
        if (graph.entity(id).label == label) out.push_back(id);
    return out;
}

AttachReport attach_concepts(kg::ConfigKnowledgeGraph& graph, std::span<const ConceptPrediction> predictions,
                             double threshold) {
    AttachReport report;
    for (const auto& p : predictions) {
        const auto kind = concept_kind(p.label);
        if (!kind) continue;
        if (p.confidence < threshold) {
            ++report.below_threshold;
            continue;
        }
        std::vector<EntityId> targets;
        for (const auto& surface : p.arguments)
            for (EntityId id : argument_entities(graph, surface)) targets.push_back(id);
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        if (targets.empty()) {
            log::warn("skipping {} sentence {}#{}: no matched argument in the graph", p.label, p.doc_id,
                      p.sentence_index);
            ++report.unmatched;
            continue;
        }
        const EntityId concept_id =
            graph.add_entity(kind->first, p.text,
                             {{"doc_id", p.doc_id},
                              {"sentence_index", std::to_string(p.sentence_index)},
                              {"confidence", fmt::format("{:.6f}", p.confidence)}});
        for (EntityId arg : targets)
            if (graph.add_relation(arg, kind->second, concept_id)) ++report.edges_added;
        ++report.attached;
    }
    return report;
}

bool has_negation(std::string_view sentence) {
    static const std::set<std::string, std::less<>> cues{"not",   "never",  "no",      "avoid",    "don't",
                                                         "doesn't", "cannot", "shouldn't", "mustn't", "without"};
    for (const auto& tok : text::tokenize_preserving(sentence)) {
        const auto lower = text::to_lower(tok);
        if (cues.count(lower) || lower.ends_with("n't")) return true;
    }
    return false;
}

std::vector<SecuredPair> extract_secured_options(kg::ConfigKnowledgeGraph& graph,
                                                 std::span<const ConceptPrediction> predictions,
                                                 double threshold) {
    std::set<SecuredPair> pairs;
    for (const auto& p : predictions) {
        if (p.label != "statement" && p.label != "action") continue;
        if (p.confidence < threshold) continue;
        if (has_negation(p.text)) {
            log::info("negated {} in {}#{} left for manual review", p.label, p.doc_id, p.sentence_index);
            continue;
        }
        const auto tokens = text::tokenize_preserving(p.text);
        const std::set<std::string_view> token_set(tokens.begin(), tokens.end());
        for (const auto& surface : p.arguments) {
            for (EntityId arg : argument_entities(graph, surface)) {
                for (EntityId opt : graph.objects(arg, Predicate::hasOption))
                    if (token_set.count(graph.entity(opt).label)) pairs.insert({arg, opt});
            }
        }
    }
    for (const auto& pair : pairs) graph.add_relation(pair.argument, Predicate::hasSecuredOption, pair.option);
    return {pairs.begin(), pairs.end()};
}

HotspotStats hotspot_stats(const kg::ConfigKnowledgeGraph& graph) {
    HotspotStats stats;
    for (EntityId sys : graph.entities_of_kind(EntityKind::System)) {
        auto& s = stats[graph.entity(sys).label];
        std::set<EntityId> args;
        for (EntityId comp : graph.objects(sys, Predicate::hasComponent))
            for (EntityId arg : graph.objects(comp, Predicate::hasArgument)) args.insert(arg);
        for (EntityId arg : args) {
            ++s.total;
            const auto secured = graph.objects(arg, Predicate::hasSecuredOption);
            const auto defaults = graph.objects(arg, Predicate::hasDefault);
            if (secured.empty() || defaults.empty()) continue;
            std::set<std::string_view> secured_labels;
            for (EntityId o : secured) secured_labels.insert(graph.entity(o).label);
            const bool safe = std::any_of(defaults.begin(), defaults.end(), [&](EntityId d) {
                return secured_labels.count(graph.entity(d).label) != 0;
            });
            ++(safe ? s.secured_by_default : s.unsecured);
        }
    }
    return stats;
}

std::string hotspots_to_json(const HotspotStats& stats) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [system, s] : stats)
        j[system] = {{"total", s.total}, {"unsecured", s.unsecured}, {"secured_by_default", s.secured_by_default}};
    return j.dump(2) + "\n";
}

std::string hotspots_to_table(const HotspotStats& stats) {
    std::size_t width = std::string_view("system").size();
    for (const auto& [system, s] : stats) width = std::max(width, system.size());
    std::string out = fmt::format("{:<{}}  {:>7}  {:>9}  {:>18}\n", "system", width, "total", "unsecured",
                                  "secured_by_default");
    for (const auto& [system, s] : stats)
        out += fmt::format("{:<{}}  {:>7}  {:>9}  {:>18}\n", system, width, s.total, s.unsecured,
                           s.secured_by_default);
    return out;
}

}  // namespace kgsec::enrich
