#pragma once

#include "kgsec/classifier/model_io.hpp"
#include "kgsec/corpus/document.hpp"
#include "kgsec/kg/graph.hpp"
#include "kgsec/relevancy/relevancy.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace kgsec::enrich {

inline constexpr double kDefaultThreshold = 0.5;

struct ConceptPrediction {
    std::string doc_id;
    std::size_t sentence_index = 0;
    std::string text;
    std::string label;                   // statement, goal or action
    std::vector<std::string> arguments;  // matched argument surface forms
    double confidence = 0;

    bool operator==(const ConceptPrediction&) const = default;
};

/// Classifies every sentence of the relevant documents that mentions an
/// argument and keeps the non-"other" predictions. Output follows document
/// order, then sentence order.
std::vector<ConceptPrediction> predict_concepts(const std::vector<corpus::RawDocument>& docs,
                                                const std::vector<relevancy::RelevancyResult>& results,
                                                const classifier::ConceptModel& model, unsigned jobs = 1);

/// Argument entities carrying this label, sorted by id.
std::vector<kg::EntityId> argument_entities(const kg::ConfigKnowledgeGraph& graph, std::string_view label);

struct AttachReport {
    std::size_t attached = 0;
    std::size_t below_threshold = 0;
    std::size_t unmatched = 0;
    std::size_t edges_added = 0;
};

/// Adds one Statement/Goal/Action entity per prediction (labelled with the
/// sentence text, provenance in attrs) and links it from every matched
/// argument. Predictions below `threshold` or without a known argument are
/// skipped; the latter with a warning. Repeating the call changes nothing.
AttachReport attach_concepts(kg::ConfigKnowledgeGraph& graph, std::span<const ConceptPrediction> predictions,
                             double threshold = kDefaultThreshold);

struct SecuredPair {
    kg::EntityId argument = 0;
    kg::EntityId option = 0;

    auto operator<=>(const SecuredPair&) const = default;
};

/// True when the sentence contains a negation cue such as "not" or "avoid".
bool has_negation(std::string_view sentence);

/// For statement and action predictions, every token that equals an Option
/// label of a matched argument yields a (argument, option) pair and a
/// hasSecuredOption edge. Negated sentences produce no pairs. Result sorted, unique.
std::vector<SecuredPair> extract_secured_options(kg::ConfigKnowledgeGraph& graph,
                                                 std::span<const ConceptPrediction> predictions,
                                                 double threshold = kDefaultThreshold);

struct SystemHotspots {
    std::size_t total = 0;
    std::size_t unsecured = 0;  // hot-spots: default not among the secured options
    std::size_t secured_by_default = 0;

    bool operator==(const SystemHotspots&) const = default;
};

using HotspotStats = std::map<std::string, SystemHotspots>;

HotspotStats hotspot_stats(const kg::ConfigKnowledgeGraph& graph);
std::string hotspots_to_json(const HotspotStats& stats);
std::string hotspots_to_table(const HotspotStats& stats);

}  // namespace kgsec::enrich
