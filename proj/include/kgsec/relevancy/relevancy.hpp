#pragma once

#include "kgsec/corpus/document.hpp"
#include "kgsec/kg/graph.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace kgsec::relevancy {

/// Exact, case-sensitive argument surface forms mapped to their Argument entities.
class ArgumentLexicon {
public:
    /// Throws ValidationError when the graph has no Argument entity.
    static ArgumentLexicon from_graph(const kg::ConfigKnowledgeGraph& graph);

    bool contains(std::string_view surface) const { return entries_.find(surface) != entries_.end(); }
    /// Entity ids for a surface form (sorted); empty when absent.
    const std::vector<kg::EntityId>& ids(std::string_view surface) const;
    std::size_t size() const { return entries_.size(); }
    const std::map<std::string, std::vector<kg::EntityId>, std::less<>>& entries() const { return entries_; }

    void add(std::string surface, kg::EntityId id);

private:
    std::map<std::string, std::vector<kg::EntityId>, std::less<>> entries_;
};

inline ArgumentLexicon build_lexicon(const kg::ConfigKnowledgeGraph& graph) {
    return ArgumentLexicon::from_graph(graph);
}

struct Match {
    std::size_t sentence_index = 0;
    std::string surface;
    kg::EntityId argument = 0;

    bool operator==(const Match&) const = default;
};

struct RelevancyResult {
    std::string doc_id;
    bool relevant = false;
    std::vector<Match> matches;

    bool operator==(const RelevancyResult&) const = default;
};

/// Lexicon members among the sentence's tokens, in order of first occurrence, without duplicates.
std::vector<std::string> label_sentence(std::string_view sentence, const ArgumentLexicon& lexicon);

RelevancyResult classify_document(const corpus::RawDocument& doc, const ArgumentLexicon& lexicon);

/// Classifies documents on up to `jobs` threads; results come back in input order.
std::vector<RelevancyResult> classify_documents(const std::vector<corpus::RawDocument>& docs,
                                                const ArgumentLexicon& lexicon, unsigned jobs = 1);

std::string result_to_json_line(const RelevancyResult& result);
std::vector<RelevancyResult> results_from_jsonl(std::string_view text);

}  // namespace kgsec::relevancy
