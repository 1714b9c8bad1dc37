#include "kgsec/relevancy/relevancy.hpp"

#include "kgsec/corpus/sentences.hpp"
#include "kgsec/error.hpp"
#include "kgsec/text/tokenize.hpp"
#include "kgsec/util/parallel.hpp"

#include <json.hpp>

#include <algorithm>

namespace kgsec::relevancy {

using nlohmann::ordered_json;

ArgumentLexicon ArgumentLexicon::from_graph(const kg::ConfigKnowledgeGraph& graph) {
    ArgumentLexicon lexicon;
    for (const auto id : graph.entities_of_kind(kg::EntityKind::Argument))
        lexicon.add(graph.entity(id).label, id);
    if (lexicon.size() == 0) throw ValidationError("cannot build a lexicon from a graph without Argument entities");
    return lexicon;
}

void ArgumentLexicon::add(std::string surface, kg::EntityId id) {
    auto& ids = entries_[std::move(surface)];
    ids.insert(std::lower_bound(ids.begin(), ids.end(), id), id);
}

const std::vector<kg::EntityId>& ArgumentLexicon::ids(std::string_view surface) const {
    static const std::vector<kg::EntityId> kNone;
    auto it = entries_.find(surface);
    return it == entries_.end() ? kNone : it->second;
}

std::vector<std::string> label_sentence(std::string_view sentence, const ArgumentLexicon& lexicon) {
    std::vector<std::string> matched;
    for (auto& tok : text::tokenize_preserving(sentence))
        if (lexicon.contains(tok) && std::find(matched.begin(), matched.end(), tok) == matched.end())
            matched.push_back(std::move(tok));
    return matched;
}

RelevancyResult classify_document(const corpus::RawDocument& doc, const ArgumentLexicon& lexicon) {
    RelevancyResult result;
    result.doc_id = doc.id;
    for (const auto& sentence : corpus::split_sentences(corpus::document_text(doc), doc.id))
        for (const auto& surface : label_sentence(sentence.text, lexicon))
            for (const auto id : lexicon.ids(surface)) result.matches.push_back({sentence.index, surface, id});
    result.relevant = !result.matches.empty();
    return result;
}

std::vector<RelevancyResult> classify_documents(const std::vector<corpus::RawDocument>& docs,
                                                const ArgumentLexicon& lexicon, unsigned jobs) {
    std::vector<RelevancyResult> results(docs.size());
    util::parallel_for(docs.size(), jobs, [&](std::size_t i) { results[i] = classify_document(docs[i], lexicon); });
    return results;
}

std::string result_to_json_line(const RelevancyResult& result) {
    ordered_json j;
    j["doc_id"] = result.doc_id;
    j["relevant"] = result.relevant;
    j["matches"] = ordered_json::array();
    for (const auto& m : result.matches)
        j["matches"].push_back({{"sentence", m.sentence_index}, {"argument", m.surface}, {"entity", m.argument}});
    return j.dump();
}

std::vector<RelevancyResult> results_from_jsonl(std::string_view text) {
    std::vector<RelevancyResult> out;
    std::size_t pos = 0, lineno = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const auto line = text::trim(text.substr(pos, nl - pos));
        ++lineno;
        pos = nl + 1;
        if (line.empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            RelevancyResult r;
            r.doc_id = j.at("doc_id").get<std::string>();
            r.relevant = j.at("relevant").get<bool>();
            for (const auto& m : j.at("matches"))
                r.matches.push_back({m.at("sentence").get<std::size_t>(), m.at("argument").get<std::string>(),
                                     m.at("entity").get<kg::EntityId>()});
            out.push_back(std::move(r));
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("malformed relevancy line: ") + e.what(), lineno, e.byte);
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError("relevancy line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace kgsec::relevancy
