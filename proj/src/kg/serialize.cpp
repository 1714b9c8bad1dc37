#include "kgsec/kg/serialize.hpp"

#include "kgsec/error.hpp"
#include "kgsec/util/files.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>

namespace kgsec::kg {

using nlohmann::ordered_json;

namespace {

std::vector<Triple> sorted_for_output(const ConfigKnowledgeGraph& graph) {
    std::vector<Triple> out(graph.triples().begin(), graph.triples().end());
    std::sort(out.begin(), out.end(), [](const Triple& a, const Triple& b) {
        return std::tuple(a.subject, to_string(a.predicate), a.object) <
               std::tuple(b.subject, to_string(b.predicate), b.object);
    });
    return out;
}

const ordered_json& require(const ordered_json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ValidationError(where + ": missing field '" + key + "'");
    return *it;
}

bool is_identifier(std::string_view key) {
    if (key.empty() || std::isdigit(static_cast<unsigned char>(key.front()))) return false;
    return std::all_of(key.begin(), key.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string property_key(std::string_view key) {
    if (is_identifier(key)) return std::string(key);
    std::string out = "`";
    for (char c : key) {
        if (c == '`') out += '`';
        out += c;
    }
    return out + "`";
}

}  // namespace

std::string serialize(const ConfigKnowledgeGraph& graph) {
    ordered_json doc;
    doc["entities"] = ordered_json::array();
    for (const auto& [id, e] : graph.entities()) {
        ordered_json je;
        je["id"] = id;
        je["kind"] = std::string(to_string(e.kind));
        je["label"] = e.label;
        je["attrs"] = ordered_json::object();
        for (const auto& [k, v] : e.attrs) je["attrs"][k] = v;
        if (e.scope != kGlobalScope) je["scope"] = e.scope;
        doc["entities"].push_back(std::move(je));
    }
    doc["relations"] = ordered_json::array();
    for (const Triple& t : sorted_for_output(graph)) {
        ordered_json jr;
        jr["s"] = t.subject;
        jr["p"] = std::string(to_string(t.predicate));
        jr["o"] = t.object;
        doc["relations"].push_back(std::move(jr));
    }
    return doc.dump(2) + "\n";
}

ConfigKnowledgeGraph deserialize(std::string_view text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = util::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError(std::string("malformed graph file: ") + e.what(), line, col);
    }
    if (!doc.is_object()) throw ValidationError("graph file must be a JSON object");

    ConfigKnowledgeGraph graph;
    const auto& entities = require(doc, "entities", "graph file");
    const auto& relations = require(doc, "relations", "graph file");
    if (!entities.is_array() || !relations.is_array())
        throw ValidationError("graph file: 'entities' and 'relations' must be arrays");

    std::size_t index = 0;
    try {
        for (const auto& je : entities) {
            const std::string where = "entity[" + std::to_string(index++) + "]";
            Entity e;
            e.id = require(je, "id", where).get<EntityId>();
            const auto kind = parse_entity_kind(require(je, "kind", where).get<std::string>());
            if (!kind) throw ValidationError(where + ": unknown kind");
            e.kind = *kind;
            e.label = require(je, "label", where).get<std::string>();
            if (auto it = je.find("attrs"); it != je.end())
                for (const auto& [k, v] : it->items()) e.attrs[k] = v.get<std::string>();
            if (auto it = je.find("scope"); it != je.end()) e.scope = it->get<EntityId>();
            graph.restore_entity(std::move(e));
        }
        index = 0;
        for (const auto& jr : relations) {
            const std::string where = "relation[" + std::to_string(index++) + "]";
            const auto pred = parse_predicate(require(jr, "p", where).get<std::string>());
            if (!pred) throw ValidationError(where + ": unknown predicate");
            graph.add_relation(require(jr, "s", where).get<EntityId>(), *pred, require(jr, "o", where).get<EntityId>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("graph file has a field of the wrong type: ") + e.what());
    }
    return graph;
}

ConfigKnowledgeGraph load_graph(const std::filesystem::path& path) { return deserialize(util::read_file(path)); }

void save_graph(const ConfigKnowledgeGraph& graph, const std::filesystem::path& path) {
    util::write_file(path, serialize(graph));
}

std::string cypher_quote(std::string_view text) {
    std::string out = "'";
    for (char c : text) {
        switch (c) {
            case '\'': out += "\\'"; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out + "'";
}

std::string export_cypher(const ConfigKnowledgeGraph& graph) {
    std::string out;
    for (const auto& [id, e] : graph.entities()) {
        out += "CREATE (:" + std::string(to_string(e.kind)) + " {id: " + std::to_string(id) +
               ", label: " + cypher_quote(e.label);
        for (const auto& [k, v] : e.attrs) {
            if (k == "id" || k == "label") continue;
            out += ", " + property_key(k) + ": " + cypher_quote(v);
        }
        out += "});\n";
    }
    for (const Triple& t : sorted_for_output(graph)) {
        out += "MATCH (a {id: " + std::to_string(t.subject) + "}), (b {id: " + std::to_string(t.object) +
               "}) CREATE (a)-[:" + std::string(to_string(t.predicate)) + "]->(b);\n";
    }
    return out;
}

}  // namespace kgsec::kg
