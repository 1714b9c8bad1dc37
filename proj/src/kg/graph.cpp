#include "kgsec/kg/graph.hpp"

#include "kgsec/error.hpp"

#include <algorithm>
#include <array>
#include <deque>

namespace kgsec::kg {

namespace {

constexpr std::array<std::string_view, 10> kKindNames{
    "System",      "Component", "Argument", "Option", "TypeSpec",
    "DefaultValue", "Description", "Statement", "Goal", "Action",
};

constexpr std::array<std::string_view, 10> kPredicateNames{
    "hasComponent", "hasArgument",  "hasOption", "hasType",   "hasDefault",
    "hasDescription", "hasStatement", "hasGoal", "hasAction", "hasSecuredOption",
};

std::string describe(const Entity& e) {
    return std::string(to_string(e.kind)) + " '" + e.label + "' (#" + std::to_string(e.id) + ")";
}

}  // namespace

std::string_view to_string(EntityKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::string_view to_string(Predicate predicate) {
    return kPredicateNames[static_cast<std::size_t>(predicate)];
}

std::optional<EntityKind> parse_entity_kind(std::string_view text) {
    for (std::size_t i = 0; i < kKindNames.size(); ++i)
        if (kKindNames[i] == text) return static_cast<EntityKind>(i);
    return std::nullopt;
}

std::optional<Predicate> parse_predicate(std::string_view text) {
    for (std::size_t i = 0; i < kPredicateNames.size(); ++i)
        if (kPredicateNames[i] == text) return static_cast<Predicate>(i);
    return std::nullopt;
}

PredicateSignature signature(Predicate predicate) {
    using K = EntityKind;
    switch (predicate) {
        case Predicate::hasComponent: return {K::System, K::Component};
        case Predicate::hasArgument: return {K::Component, K::Argument};
        case Predicate::hasOption: return {K::Argument, K::Option};
        case Predicate::hasSecuredOption: return {K::Argument, K::Option};
        case Predicate::hasType: return {K::Argument, K::TypeSpec};
        case Predicate::hasDefault: return {K::Argument, K::DefaultValue};
        case Predicate::hasDescription: return {K::Argument, K::Description};
        case Predicate::hasStatement: return {K::Argument, K::Statement};
        case Predicate::hasGoal: return {K::Argument, K::Goal};
        case Predicate::hasAction: return {K::Argument, K::Action};
    }
    return {K::System, K::System};
}

EntityId ConfigKnowledgeGraph::add_entity(EntityKind kind, std::string label, Attributes attrs,
                                          EntityId scope) {
    if (label.empty())
        throw ValidationError("entity label must be non-empty (kind " + std::string(to_string(kind)) + ")");

    IdentityKey key{kind, label, scope};
    if (auto it = identity_.find(key); it != identity_.end()) return it->second;

    Entity e;
    e.id = next_id_++;
    e.kind = kind;
    e.label = std::move(label);
    e.attrs = std::move(attrs);
    e.scope = scope;
    const EntityId id = e.id;
    restore_entity(std::move(e));
    return id;
}

void ConfigKnowledgeGraph::restore_entity(Entity e) {
    if (e.label.empty()) throw ValidationError("entity label must be non-empty");
    if (e.id == 0) throw ValidationError("entity id 0 is reserved");
    if (entities_.count(e.id)) throw ValidationError("duplicate entity id " + std::to_string(e.id));
    IdentityKey key{e.kind, e.label, e.scope};
    if (identity_.count(key))
        throw ValidationError("duplicate entity identity for " + describe(e));

    identity_.emplace(key, e.id);
    label_index_[LabelKey{e.label, e.kind}].insert(e.id);
    in_degree_[e.id] = 0;
    next_id_ = std::max(next_id_, e.id + 1);
    entities_.emplace(e.id, std::move(e));
}

bool ConfigKnowledgeGraph::add_relation(EntityId subject, Predicate predicate, EntityId object) {
    const Entity* s = try_entity(subject);
    const Entity* o = try_entity(object);
    if (!s || !o)
        throw IntegrityError("relation " + std::string(to_string(predicate)) + " references missing entity #" +
                             std::to_string(!s ? subject : object));

    const auto sig = signature(predicate);
    if (s->kind != sig.domain || o->kind != sig.range)
        throw SchemaError(std::string(to_string(predicate)) + " requires " + std::string(to_string(sig.domain)) +
                          " -> " + std::string(to_string(sig.range)) + ", got " + describe(*s) + " -> " +
                          describe(*o));

    Triple t{subject, predicate, object};
    if (triples_.count(t)) return false;

    if (subject == object || reaches(object, subject))
        throw SchemaError("relation " + describe(*s) + " " + std::string(to_string(predicate)) + " " + describe(*o) +
                          " would create a cycle");

    triples_.insert(t);
    forward_[{subject, predicate}].insert(object);
    reverse_[{object, predicate}].insert(subject);
    ++in_degree_[object];
    return true;
}

bool ConfigKnowledgeGraph::reaches(EntityId from, EntityId to) const {
    std::set<EntityId> seen{from};
    std::vector<EntityId> stack{from};
    while (!stack.empty()) {
        const EntityId cur = stack.back();
        stack.pop_back();
        if (cur == to) return true;
        for (EntityId next : successors(cur))
            if (seen.insert(next).second) stack.push_back(next);
    }
    return false;
}

std::optional<EntityId> ConfigKnowledgeGraph::find_entity(std::string_view label, EntityKind kind) const {
    auto it = label_index_.find(LabelKey{std::string(label), kind});
    if (it == label_index_.end() || it->second.empty()) return std::nullopt;
    return *it->second.begin();
}

std::optional<EntityId> ConfigKnowledgeGraph::find_entity_bfs(std::string_view label, EntityKind kind) const {
    std::set<EntityId> seen;
    std::deque<EntityId> queue;
    for (EntityId r : roots()) {
        seen.insert(r);
        queue.push_back(r);
    }
    std::optional<EntityId> best;
    while (!queue.empty()) {
        const EntityId cur = queue.front();
        queue.pop_front();
        const Entity& e = entities_.at(cur);
        if (e.kind == kind && e.label == label && (!best || cur < *best)) best = cur;
        for (EntityId next : successors(cur))
            if (seen.insert(next).second) queue.push_back(next);
    }
    return best;
}

const Entity& ConfigKnowledgeGraph::entity(EntityId id) const {
    auto it = entities_.find(id);
    if (it == entities_.end()) throw IntegrityError("no entity #" + std::to_string(id));
    return it->second;
}

const Entity* ConfigKnowledgeGraph::try_entity(EntityId id) const {
    auto it = entities_.find(id);
    return it == entities_.end() ? nullptr : &it->second;
}

std::vector<EntityId> ConfigKnowledgeGraph::objects(EntityId subject, Predicate predicate) const {
    auto it = forward_.find({subject, predicate});
    if (it == forward_.end()) return {};
    return {it->second.begin(), it->second.end()};
}

std::vector<EntityId> ConfigKnowledgeGraph::subjects(EntityId object, Predicate predicate) const {
    auto it = reverse_.find({object, predicate});
    if (it == reverse_.end()) return {};
    return {it->second.begin(), it->second.end()};
}

std::vector<EntityId> ConfigKnowledgeGraph::successors(EntityId subject) const {
    std::vector<EntityId> out;
    for (auto it = forward_.lower_bound({subject, Predicate::hasComponent});
         it != forward_.end() && it->first.first == subject; ++it)
        out.insert(out.end(), it->second.begin(), it->second.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool ConfigKnowledgeGraph::has_triple(EntityId subject, Predicate predicate, EntityId object) const {
    return triples_.count(Triple{subject, predicate, object}) != 0;
}

std::vector<EntityId> ConfigKnowledgeGraph::entities_of_kind(EntityKind kind) const {
    std::vector<EntityId> out;
    for (const auto& [id, e] : entities_)
        if (e.kind == kind) out.push_back(id);
    return out;
}

std::vector<EntityId> ConfigKnowledgeGraph::roots() const {
    std::vector<EntityId> out;
    for (const auto& [id, deg] : in_degree_)
        if (deg == 0) out.push_back(id);
    return out;
}

void ConfigKnowledgeGraph::check_integrity() const {
    std::map<AdjacencyKey, std::set<EntityId>> fwd, rev;
    std::map<EntityId, std::size_t> indeg;
    for (const auto& [id, e] : entities_) {
        if (e.id != id) throw IntegrityError("entity map key mismatch for #" + std::to_string(id));
        indeg[id] = 0;
        auto ident = identity_.find(IdentityKey{e.kind, e.label, e.scope});
        if (ident == identity_.end() || ident->second != id)
            throw IntegrityError("identity index out of sync for " + describe(e));
        auto lbl = label_index_.find(LabelKey{e.label, e.kind});
        if (lbl == label_index_.end() || !lbl->second.count(id))
            throw IntegrityError("label index out of sync for " + describe(e));
    }
    if (identity_.size() != entities_.size()) throw IntegrityError("identity index has stale entries");

    for (const Triple& t : triples_) {
        if (!contains(t.subject) || !contains(t.object))
            throw IntegrityError("dangling triple on " + std::string(to_string(t.predicate)));
        fwd[{t.subject, t.predicate}].insert(t.object);
        rev[{t.object, t.predicate}].insert(t.subject);
        ++indeg[t.object];
    }
    if (fwd != forward_ || rev != reverse_) throw IntegrityError("adjacency index out of sync");
    if (indeg != in_degree_) throw IntegrityError("in-degree index out of sync");
}

}  // namespace kgsec::kg
