#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace kgsec::kg {

using EntityId = std::uint64_t;

/// Scope value for entities whose identity is global (systems, concepts).
inline constexpr EntityId kGlobalScope = 0;

enum class EntityKind {
    System,
    Component,
    Argument,
    Option,
    TypeSpec,
    DefaultValue,
    Description,
    Statement,
    Goal,
    Action,
};

enum class Predicate {
    hasComponent,
    hasArgument,
    hasOption,
    hasType,
    hasDefault,
    hasDescription,
    hasStatement,
    hasGoal,
    hasAction,
    hasSecuredOption,
};

std::string_view to_string(EntityKind kind);
std::string_view to_string(Predicate predicate);
std::optional<EntityKind> parse_entity_kind(std::string_view text);
std::optional<Predicate> parse_predicate(std::string_view text);

/// Domain and range kinds allowed for a predicate.
struct PredicateSignature {
    EntityKind domain;
    EntityKind range;
};
PredicateSignature signature(Predicate predicate);

using Attributes = std::map<std::string, std::string>;

struct Entity {
    EntityId id = 0;
    EntityKind kind = EntityKind::System;
    std::string label;
    Attributes attrs;
    // Parent context used for upsert identity; kGlobalScope for global entities.
    EntityId scope = kGlobalScope;

    bool operator==(const Entity&) const = default;
};

struct Triple {
    EntityId subject = 0;
    Predicate predicate = Predicate::hasComponent;
    EntityId object = 0;

    auto operator<=>(const Triple&) const = default;
};

/// Typed property graph of configuration knowledge.
///
/// Single-writer during construction; every const member is safe to call
/// concurrently once construction is finished.
class ConfigKnowledgeGraph {
public:
    /// Idempotent upsert keyed by (kind, label, scope). Throws ValidationError on an empty label.
    EntityId add_entity(EntityKind kind, std::string label, Attributes attrs = {},
                        EntityId scope = kGlobalScope);

    /// Returns true when the triple was newly inserted, false for a duplicate.
    /// Throws IntegrityError for dangling endpoints and SchemaError for
    /// domain/range violations or an edge that would close a cycle.
    bool add_relation(EntityId subject, Predicate predicate, EntityId object);

    /// Index lookup of the entity with exactly this (label, kind). When several
    /// scoped entities share the label the smallest id is returned.
    std::optional<EntityId> find_entity(std::string_view label, EntityKind kind) const;

    /// Breadth-first traversal from every root (entities without incoming
    /// edges), neighbours visited in id order. Agrees with find_entity.
    std::optional<EntityId> find_entity_bfs(std::string_view label, EntityKind kind) const;

    const Entity& entity(EntityId id) const;
    const Entity* try_entity(EntityId id) const;
    bool contains(EntityId id) const { return entities_.count(id) != 0; }

    /// Sorted objects of (subject, predicate, *).
    std::vector<EntityId> objects(EntityId subject, Predicate predicate) const;
    /// Sorted subjects of (*, predicate, object).
    std::vector<EntityId> subjects(EntityId object, Predicate predicate) const;
    /// All out-neighbours over any predicate, sorted and deduplicated.
    std::vector<EntityId> successors(EntityId subject) const;
    bool has_triple(EntityId subject, Predicate predicate, EntityId object) const;

    std::vector<EntityId> entities_of_kind(EntityKind kind) const;
    /// Entities with no incoming edge, sorted by id.
    std::vector<EntityId> roots() const;

    const std::map<EntityId, Entity>& entities() const { return entities_; }
    const std::set<Triple>& triples() const { return triples_; }
    std::size_t entity_count() const { return entities_.size(); }
    std::size_t relation_count() const { return triples_.size(); }
    bool empty() const { return entities_.empty(); }

    /// Re-derives every index from the primary stores and compares; throws
    /// IntegrityError on any inconsistency or dangling triple.
    void check_integrity() const;

    /// Inserts a fully specified entity (used when loading from file).
    void restore_entity(Entity entity);

    bool operator==(const ConfigKnowledgeGraph& other) const {
        return entities_ == other.entities_ && triples_ == other.triples_;
    }

private:
    bool reaches(EntityId from, EntityId to) const;

    using IdentityKey = std::tuple<EntityKind, std::string, EntityId>;
    using LabelKey = std::pair<std::string, EntityKind>;
    using AdjacencyKey = std::pair<EntityId, Predicate>;

    std::map<EntityId, Entity> entities_;
    std::set<Triple> triples_;
    std::map<AdjacencyKey, std::set<EntityId>> forward_;
    std::map<AdjacencyKey, std::set<EntityId>> reverse_;
    std::map<IdentityKey, EntityId> identity_;
    std::map<LabelKey, std::set<EntityId>, std::less<>> label_index_;
    std::map<EntityId, std::size_t> in_degree_;
    EntityId next_id_ = 1;
};

}  // namespace kgsec::kg
