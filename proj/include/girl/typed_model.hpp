#pragma once

// Resolved form of a GIRL model: every entity, relationship and variable
// reference is bound to its declaration or quantifier. This is the input
// of both the Alloy translation and the model finder.

#include "girl/box.hpp"
#include "girl/model.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace girl {

using EntityId = std::size_t;
using RelationshipId = std::size_t;

namespace typed {

struct Set;
struct Bool;

struct EntitySet {
    EntityId entity;
};

/// Reference to a quantified variable. `slot` is the binder's nesting depth
/// (its index in the evaluation environment); `binder` identifies the
/// quantifier by its left-to-right position within the invariant.
struct Var {
    std::string name;
    std::size_t slot;
    std::size_t binder;
};

struct SetOp {
    SetOpKind op;
    Box<Set> lhs;
    Box<Set> rhs;
};

/// Image through the union of all relationships sharing the name.
struct Image {
    std::string rel_name;
    std::vector<RelationshipId> rels;
    bool closure;
    Box<Set> from;
};

struct Set {
    std::variant<EntitySet, Var, SetOp, Image> node;
};

struct Literal {
    std::int64_t value;
};

struct Card {
    Set set;
};

struct Int {
    std::variant<Literal, Card> node;
};

struct Subset {
    Set inner;
    Set outer;
};

struct Member {
    Var elem;
    Set set;
};

struct Compare {
    RelOp op;
    Int lhs;
    Int rhs;
};

struct Logic {
    LogicKind op;
    std::vector<Bool> args;
};

struct Negation {
    Box<Bool> arg;
};

struct Quant {
    Quantifier quant;
    std::string var;
    std::size_t slot;
    std::size_t binder;
    Set domain;
    Box<Bool> body;
};

struct Implies {
    Box<Bool> premise;
    Box<Bool> conclusion;
};

struct Bool {
    std::variant<Subset, Member, Compare, Logic, Negation, Quant, Implies> node;
};

/// True when the set's value depends only on the universe (no relationship images).
bool is_static(const Set &s);

} // namespace typed

struct TypedEntity {
    std::string name;
    EntityKind kind = EntityKind::Plain;
    std::optional<EntityId> parent;
    std::vector<EntityId> children; // declaration order
    EntityId root = 0;
};

struct TypedRelationship {
    std::string name;
    typed::Set source;
    typed::Set target;
    Multiplicity source_mult;
    Multiplicity target_mult;
    // Top-level entities bounding each end; every tuple lies in
    // atoms(source_root) x atoms(target_root).
    EntityId source_root = 0;
    EntityId target_root = 0;
};

struct TypedInvariant {
    std::string context;
    typed::Bool body;
};

struct TypedModel {
    Model source;
    std::vector<TypedEntity> entities;
    std::vector<TypedRelationship> relationships;
    std::vector<TypedInvariant> invariants;
    std::vector<EntityId> roots; // top-level entities, declaration order

    [[nodiscard]] std::optional<EntityId> find_entity(std::string_view name) const;
    [[nodiscard]] bool is_ancestor_or_self(EntityId ancestor, EntityId e) const;
    /// Number of binders (nesting depth) needed to evaluate any invariant.
    [[nodiscard]] std::size_t max_depth() const { return max_depth_; }

    std::size_t max_depth_ = 0;
};

/// Binds names in a validated model. Throws InternalError when a reference
/// cannot be resolved (the model was not validated first).
TypedModel resolve(const Model &model);

} // namespace girl
