#pragma once

#include "girl/atom_set.hpp"
#include "girl/typed_model.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace girl {

/// Upper bound on atoms per top-level entity. Singletons are always exactly 1.
struct Scope {
    int default_bound = 3;
    std::map<std::string, int> per_entity; // top-level entities only

    [[nodiscard]] int bound_for(const TypedModel &model, EntityId root) const;
};

struct Atom {
    std::string name;
    EntityId entity; // most specific entity
    EntityId root;

    friend bool operator==(const Atom &, const Atom &) = default;
};

struct Universe {
    std::vector<Atom> atoms;
    std::vector<AtomSet> extent; // per entity, descendants included

    [[nodiscard]] std::optional<AtomId> find(std::string_view name) const;

    /// Computes extents from the atoms' entities.
    static Universe from_atoms(const TypedModel &model, std::vector<Atom> atoms);
};

/// `sizes[e]` is the number of atoms in entity e including its descendants
/// (missing entries are 0). Atoms are named `Root$i`; within a parent, the
/// children take consecutive blocks in declaration order and the remaining
/// atoms belong to the parent itself.
/// Errors: U1 singleton size != 1, U2 size above the scope bound,
/// U3 children sizes inconsistent with the parent's.
Universe build_universe(const TypedModel &model, const Scope &scope, const std::vector<std::size_t> &sizes);

/// Name of a relationship in instances, reports and DOT output: its plain
/// name, or `<source>.<name>` when another relationship shares the name.
std::string relation_key(const TypedModel &model, RelationshipId r);

struct Instance {
    Universe universe;
    std::vector<std::vector<AtomSet>> relations; // [relationship][source atom] -> targets

    /// An instance over `universe` with every relationship empty.
    static Instance empty(const TypedModel &model, Universe universe);

    [[nodiscard]] std::vector<std::pair<AtomId, AtomId>> tuples(RelationshipId r) const;
    friend bool operator==(const Instance &a, const Instance &b)
    {
        return a.universe.atoms == b.universe.atoms && a.relations == b.relations;
    }
};

} // namespace girl
