#pragma once

#include "girl/eval.hpp"

#include <set>

namespace girl::detail {

struct RelationCheck {
    bool endpoints = true;
    bool target_mult = true;
    bool source_mult = true;

    [[nodiscard]] bool ok() const { return endpoints && target_mult && source_mult; }
};

RelationCheck check_relation(const TypedModel &model, const Instance &inst, Evaluator &eval, RelationshipId r);

/// Relationships whose tuples the expression reads.
void relations_read(const typed::Set &s, std::set<RelationshipId> &out);
void relations_read(const typed::Bool &b, std::set<RelationshipId> &out);

/// Whether a multiplicity restricts counts at all.
bool constrains(const Multiplicity &m);

} // namespace girl::detail
