#pragma once

#include "girl/diagnostic.hpp"
#include "girl/model.hpp"

#include <vector>

namespace girl {

/*
 * Static well-formedness of a parsed model. Returns every finding, errors
 * and warnings, in a deterministic traversal order (entities, then
 * relationships, then invariants). An empty result means well-formed.
 *
 *   V1 duplicate declaration name        V6 implication premise without quantifier
 *   V2 unresolved reference              V7 relationship premise, non-relationship conclusion
 *   V3 extension cycle                   V8 unbound variable
 *   V4 closure over non-homogeneous rel  V9 relationship end spans several top-level entities
 *   V5 relationship end names an undeclared entity
 *   W1 shadowed variable                 W2 identifier reserved for generated variables
 */
std::vector<Diagnostic> validate(const Model &model);

/// Does the boolean expression mention any relationship?
bool mentions_relationship(const BoolExpr &expr);

/// `x in s.r` style: membership or containment with a relationship image on either side.
bool is_relationship_membership(const BoolExpr &expr);

} // namespace girl
