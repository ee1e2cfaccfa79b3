#pragma once

#include "girl/model.hpp"

#include <cstdint>
#include <random>
#include <set>
#include <utility>

namespace support {

using Rng = std::mt19937_64;

/// Structurally well-formed model exercising every node kind. Names come
/// from disjoint pools (entities `E`, relationships `r`, variables `x`), and
/// variables only occur under their binder, so parse(print(m)) == m holds.
/// The result need not pass validation.
girl::Model random_model(Rng &rng);

/// Small model that passes validation, sized so the brute-force oracle can
/// decide it at scope 2: at most two top-level entities, three entities in
/// all, two relationships and two invariants.
girl::Model random_valid_model(Rng &rng);

/// Random relation over `n` atoms.
std::set<std::pair<int, int>> random_relation(Rng &rng, int n);

} // namespace support
