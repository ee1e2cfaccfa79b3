#pragma once

#include "girl/alloy.hpp"
#include "girl/typed_model.hpp"

namespace girl {

inline constexpr int kDefaultScope = 3;

/*
 * Maps a resolved GIRL model to an Alloy module:
 *   invariant            -> fact named after its context (top-level `and` split into lines)
 *   entity               -> sig (`abstract sig`, `one sig`, `extends`)
 *   relationship         -> field on the source sig; the target multiplicity
 *                           becomes the field keyword, a bounded one becomes
 *                           `all v: Source | #v.r <op> n`, and a source
 *                           multiplicity m becomes `all t: Target | m s: Source | t in s.r`
 *   operators            -> `in`, `#`, comparisons, `^`, `+ & -`, `implies`, `and or not`
 * Relationship side constraints are collected in one fact, `multiplicities`.
 * Generated variables are v0, v1, ... skipping any user identifier.
 * Throws Error("T1") when a construct falls outside the emitted operator table.
 */
alloy::Module transpile(const TypedModel &model, int scope = kDefaultScope);

/// Smallest Alloy Int bit width able to hold `max_literal`, or nullopt when
/// Alloy's default of 4 bits (up to 7) suffices.
std::optional<int> int_bitwidth_for(std::int64_t max_literal);

} // namespace girl
