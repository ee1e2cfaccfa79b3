#pragma once

#include "girl/universe.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace girl {

inline constexpr std::uint64_t kDefaultMaxCandidates = 10'000'000;

struct SearchOptions {
    std::uint64_t max_candidates = kDefaultMaxCandidates;
};

enum class Status { Sat, Unsat };

struct Verdict {
    Status status = Status::Unsat;
    std::optional<Instance> witness;
    std::uint64_t explored = 0;
};

struct Enumeration {
    std::vector<Instance> instances;
    std::uint64_t explored = 0;
};

/*
 * Search order: universes by total atom count, then by per-entity sizes in
 * declaration order, each ascending; relations in declaration order, one
 * source atom at a time, each row's target set in binary-counting order.
 * Constraints are checked as soon as every relationship they read is fixed.
 * Throws Error("S1") once more than `max_candidates` candidates were tried.
 */
Verdict solve(const TypedModel &model, const Scope &scope, const SearchOptions &options = {});

/// Up to `limit` satisfying instances, one per isomorphism class under
/// atom renaming within each entity, in search order.
Enumeration enumerate(const TypedModel &model, const Scope &scope, std::size_t limit,
                      const SearchOptions &options = {});

struct ConstraintVerdict {
    enum class Kind { Invariant, Multiplicity, Structure };
    Kind kind;
    std::string label;
    bool holds;
};

std::string_view to_string(ConstraintVerdict::Kind k);

/// Per-constraint verdicts: structure (singletons, abstract coverage,
/// relationship endpoints), then multiplicities, then invariants.
std::vector<ConstraintVerdict> check_instance(const TypedModel &model, const Instance &instance);

/// True when no permutation of atoms within an entity yields a
/// lexicographically smaller instance.
bool is_canonical(const Instance &instance);

} // namespace girl
