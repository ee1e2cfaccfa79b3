#pragma once

#include "girl/universe.hpp"

#include <map>
#include <optional>
#include <vector>

namespace girl {

/// Variable bindings indexed by binder slot.
using Env = std::vector<std::optional<AtomId>>;

/// Direct evaluation of resolved GIRL terms over one instance. Closures are
/// cached, so call `invalidate()` after mutating the instance's relations.
/// Throws Error("E1") on a reference to an unbound variable.
class Evaluator {
public:
    Evaluator(const TypedModel &model, const Instance &instance);

    bool holds(const typed::Bool &expr, Env &env);
    bool holds(const TypedInvariant &inv);
    AtomSet value(const typed::Set &term, const Env &env);
    std::int64_t value(const typed::Int &term, const Env &env);

    void invalidate() { closures_.clear(); }

private:
    const std::vector<AtomSet> &closure_of(const typed::Image &img);

    const TypedModel &model_;
    const Instance &inst_;
    std::map<std::vector<RelationshipId>, std::vector<AtomSet>> closures_;
};

/// Transitive closure of a relation given as rows (row[s] = successors of s).
std::vector<AtomSet> transitive_closure(std::vector<AtomSet> rows);

} // namespace girl
