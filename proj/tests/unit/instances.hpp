#pragma once

#include "girl/universe.hpp"

#include <initializer_list>
#include <string>
#include <tuple>
#include <utility>

namespace testing_util {

struct TupleSpec {
    const char *rel;
    const char *source;
    const char *target;
};

/// Builds an instance from entity sizes and tuples named by relation key and atom name.
inline girl::Instance make_instance(const girl::TypedModel &tm,
                                    std::initializer_list<std::pair<const char *, std::size_t>> sizes,
                                    std::initializer_list<TupleSpec> tuples = {})
{
    std::vector<std::size_t> per_entity(tm.entities.size(), 0);
    for (auto [name, n] : sizes)
        per_entity[*tm.find_entity(name)] = n;
    girl::Scope wide;
    wide.default_bound = 8;
    girl::Instance inst = girl::Instance::empty(tm, girl::build_universe(tm, wide, per_entity));
    for (const auto &t : tuples) {
        std::size_t r = 0;
        while (girl::relation_key(tm, r) != t.rel)
            ++r;
        inst.relations[r][*inst.universe.find(t.source)].set(*inst.universe.find(t.target));
    }
    return inst;
}

} // namespace testing_util
