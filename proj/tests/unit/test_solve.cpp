#include "doctest.h"

#include "corpus.hpp"
#include "properties.hpp"

#include "girl/solve.hpp"

using namespace girl;

namespace {

Scope scope_of(int n)
{
    Scope s;
    s.default_bound = n;
    return s;
}

TypedModel typed_text(const std::string &text) { return support::typed(support::parse_text(text)); }

TypedModel typed_file(const std::string &relative)
{
    return support::typed(support::load_model(support::path_in_repo(relative)));
}

bool all_hold(const TypedModel &tm, const Instance &inst)
{
    for (const auto &v : check_instance(tm, inst))
        if (!v.holds)
            return false;
    return true;
}

} // namespace

TEST_SUITE("solve")
{
    TEST_CASE("graduate-course model is sat at scope 3")
    {
        auto tm = typed_file("models/gradcourse.girl");
        Verdict v = solve(tm, scope_of(3));
        CHECK(v.status == Status::Sat);
        REQUIRE(v.witness.has_value());
        CHECK(all_hold(tm, *v.witness));
        CHECK(v.explored > 0);
    }

    TEST_CASE("contradiction is unsat at every scope")
    {
        auto tm = typed_text("entity E; inv c { #E >= 1 and #E = 0 }");
        for (int s = 1; s <= 4; ++s) {
            Verdict v = solve(tm, scope_of(s));
            CHECK(v.status == Status::Unsat);
            CHECK_FALSE(v.witness.has_value());
        }
    }

    TEST_CASE("under-constrained file system admits a directory cycle")
    {
        Model m = support::load_model(support::path_in_repo("models/filesystem_base.girl"));
        m.invariants.push_back(support::parse_text("entity Dir; rel contents: Dir set -> set Dir;"
                                                   "inv cycle { some d: Dir | d in d.^contents }")
                                   .invariants[0]);
        auto tm = support::typed(m);
        Verdict v = solve(tm, scope_of(3));
        REQUIRE(v.status == Status::Sat);
        CHECK(all_hold(tm, *v.witness));
    }

    TEST_CASE("smallest witness first")
    {
        auto tm = typed_file("models/account_exists.girl");
        Verdict v = solve(tm, scope_of(3));
        REQUIRE(v.witness.has_value());
        CHECK(v.witness->universe.atoms.size() == 1);
        auto empty = typed_text("entity E;");
        CHECK(solve(empty, scope_of(3)).witness->universe.atoms.empty());
    }

    TEST_CASE("per-entity bounds override the default")
    {
        auto tm = typed_text("entity A; entity B; inv c { #A >= 3 and #B >= 1 }");
        CHECK(solve(tm, scope_of(2)).status == Status::Unsat);
        Scope s = scope_of(2);
        s.per_entity["A"] = 3;
        Verdict v = solve(tm, s);
        REQUIRE(v.status == Status::Sat);
        CHECK(v.witness->universe.atoms.size() == 4);
    }

    TEST_CASE("multiplicities are enforced")
    {
        auto tm = typed_text("entity A; entity B; rel r: A set -> one B; inv c { #A >= 1 }");
        Verdict v = solve(tm, scope_of(2));
        REQUIRE(v.status == Status::Sat);
        CHECK(v.witness->universe.atoms.size() == 2);
        CHECK(v.witness->tuples(0).size() == 1);
        CHECK(solve(typed_file("models/multiplicity_conflict.girl"), scope_of(3)).status == Status::Unsat);
    }

    TEST_CASE("budget exhaustion is S1, never a verdict")
    {
        auto tm = typed_file("models/gradcourse.girl");
        SearchOptions tiny;
        tiny.max_candidates = 1;
        try {
            solve(tm, scope_of(3), tiny);
            FAIL("expected S1");
        } catch (const Error &e) {
            CHECK(e.code() == "S1");
        }
        CHECK_THROWS_AS(enumerate(tm, scope_of(3), 10, tiny), Error);
    }

    TEST_CASE("single entity at scope 2 has three instances")
    {
        auto tm = typed_text("entity E;");
        Enumeration e = enumerate(tm, scope_of(2), 10);
        REQUIRE(e.instances.size() == 3);
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(e.instances[i].universe.atoms.size() == i);
    }

    TEST_CASE("unsat model enumerates nothing")
    {
        CHECK(enumerate(typed_text("entity E; inv c { #E >= 1 and #E = 0 }"), scope_of(3), 10).instances.empty());
    }

    TEST_CASE("singleton has one instance")
    {
        auto e = enumerate(typed_text("singleton entity S;"), scope_of(3), 10);
        REQUIRE(e.instances.size() == 1);
        CHECK(e.instances[0].universe.atoms.size() == 1);
    }

    TEST_CASE("instances of a reflexive relation up to renaming")
    {
        // 1 (empty) + 2 (one atom, loop or not) + 10 (two atoms: 16 relations under swap)
        auto tm = typed_text("entity N; rel e: N set -> set N;");
        auto e = enumerate(tm, scope_of(2), 100);
        CHECK(e.instances.size() == 13);
        for (const auto &inst : e.instances)
            CHECK(is_canonical(inst));
    }

    TEST_CASE("limit truncates in search order")
    {
        auto tm = typed_text("entity N; rel e: N set -> set N;");
        auto all = enumerate(tm, scope_of(2), 100);
        auto some = enumerate(tm, scope_of(2), 5);
        REQUIRE(some.instances.size() == 5);
        for (std::size_t i = 0; i < 5; ++i)
            CHECK(some.instances[i] == all.instances[i]);
        CHECK(all.instances.front() == solve(tm, scope_of(2)).witness.value());
    }

    TEST_CASE("canonicity detects a renamed instance")
    {
        auto tm = typed_text("entity N; rel e: N set -> set N;");
        int asymmetric = 0;
        for (const Instance &inst : enumerate(tm, scope_of(2), 100).instances) {
            if (inst.universe.atoms.size() != 2)
                continue;
            Instance swapped = inst;
            for (AtomId s = 0; s < 2; ++s) {
                AtomSet row;
                inst.relations[0][1 - s].for_each([&](AtomId t) { row.set(1 - t); });
                swapped.relations[0][s] = row;
            }
            if (swapped == inst)
                continue;
            ++asymmetric;
            CHECK_FALSE(is_canonical(swapped));
        }
        CHECK(asymmetric == 6);
    }

    TEST_CASE("every witness satisfies its model")
    {
        for (const auto &nm : support::load_corpus()) {
            CAPTURE(nm.name);
            auto tm = support::typed(nm.model);
            Verdict v = solve(tm, scope_of(2));
            if (v.witness)
                CHECK(all_hold(tm, *v.witness));
        }
    }

    TEST_CASE("sat at a scope stays sat at larger scopes")
    {
        for (const auto &nm : support::load_corpus()) {
            CAPTURE(nm.name);
            auto tm = support::typed(nm.model);
            bool was_sat = false;
            for (int s = 1; s <= 3; ++s) {
                bool sat = solve(tm, scope_of(s)).status == Status::Sat;
                CHECK((!was_sat || sat));
                was_sat = sat;
            }
        }
    }

    TEST_CASE("results are identical across runs")
    {
        CHECK(support::determinism_property(support::load_corpus(), 2).ok());
    }
}
