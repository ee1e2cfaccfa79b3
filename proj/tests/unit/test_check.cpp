#include "doctest.h"

#include "corpus.hpp"
#include "instances.hpp"

#include "girl/solve.hpp"

#include <string>

using namespace girl;
using testing_util::make_instance;

namespace {

TypedModel typed_file(const std::string &relative)
{
    return support::typed(support::load_model(support::path_in_repo(relative)));
}

std::vector<std::string> failing(const std::vector<ConstraintVerdict> &verdicts)
{
    std::vector<std::string> out;
    for (const auto &v : verdicts)
        if (!v.holds)
            out.push_back(std::string(to_string(v.kind)) + " " + v.label);
    return out;
}

} // namespace

TEST_SUITE("check")
{
    TEST_CASE("doctorate student without advisors violates only RCS4")
    {
        auto full = typed_file("models/gradcourse.girl");
        auto inst = make_instance(full, {{"Student", 1}, {"Regular", 1}, {"ConcentrationArea", 1}, {"Course", 1}, {"Doctorate", 1}},
                                  {{"studentArea", "Student$0", "ConcentrationArea$0"}, {"enrolled", "Student$0", "Course$0"}});
        CHECK(failing(check_instance(full, inst)) == std::vector<std::string>{"invariant RCS4"});
        auto weak = typed_file("models/gradcourse_no_rcs4.girl");
        CHECK(failing(check_instance(weak, inst)).empty());
    }

    TEST_CASE("three advisors break the at-most-two multiplicity")
    {
        auto tm = typed_file("models/gradcourse.girl");
        auto inst = make_instance(tm,
                                  {{"Student", 1}, {"Regular", 1}, {"ConcentrationArea", 1}, {"Course", 1}, {"Masters", 1},
                                   {"Professor", 3}, {"Permanent", 3}},
                                  {{"studentArea", "Student$0", "ConcentrationArea$0"},
                                   {"enrolled", "Student$0", "Course$0"},
                                   {"professorArea", "Professor$0", "ConcentrationArea$0"},
                                   {"professorArea", "Professor$1", "ConcentrationArea$0"},
                                   {"professorArea", "Professor$2", "ConcentrationArea$0"},
                                   {"advisor", "Student$0", "Professor$0"},
                                   {"advisor", "Student$0", "Professor$1"},
                                   {"advisor", "Student$0", "Professor$2"}});
        CHECK(failing(check_instance(tm, inst)) == std::vector<std::string>{"multiplicity advisor target <= 2"});
    }

    TEST_CASE("verdicts list structure, then multiplicities, then invariants")
    {
        auto tm = typed_file("models/banking.girl");
        auto inst = make_instance(tm, {{"Bank", 1}, {"CentralBank", 1}});
        auto verdicts = check_instance(tm, inst);
        REQUIRE_FALSE(verdicts.empty());
        int phase = 0;
        for (const auto &v : verdicts) {
            int p = v.kind == ConstraintVerdict::Kind::Structure ? 0 : v.kind == ConstraintVerdict::Kind::Multiplicity ? 1 : 2;
            CHECK(p >= phase);
            phase = p;
        }
        CHECK(verdicts.back().label == "clients");
        CHECK(failing(verdicts) == std::vector<std::string>{"invariant Account"});
    }

    TEST_CASE("tuples outside the relationship's ends are structure failures")
    {
        auto tm = support::typed(support::parse_text("entity A; entity B extends A; entity C; rel r: B set -> set C;"));
        auto inst = make_instance(tm, {{"A", 1}, {"C", 1}}, {{"r", "A$0", "C$0"}});
        CHECK(failing(check_instance(tm, inst)) == std::vector<std::string>{"structure r endpoints"});
    }

    TEST_CASE("instance of another model is C1")
    {
        auto a = support::typed(support::parse_text("entity A; rel r: A set -> set A;"));
        auto b = support::typed(support::parse_text("entity A;"));
        auto inst = make_instance(a, {{"A", 1}});
        try {
            check_instance(b, inst);
            FAIL("expected C1");
        } catch (const Error &e) {
            CHECK(e.code() == "C1");
        }
    }
}
