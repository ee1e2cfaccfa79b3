#include "doctest.h"

#include "corpus.hpp"
#include "properties.hpp"

TEST_SUITE("oracle")
{
    TEST_CASE("corpus verdicts match the brute-force oracle at scopes 1 and 2")
    {
        auto corpus = support::load_corpus();
        CHECK(corpus.size() >= 20);
        auto o = support::oracle_agreement(corpus, {1, 2});
        INFO(o.summary());
        CHECK(o.ok());
        CHECK(o.skipped == 0);
    }

    TEST_CASE("the oracle decides the adversarial cases as expected")
    {
        auto decide = [](const char *name, int scope) {
            return oracle::decide(support::load_model(support::path_in_repo(std::string("models/") + name)), scope).sat;
        };
        CHECK(decide("empty.girl", 1));
        CHECK_FALSE(decide("contradiction.girl", 2));
        CHECK(decide("empty_domain_all.girl", 2));
        CHECK_FALSE(decide("empty_domain_some.girl", 2));
        CHECK_FALSE(decide("closure_cycle.girl", 2));
        CHECK(decide("reflexive.girl", 2));
    }
}
