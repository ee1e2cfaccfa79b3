#include "doctest.h"

#include "corpus.hpp"

#include "girl/json_io.hpp"

#include <string>

using namespace girl;

TEST_SUITE("json")
{
    TEST_CASE("save and load are inverse on the corpus")
    {
        for (const auto &path : support::corpus_paths()) {
            CAPTURE(path);
            Model m = support::load_model(path);
            std::string text = save_json(m);
            auto loaded = load_json(text);
            REQUIRE(loaded.ok());
            CHECK(*loaded.model == m);
            CHECK(save_json(*loaded.model) == text);
        }
    }

    TEST_CASE("banking JSON has the holder relationship")
    {
        auto loaded = load_json(save_json(support::load_model(support::path_in_repo("models/banking.girl"))));
        REQUIRE(loaded.ok());
        bool found = false;
        for (const auto &r : loaded.model->relationships)
            if (r.name == "holder") {
                found = true;
                CHECK(std::get<EntityRef>(r.source.node).name == "Checking");
                CHECK(std::get<EntityRef>(r.target.node).name == "Client");
                CHECK(r.target_mult.base == MultBase::One);
            }
        CHECK(found);
    }

    TEST_CASE("missing version is J1")
    {
        auto r = load_json(R"({"name": "m", "entities": [], "relationships": [], "invariants": []})");
        CHECK_FALSE(r.ok());
        REQUIRE_FALSE(r.diagnostics.empty());
        CHECK(r.diagnostics[0].rule == "J1");
    }

    TEST_CASE("wrong version, malformed JSON and wrong shapes are J1")
    {
        for (const char *text : {
                 R"({"version": "girl-ast/2", "name": "m", "entities": [], "relationships": [], "invariants": []})",
                 "{not json",
                 "[]",
                 R"({"version": "girl-ast/1", "name": "m", "entities": [{"kind": "plain"}], "relationships": [], "invariants": []})",
                 R"({"version": "girl-ast/1", "name": "m", "entities": [], "relationships": [], "invariants": [{"context": "c", "body": {"kind": "relop", "op": "~", "lhs": {"kind": "int", "value": 1}, "rhs": {"kind": "int", "value": 1}}}]})",
             }) {
            CAPTURE(text);
            auto r = load_json(text);
            CHECK_FALSE(r.ok());
            REQUIRE_FALSE(r.diagnostics.empty());
            CHECK(r.diagnostics[0].rule == "J1");
        }
    }

    TEST_CASE("unknown node kind is J2")
    {
        auto r = load_json(R"({"version": "girl-ast/1", "name": "m", "entities": [], "relationships": [],
            "invariants": [{"context": "c", "body": {"kind": "xor", "args": []}}]})");
        CHECK_FALSE(r.ok());
        REQUIRE_FALSE(r.diagnostics.empty());
        CHECK(r.diagnostics[0].rule == "J2");
    }

    TEST_CASE("output is canonical: two-space indentation and trailing newline")
    {
        std::string text = save_json(support::parse_text("entity Client;"));
        CHECK(text.rfind("{\n  \"entities\"", 0) == 0);
        CHECK(text.back() == '\n');
        CHECK(text.find("\"version\": \"girl-ast/1\"") != std::string::npos);
    }
}
