#include "doctest.h"

#include "corpus.hpp"
#include "generate.hpp"

#include "girl/syntax.hpp"

#include <random>
#include <string>

using namespace girl;

namespace {

const Diagnostic &first_error(const LoadResult &r)
{
    REQUIRE_FALSE(r.diagnostics.empty());
    return r.diagnostics.front();
}

} // namespace

TEST_SUITE("syntax")
{
    TEST_CASE("abstract entity with two extensions")
    {
        auto r = parse("abstract entity Student; entity Regular extends Student; entity Special extends Student;");
        REQUIRE(r.ok());
        REQUIRE(r.model->entities.size() == 3);
        CHECK(r.model->entities[0].kind == EntityKind::Abstract);
        CHECK(r.model->entities[1].parent == std::optional<std::string>("Student"));
        CHECK(r.model->entities[2].name == "Special");
    }

    TEST_CASE("empty file is an empty model")
    {
        auto r = parse("");
        REQUIRE(r.ok());
        CHECK(r.model->entities.empty());
        CHECK(r.model->relationships.empty());
        CHECK(r.model->invariants.empty());
        CHECK(r.diagnostics.empty());
    }

    TEST_CASE("keyword as identifier is P2 at its position")
    {
        auto r = parse("entity entity;", "k.girl");
        CHECK_FALSE(r.ok());
        const auto &d = first_error(r);
        CHECK(d.rule == "P2");
        REQUIRE(d.span.has_value());
        CHECK(d.span->start_line == 1);
        CHECK(d.span->start_col == 8);
        CHECK(d.span->file == "k.girl");
    }

    TEST_CASE("abstract singleton is not representable")
    {
        auto r = parse("abstract singleton entity X;");
        CHECK_FALSE(r.ok());
        CHECK(first_error(r).rule == "P2");
    }

    TEST_CASE("lexical errors are P1")
    {
        for (const char *text : {"entity A$;", "entity A; inv c { #A + 1 }", "entity \xc3\xa9;", "entity A; inv c { #A - 1 }"}) {
            auto r = parse(text);
            CHECK_FALSE(r.ok());
            CHECK(first_error(r).rule == "P1");
        }
    }

    TEST_CASE("literal overflow is P3")
    {
        CHECK(parse("entity A; inv c { #A <= 2147483647 }").ok());
        auto r = parse("entity A; inv c { #A <= 2147483648 }");
        CHECK_FALSE(r.ok());
        CHECK(first_error(r).rule == "P3");
        CHECK(first_error(parse("entity A; rel r: A set -> <= 99999999999999999999 A;")).rule == "P3");
    }

    TEST_CASE("comments and whitespace are insignificant")
    {
        auto a = parse("entity A; // trailing\n\n  // whole line\nentity B extends A;");
        auto b = parse("entity A;entity B extends A;");
        REQUIRE(a.ok());
        REQUIRE(b.ok());
        CHECK(*a.model == *b.model);
    }

    TEST_CASE("nodes carry source spans")
    {
        auto r = parse("entity A;\ninv c {\n  #A >= 1\n}\n", "s.girl");
        REQUIRE(r.ok());
        const auto &inv = r.model->invariants.at(0);
        CHECK(inv.body.span.start_line == 3);
        CHECK(inv.body.span.start_col == 3);
        CHECK(inv.body.span.end_line == 3);
        CHECK(r.model->entities[0].span.start_line == 1);
    }

    TEST_CASE("print of a single entity")
    {
        Model m;
        m.entities.push_back({"Client", EntityKind::Plain, std::nullopt, {}});
        CHECK(print(m) == "entity Client;\n");
    }

    TEST_CASE("invariant text round-trips byte-identically")
    {
        std::string text = "entity Account;\n\ninv Account { #Account >= 1 }\n";
        auto r = parse(text);
        REQUIRE(r.ok());
        CHECK(print(*r.model) == text);
    }

    TEST_CASE("graduate-course canonical print matches the frozen file")
    {
        Model m = support::load_model(support::path_in_repo("models/gradcourse.girl"));
        CHECK(print(m) == support::read_text(support::path_in_repo("tests/golden/gradcourse.print.girl")));
    }

    TEST_CASE("precedence follows the grammar")
    {
        using namespace girl::build;
        auto r = parse("entity A; entity B; rel r: A set -> set A;"
                       "inv c { all x: A | x in x.^r or #A = 0 and not #B > 1 => #A >= 1 }");
        REQUIRE(r.ok());
        const auto &q = std::get<Quantification>(r.model->invariants[0].body.node);
        const auto &imp = std::get<Implication>(q.body->node);
        const auto &orr = std::get<LogicalOp>(imp.premise->node);
        CHECK(orr.op == LogicKind::Or);
        REQUIRE(orr.args.size() == 2);
        CHECK(std::holds_alternative<Membership>(orr.args[0].node));
        const auto &andd = std::get<LogicalOp>(orr.args[1].node);
        CHECK(andd.op == LogicKind::And);
        CHECK(std::holds_alternative<Not>(andd.args[1].node));
    }

    TEST_CASE("implication is right-associative")
    {
        auto r = parse("entity A; inv c { all x: A | #A = 1 => #A = 2 => #A = 3 }");
        REQUIRE(r.ok());
        const auto &q = std::get<Quantification>(r.model->invariants[0].body.node);
        const auto &outer = std::get<Implication>(q.body->node);
        CHECK(std::holds_alternative<RelationalOp>(outer.premise->node));
        CHECK(std::holds_alternative<Implication>(outer.conclusion->node));
    }

    TEST_CASE("set operators: & binds tighter than ++ and backslash")
    {
        auto r = parse("entity A; entity B; entity C; inv c { A ++ B & C in A }");
        REQUIRE(r.ok());
        const auto &c = std::get<Containment>(r.model->invariants[0].body.node);
        const auto &u = std::get<SetOp>(c.inner.node);
        CHECK(u.op == SetOpKind::Union);
        CHECK(std::get<SetOp>(u.rhs->node).op == SetOpKind::Intersection);
    }

    TEST_CASE("bound variables parse as variables, other names as entities")
    {
        auto r = parse("entity N; rel e: N set -> set N; inv c { all x: N | x in N and (x) in x.e }");
        REQUIRE(r.ok());
        const auto &q = std::get<Quantification>(r.model->invariants[0].body.node);
        const auto &args = std::get<LogicalOp>(q.body->node).args;
        CHECK(std::holds_alternative<Membership>(args[0].node));
        const auto &c = std::get<Containment>(args[1].node);
        CHECK(std::holds_alternative<VarRef>(c.inner.node));
        CHECK(std::holds_alternative<EntityRef>(std::get<Membership>(args[0].node).set.node));
    }

    TEST_CASE("deep nesting is rejected, not a crash")
    {
        std::string text = "entity A; inv c { " + std::string(5000, '(') + "#A >= 1" + std::string(5000, ')') + " }";
        auto r = parse(text);
        CHECK_FALSE(r.ok());
        CHECK(first_error(r).rule == "P2");
    }

    TEST_CASE("parser is total on arbitrary bytes")
    {
        support::Rng rng(7);
        std::uniform_int_distribution<int> byte(0, 255);
        const std::string alphabet = "entity rel inv abstract singleton all some no one lone set ( ) { } ; : | -> => # ^ . & ++ \\ <= >= = < > 0 1 2 A b x\n";
        for (int i = 0; i < 2000; ++i) {
            std::string text;
            std::size_t len = static_cast<std::size_t>(byte(rng)) * 2;
            for (std::size_t k = 0; k < len; ++k)
                text += i % 2 ? static_cast<char>(byte(rng)) : alphabet[static_cast<std::size_t>(byte(rng)) % alphabet.size()];
            auto r = parse(text);
            CHECK((r.ok() || !r.diagnostics.empty()));
        }
        std::string big(1 << 20, 'x');
        big[0] = '{';
        CHECK_FALSE(parse(big).ok());
    }

    TEST_CASE("parsing is deterministic")
    {
        std::string text = support::read_text(support::path_in_repo("models/banking.girl"));
        auto a = parse(text, "banking.girl");
        auto b = parse(text, "banking.girl");
        REQUIRE(a.ok());
        CHECK(*a.model == *b.model);
        auto bad_a = parse("entity A; inv c { #A >= }");
        auto bad_b = parse("entity A; inv c { #A >= }");
        CHECK(bad_a.diagnostics == bad_b.diagnostics);
    }

    TEST_CASE("model name comes from the file stem")
    {
        CHECK(model_name_from_path("dir/gradcourse.girl") == "gradcourse");
        CHECK(model_name_from_path("dir/2bad.girl") == "model");
        CHECK(model_name_from_path("") == "model");
    }

    TEST_CASE("every corpus model round-trips through print")
    {
        for (const auto &path : support::corpus_paths()) {
            CAPTURE(path);
            Model m = support::load_model(path);
            auto again = parse(print(m), path);
            REQUIRE(again.ok());
            CHECK(*again.model == m);
        }
    }
}
