#pragma once

// The subset of Alloy 4 emitted by the translator, as an AST, plus the
// canonical text emitter.

#include "girl/model.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace girl::alloy {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind {
        Name,      // sig, field or variable
        IntLit,
        Join,      // kids[0] . kids[1]
        Closure,   // ^kids[0]
        Union,     // +
        Intersect, // &
        Diff,      // -
        Card,      // #kids[0]
        In,
        Compare,   // cmp
        And,
        Or,
        Not,
        Implies,
        Quant,     // text = quantifier keyword, var; kids = {domain, body}
    };

    Kind kind = Kind::Name;
    std::string text;
    std::string var;
    std::int64_t value = 0;
    RelOp cmp = RelOp::Eq;
    std::vector<ExprPtr> kids;
};

ExprPtr name(std::string id);
ExprPtr int_lit(std::int64_t v);
ExprPtr unary(Expr::Kind kind, ExprPtr operand);
ExprPtr binary(Expr::Kind kind, ExprPtr lhs, ExprPtr rhs);
ExprPtr nary(Expr::Kind kind, std::vector<ExprPtr> args);
ExprPtr compare(RelOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr quant(std::string keyword, std::string var, ExprPtr domain, ExprPtr body);

struct Field {
    std::string name;
    std::string mult; // one, lone, some, set
    std::string type; // sig name
};

struct Sig {
    std::string name;
    bool is_abstract = false;
    bool is_one = false;
    std::optional<std::string> parent;
    std::vector<Field> fields;
};

struct Fact {
    std::string name;
    std::vector<ExprPtr> formulas;
};

struct RunCommand {
    int scope = 3;
    std::optional<int> int_bitwidth;
};

struct Module {
    std::string name;
    std::vector<Sig> sigs;
    std::vector<Fact> facts;
    RunCommand run;
};

/// Canonical text: 2-space indentation, LF line endings, byte-deterministic.
std::string emit(const Module &module);
std::string emit(const Expr &formula);

bool is_keyword(std::string_view word);

} // namespace girl::alloy
