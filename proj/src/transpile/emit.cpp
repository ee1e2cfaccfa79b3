#include "girl/alloy.hpp"
#include "girl/diagnostic.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace girl::alloy {

ExprPtr name(std::string id)
{
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Name;
    e->text = std::move(id);
    return e;
}

ExprPtr int_lit(std::int64_t v)
{
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::IntLit;
    e->value = v;
    return e;
}

ExprPtr unary(Expr::Kind kind, ExprPtr operand)
{
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->kids = {std::move(operand)};
    return e;
}

ExprPtr binary(Expr::Kind kind, ExprPtr lhs, ExprPtr rhs)
{
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->kids = {std::move(lhs), std::move(rhs)};
    return e;
}

ExprPtr nary(Expr::Kind kind, std::vector<ExprPtr> args)
{
    if (args.size() == 1)
        return args.front();
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->kids = std::move(args);
    return e;
}

ExprPtr compare(RelOp op, ExprPtr lhs, ExprPtr rhs)
{
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Compare;
    e->cmp = op;
    e->kids = {std::move(lhs), std::move(rhs)};
    return e;
}

ExprPtr quant(std::string keyword, std::string var, ExprPtr domain, ExprPtr body)
{
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Quant;
    e->text = std::move(keyword);
    e->var = std::move(var);
    e->kids = {std::move(domain), std::move(body)};
    return e;
}

bool is_keyword(std::string_view word)
{
    static constexpr std::array<std::string_view, 45> kWords = {
        "abstract", "all",   "and",   "as",     "assert",  "but",     "check", "disj",  "else",
        "enum",     "exactly", "expect", "extends", "fact", "for",     "fun",   "iden",  "iff",
        "implies",  "in",    "Int",   "int",    "let",     "lone",    "module", "no",   "none",
        "not",      "one",   "open",  "or",     "pred",    "private", "run",   "seq",   "set",
        "sig",      "some",  "String", "sum",   "this",    "univ",    "steps", "var",   "sequence",
    };
    return std::find(kWords.begin(), kWords.end(), word) != kWords.end();
}

namespace {

// Alloy precedence, loosest first.
enum Prec : int {
    kQuant = 0,
    kOr = 1,
    kImplies = 2,
    kAnd = 3,
    kNot = 4,
    kCmp = 5,
    kUnion = 10, // + and -
    kCard = 11,
    kIntersect = 12,
    kJoin = 13,
    kClosure = 14,
    kAtom = 15,
};

int prec(const Expr &e)
{
    switch (e.kind) {
    case Expr::Kind::Name:
    case Expr::Kind::IntLit: return kAtom;
    case Expr::Kind::Join: return kJoin;
    case Expr::Kind::Closure: return kClosure;
    case Expr::Kind::Union:
    case Expr::Kind::Diff: return kUnion;
    case Expr::Kind::Intersect: return kIntersect;
    case Expr::Kind::Card: return kCard;
    case Expr::Kind::In:
    case Expr::Kind::Compare: return kCmp;
    case Expr::Kind::And: return kAnd;
    case Expr::Kind::Or: return kOr;
    case Expr::Kind::Not: return kNot;
    case Expr::Kind::Implies: return kImplies;
    case Expr::Kind::Quant: return kQuant;
    }
    throw Error("T1", "unmapped Alloy construct");
}

void write(std::ostream &os, const Expr &e, int ctx, bool tail)
{
    int p = prec(e);
    bool parens = p < ctx || (p == kQuant && !tail);
    if (parens) {
        os << '(';
        tail = true;
    }
    auto infix = [&](const char *op, int lhs_ctx, int rhs_ctx) {
        write(os, *e.kids[0], lhs_ctx, false);
        os << op;
        write(os, *e.kids[1], rhs_ctx, tail);
    };
    switch (e.kind) {
    case Expr::Kind::Name: os << e.text; break;
    case Expr::Kind::IntLit: os << e.value; break;
    case Expr::Kind::Join: infix(".", kJoin, kClosure); break;
    case Expr::Kind::Closure:
        os << '^';
        write(os, *e.kids[0], kAtom, tail);
        break;
    case Expr::Kind::Union: infix(" + ", kUnion, kCard); break;
    case Expr::Kind::Diff: infix(" - ", kUnion, kCard); break;
    case Expr::Kind::Intersect: infix(" & ", kIntersect, kJoin); break;
    case Expr::Kind::Card:
        os << '#';
        write(os, *e.kids[0], kJoin, tail);
        break;
    case Expr::Kind::In: infix(" in ", kUnion, kUnion); break;
    case Expr::Kind::Compare: {
        std::string op = " " + std::string(to_string(e.cmp)) + " ";
        infix(op.c_str(), kUnion, kUnion);
        break;
    }
    case Expr::Kind::And:
    case Expr::Kind::Or:
        for (std::size_t i = 0; i < e.kids.size(); ++i) {
            if (i)
                os << (e.kind == Expr::Kind::And ? " and " : " or ");
            // Nested or/implies inside a conjunction or disjunction are
            // always parenthesized for readability.
            write(os, *e.kids[i], std::max(p + 1, int(kAnd)), tail && i + 1 == e.kids.size());
        }
        break;
    case Expr::Kind::Not:
        os << "not ";
        write(os, *e.kids[0], kNot, tail);
        break;
    case Expr::Kind::Implies: infix(" implies ", kAnd, kAnd); break;
    case Expr::Kind::Quant:
        os << e.text << ' ' << e.var << ": ";
        write(os, *e.kids[0], kUnion, false);
        os << " | ";
        write(os, *e.kids[1], kQuant, true);
        break;
    }
    if (parens)
        os << ')';
}

} // namespace

std::string emit(const Expr &formula)
{
    std::ostringstream os;
    write(os, formula, kQuant, true);
    return os.str();
}

std::string emit(const Module &module)
{
    std::ostringstream os;
    os << "module " << module.name << '\n';
    if (!module.sigs.empty())
        os << '\n';
    for (const auto &sig : module.sigs) {
        if (sig.is_abstract)
            os << "abstract ";
        if (sig.is_one)
            os << "one ";
        os << "sig " << sig.name;
        if (sig.parent)
            os << " extends " << *sig.parent;
        if (sig.fields.empty()) {
            os << " {}\n";
            continue;
        }
        os << " {\n";
        for (std::size_t i = 0; i < sig.fields.size(); ++i) {
            const auto &f = sig.fields[i];
            os << "  " << f.name << ": " << f.mult << ' ' << f.type << (i + 1 < sig.fields.size() ? ",\n" : "\n");
        }
        os << "}\n";
    }
    for (const auto &fact : module.facts) {
        os << "\nfact " << fact.name << " {\n";
        for (const auto &f : fact.formulas)
            os << "  " << emit(*f) << '\n';
        os << "}\n";
    }
    os << "\nrun {} for " << module.run.scope;
    if (module.run.int_bitwidth)
        os << " but " << *module.run.int_bitwidth << " Int";
    os << '\n';
    return os.str();
}

} // namespace girl::alloy
