#include "girl/syntax.hpp"

#include <sstream>

namespace girl {

namespace {

// Formula precedence, loosest first. A quantifier body extends as far
// right as possible, so a quantifier may only appear unparenthesized at
// the right edge of its context (`tail`).
enum Prec : int {
    kQuant = 0,
    kImplies = 1,
    kOr = 2,
    kAnd = 3,
    kNot = 4,
    kCmp = 5,
    // set terms
    kUnion = 10,
    kIntersect = 11,
    kDot = 12,
    kAtom = 13,
};

void set_term(std::ostream &os, const SetTerm &t, int ctx);

int set_prec(const SetTerm &t)
{
    if (const auto *op = std::get_if<SetOp>(&t.node))
        return op->op == SetOpKind::Intersection ? kIntersect : kUnion;
    if (std::holds_alternative<Image>(t.node))
        return kDot;
    return kAtom;
}

void set_term(std::ostream &os, const SetTerm &t, int ctx)
{
    int prec = set_prec(t);
    bool parens = prec < ctx;
    if (parens)
        os << '(';
    std::visit(
        [&](const auto &n) {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, EntityRef> || std::is_same_v<N, VarRef>) {
                os << n.name;
            } else if constexpr (std::is_same_v<N, SetOp>) {
                set_term(os, *n.lhs, prec);
                os << (n.op == SetOpKind::Union ? " ++ " : n.op == SetOpKind::Intersection ? " & " : " \\ ");
                set_term(os, *n.rhs, prec + 1);
            } else {
                set_term(os, *n.from, kDot);
                os << '.' << (n.rel.closure ? "^" : "") << n.rel.name;
            }
        },
        t.node);
    if (parens)
        os << ')';
}

void int_term(std::ostream &os, const IntTerm &t)
{
    if (const auto *l = std::get_if<IntLiteral>(&t.node)) {
        os << l->value;
        return;
    }
    os << '#';
    set_term(os, std::get<Cardinality>(t.node).set, kDot);
}

int bool_prec(const BoolExpr &b)
{
    return std::visit(
        [](const auto &n) -> int {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Quantification>)
                return kQuant;
            else if constexpr (std::is_same_v<N, Implication>)
                return kImplies;
            else if constexpr (std::is_same_v<N, LogicalOp>)
                return n.op == LogicKind::Or ? kOr : kAnd;
            else if constexpr (std::is_same_v<N, Not>)
                return kNot;
            else
                return kCmp;
        },
        b.node);
}

void formula(std::ostream &os, const BoolExpr &b, int ctx, bool tail)
{
    int prec = bool_prec(b);
    bool parens = prec < ctx || (prec == kQuant && !tail);
    if (parens) {
        os << '(';
        ctx = kQuant;
        tail = true;
    }
    std::visit(
        [&](const auto &n) {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Containment>) {
                // A bare variable on the left would read back as a membership.
                set_term(os, n.inner, std::holds_alternative<VarRef>(n.inner.node) ? kAtom + 1 : kUnion);
                os << " in ";
                set_term(os, n.outer, kUnion);
            } else if constexpr (std::is_same_v<N, Membership>) {
                os << n.elem.name << " in ";
                set_term(os, n.set, kUnion);
            } else if constexpr (std::is_same_v<N, RelationalOp>) {
                int_term(os, n.lhs);
                os << ' ' << to_string(n.op) << ' ';
                int_term(os, n.rhs);
            } else if constexpr (std::is_same_v<N, LogicalOp>) {
                for (std::size_t i = 0; i < n.args.size(); ++i) {
                    if (i)
                        os << (n.op == LogicKind::And ? " and " : " or ");
                    formula(os, n.args[i], prec + 1, tail && i + 1 == n.args.size());
                }
            } else if constexpr (std::is_same_v<N, Not>) {
                os << "not ";
                formula(os, *n.arg, kNot, tail);
            } else if constexpr (std::is_same_v<N, Quantification>) {
                os << to_string(n.quant) << ' ' << n.var << ": ";
                set_term(os, n.domain, kUnion);
                os << " | ";
                formula(os, *n.body, kQuant, true);
            } else {
                formula(os, *n.premise, kImplies + 1, false);
                os << " => ";
                formula(os, *n.conclusion, kImplies, tail);
            }
        },
        b.node);
    if (parens)
        os << ')';
}

} // namespace

std::string print(const SetTerm &term)
{
    std::ostringstream os;
    set_term(os, term, kUnion);
    return os.str();
}

std::string print(const IntTerm &term)
{
    std::ostringstream os;
    int_term(os, term);
    return os.str();
}

std::string print(const BoolExpr &expr)
{
    std::ostringstream os;
    formula(os, expr, kQuant, true);
    return os.str();
}

std::string print(const Multiplicity &m)
{
    if (m.bound)
        return std::string(to_string(m.bound->op)) + " " + std::to_string(m.bound->value);
    return std::string(to_string(m.base));
}

std::string print(const Model &model)
{
    std::ostringstream os;
    bool section = false;
    auto separate = [&](bool nonempty) {
        if (nonempty && section)
            os << '\n';
        section = section || nonempty;
    };

    separate(!model.entities.empty());
    for (const auto &e : model.entities) {
        if (e.kind != EntityKind::Plain)
            os << to_string(e.kind) << ' ';
        os << "entity " << e.name;
        if (e.parent)
            os << " extends " << *e.parent;
        os << ";\n";
    }
    separate(!model.relationships.empty());
    for (const auto &r : model.relationships)
        os << "rel " << r.name << ": " << print(r.source) << ' ' << print(r.source_mult) << " -> "
           << print(r.target_mult) << ' ' << print(r.target) << ";\n";
    separate(!model.invariants.empty());
    for (const auto &inv : model.invariants)
        os << "inv " << inv.context << " { " << print(inv.body) << " }\n";
    return os.str();
}

} // namespace girl
