#include "girl/diagnostic.hpp"
#include "girl/model.hpp"

#include <algorithm>
#include <sstream>

namespace girl {

std::string_view to_string(EntityKind k)
{
    switch (k) {
    case EntityKind::Plain: return "plain";
    case EntityKind::Abstract: return "abstract";
    case EntityKind::Singleton: return "singleton";
    }
    return "?";
}

std::string_view to_string(RelOp op)
{
    switch (op) {
    case RelOp::Lt: return "<";
    case RelOp::Le: return "<=";
    case RelOp::Eq: return "=";
    case RelOp::Ge: return ">=";
    case RelOp::Gt: return ">";
    }
    return "?";
}

std::string_view to_string(MultBase b)
{
    switch (b) {
    case MultBase::One: return "one";
    case MultBase::Lone: return "lone";
    case MultBase::Some: return "some";
    case MultBase::Set: return "set";
    }
    return "?";
}

std::string_view to_string(SetOpKind op)
{
    switch (op) {
    case SetOpKind::Union: return "union";
    case SetOpKind::Intersection: return "intersection";
    case SetOpKind::Complement: return "complement";
    }
    return "?";
}

std::string_view to_string(LogicKind k) { return k == LogicKind::And ? "and" : "or"; }

std::string_view to_string(Quantifier q)
{
    switch (q) {
    case Quantifier::All: return "all";
    case Quantifier::Some: return "some";
    case Quantifier::No: return "no";
    case Quantifier::One: return "one";
    }
    return "?";
}

bool compare(RelOp op, std::int64_t lhs, std::int64_t rhs)
{
    switch (op) {
    case RelOp::Lt: return lhs < rhs;
    case RelOp::Le: return lhs <= rhs;
    case RelOp::Eq: return lhs == rhs;
    case RelOp::Ge: return lhs >= rhs;
    case RelOp::Gt: return lhs > rhs;
    }
    return false;
}

bool admits(const Multiplicity &m, std::int64_t count)
{
    if (m.bound)
        return compare(m.bound->op, count, m.bound->value);
    switch (m.base) {
    case MultBase::One: return count == 1;
    case MultBase::Lone: return count <= 1;
    case MultBase::Some: return count >= 1;
    case MultBase::Set: return true;
    }
    return false;
}

const EntityDecl *Model::find_entity(std::string_view name) const
{
    auto it = std::find_if(entities.begin(), entities.end(),
                           [&](const EntityDecl &e) { return e.name == name; });
    return it == entities.end() ? nullptr : &*it;
}

std::string format(const Diagnostic &d)
{
    std::ostringstream os;
    if (d.span && d.span->valid()) {
        if (!d.span->file.empty())
            os << d.span->file << ':';
        os << d.span->start_line << ':' << d.span->start_col << ": ";
    } else if (!d.path.empty()) {
        os << d.path << ": ";
    }
    os << (d.severity == Severity::Error ? "error" : "warning") << " [" << d.rule << "]: " << d.message;
    return os.str();
}

bool has_errors(const std::vector<Diagnostic> &diags)
{
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic &d) { return d.severity == Severity::Error; });
}

namespace build {

SetTerm entity(std::string name) { return SetTerm{EntityRef{std::move(name)}, {}}; }
SetTerm var(std::string name) { return SetTerm{VarRef{std::move(name), {}}, {}}; }

SetTerm set_op(SetOpKind op, SetTerm lhs, SetTerm rhs)
{
    return SetTerm{SetOp{op, std::move(lhs), std::move(rhs)}, {}};
}

SetTerm image(SetTerm from, std::string rel, bool closure)
{
    return SetTerm{Image{RelTerm{std::move(rel), closure, {}}, std::move(from)}, {}};
}

IntTerm lit(std::int64_t value) { return IntTerm{IntLiteral{value}, {}}; }
IntTerm card(SetTerm set) { return IntTerm{Cardinality{std::move(set)}, {}}; }

BoolExpr contains(SetTerm inner, SetTerm outer)
{
    return BoolExpr{Containment{std::move(inner), std::move(outer)}, {}};
}

BoolExpr member(std::string var, SetTerm set)
{
    return BoolExpr{Membership{VarRef{std::move(var), {}}, std::move(set)}, {}};
}

BoolExpr cmp(RelOp op, IntTerm lhs, IntTerm rhs)
{
    return BoolExpr{RelationalOp{op, std::move(lhs), std::move(rhs)}, {}};
}

BoolExpr logic(LogicKind op, std::vector<BoolExpr> args) { return BoolExpr{LogicalOp{op, std::move(args)}, {}}; }
BoolExpr negate(BoolExpr arg) { return BoolExpr{Not{std::move(arg)}, {}}; }

BoolExpr quant(Quantifier q, std::string var, SetTerm domain, BoolExpr body)
{
    return BoolExpr{Quantification{q, std::move(var), std::move(domain), std::move(body)}, {}};
}

BoolExpr implies(BoolExpr premise, BoolExpr conclusion)
{
    return BoolExpr{Implication{std::move(premise), std::move(conclusion)}, {}};
}

} // namespace build

} // namespace girl
