#include "girl/eval.hpp"

#include "girl/diagnostic.hpp"

namespace girl {

std::vector<AtomSet> transitive_closure(std::vector<AtomSet> rows)
{
    // Warshall: after step k, row[i] holds every j reachable through
    // intermediates drawn from {0..k}.
    for (AtomId k = 0; k < rows.size(); ++k)
        for (auto &row : rows)
            if (row.test(k))
                row |= rows[k];
    return rows;
}

Evaluator::Evaluator(const TypedModel &model, const Instance &instance) : model_(model), inst_(instance) {}

const std::vector<AtomSet> &Evaluator::closure_of(const typed::Image &img)
{
    auto it = closures_.find(img.rels);
    if (it != closures_.end())
        return it->second;
    std::vector<AtomSet> rows(inst_.universe.atoms.size());
    for (RelationshipId r : img.rels)
        for (AtomId s = 0; s < rows.size(); ++s)
            rows[s] |= inst_.relations[r][s];
    return closures_.emplace(img.rels, transitive_closure(std::move(rows))).first->second;
}

AtomSet Evaluator::value(const typed::Set &term, const Env &env)
{
    return std::visit(
        [&](const auto &n) -> AtomSet {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, typed::EntitySet>) {
                return inst_.universe.extent[n.entity];
            } else if constexpr (std::is_same_v<N, typed::Var>) {
                if (n.slot >= env.size() || !env[n.slot])
                    throw Error("E1", "unbound variable '" + n.name + "'");
                AtomSet s;
                s.set(*env[n.slot]);
                return s;
            } else if constexpr (std::is_same_v<N, typed::SetOp>) {
                AtomSet l = value(*n.lhs, env);
                AtomSet r = value(*n.rhs, env);
                switch (n.op) {
                case SetOpKind::Union: return l | r;
                case SetOpKind::Intersection: return l & r;
                case SetOpKind::Complement: return l - r;
                }
                throw InternalError("unknown set operator");
            } else {
                AtomSet from = value(*n.from, env);
                AtomSet out;
                if (n.closure) {
                    const auto &rows = closure_of(n);
                    from.for_each([&](AtomId a) { out |= rows[a]; });
                } else {
                    for (RelationshipId r : n.rels)
                        from.for_each([&](AtomId a) { out |= inst_.relations[r][a]; });
                }
                return out;
            }
        },
        term.node);
}

std::int64_t Evaluator::value(const typed::Int &term, const Env &env)
{
    if (const auto *l = std::get_if<typed::Literal>(&term.node))
        return l->value;
    return static_cast<std::int64_t>(value(std::get<typed::Card>(term.node).set, env).count());
}

bool Evaluator::holds(const TypedInvariant &inv)
{
    Env env(model_.max_depth());
    return holds(inv.body, env);
}

bool Evaluator::holds(const typed::Bool &expr, Env &env)
{
    return std::visit(
        [&](const auto &n) -> bool {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, typed::Subset>) {
                return value(n.inner, env).subset_of(value(n.outer, env));
            } else if constexpr (std::is_same_v<N, typed::Member>) {
                typed::Set elem{n.elem};
                return value(elem, env).subset_of(value(n.set, env));
            } else if constexpr (std::is_same_v<N, typed::Compare>) {
                return compare(n.op, value(n.lhs, env), value(n.rhs, env));
            } else if constexpr (std::is_same_v<N, typed::Logic>) {
                for (const auto &a : n.args)
                    if (holds(a, env) != (n.op == LogicKind::And))
                        return n.op == LogicKind::Or;
                return n.op == LogicKind::And;
            } else if constexpr (std::is_same_v<N, typed::Negation>) {
                return !holds(*n.arg, env);
            } else if constexpr (std::is_same_v<N, typed::Implies>) {
                return !holds(*n.premise, env) || holds(*n.conclusion, env);
            } else {
                if (env.size() <= n.slot)
                    env.resize(n.slot + 1);
                AtomSet domain = value(n.domain, env);
                auto saved = env[n.slot];
                std::size_t witnesses = 0;
                bool result = true;
                bool decided = false;
                domain.for_each([&](AtomId a) {
                    if (decided)
                        return;
                    env[n.slot] = a;
                    if (holds(*n.body, env))
                        ++witnesses;
                    else if (n.quant == Quantifier::All) {
                        result = false;
                        decided = true;
                    }
                    if (n.quant == Quantifier::Some && witnesses) {
                        decided = true;
                    } else if ((n.quant == Quantifier::No && witnesses) ||
                               (n.quant == Quantifier::One && witnesses > 1)) {
                        result = false;
                        decided = true;
                    }
                });
                env[n.slot] = saved;
                if (decided)
                    return result;
                switch (n.quant) {
                case Quantifier::All: return true;
                case Quantifier::Some: return false;
                case Quantifier::No: return true;
                case Quantifier::One: return witnesses == 1;
                }
                throw InternalError("unknown quantifier");
            }
        },
        expr.node);
}

} // namespace girl
