#include "girl/transpile.hpp"

#include "girl/diagnostic.hpp"
#include "girl/syntax.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace girl {

std::optional<int> int_bitwidth_for(std::int64_t max_literal)
{
    if (max_literal <= 7)
        return std::nullopt;
    int w = 5;
    while (((std::int64_t{1} << (w - 1)) - 1) < max_literal)
        ++w;
    return w;
}

namespace {

using alloy::Expr;
using alloy::ExprPtr;
using K = alloy::Expr::Kind;

class Translator {
public:
    Translator(const TypedModel &m) : m_(m) { collect_user_names(); }

    alloy::Module run(int scope)
    {
        alloy::Module out;
        out.name = ident(m_.source.name);
        assign_field_names();

        for (EntityId id = 0; id < m_.entities.size(); ++id) {
            const auto &e = m_.entities[id];
            alloy::Sig sig;
            sig.name = ident(e.name);
            sig.is_abstract = e.kind == EntityKind::Abstract;
            sig.is_one = e.kind == EntityKind::Singleton;
            if (e.parent)
                sig.parent = ident(m_.entities[*e.parent].name);
            for (RelationshipId r = 0; r < m_.relationships.size(); ++r) {
                if (owner(r) != id)
                    continue;
                const auto &rel = m_.relationships[r];
                std::string mult = "set";
                if (plain(r) && !rel.target_mult.bound)
                    mult = std::string(to_string(rel.target_mult.base));
                sig.fields.push_back({field_[r], mult, ident(m_.entities[field_type(r)].name)});
            }
            out.sigs.push_back(std::move(sig));
        }

        std::set<std::string> fact_names;
        auto unique_fact = [&](const std::string &base) {
            std::string n = base;
            for (int i = 2; fact_names.count(n); ++i)
                n = base + "_" + std::to_string(i);
            fact_names.insert(n);
            return n;
        };
        for (const auto &inv : m_.invariants) {
            alloy::Fact fact;
            fact.name = unique_fact(ident(inv.context));
            if (const auto *l = std::get_if<typed::Logic>(&inv.body.node); l && l->op == LogicKind::And) {
                for (const auto &arg : l->args)
                    fact.formulas.push_back(formula(arg));
            } else {
                fact.formulas.push_back(formula(inv.body));
            }
            out.facts.push_back(std::move(fact));
        }
        std::vector<ExprPtr> side;
        for (RelationshipId r = 0; r < m_.relationships.size(); ++r)
            side_constraints(r, side);
        if (!side.empty())
            out.facts.push_back({unique_fact("multiplicities"), std::move(side)});

        out.run.scope = scope;
        out.run.int_bitwidth = int_bitwidth_for(std::max<std::int64_t>(max_literal_, scope));
        audit(out);
        return out;
    }

private:
    void collect_user_names()
    {
        for (const auto &e : m_.source.entities)
            user_.insert(e.name);
        for (const auto &r : m_.source.relationships)
            user_.insert(r.name);
        for (const auto &i : m_.invariants) {
            user_.insert(i.context);
            collect_vars(i.body);
        }
        user_.insert(m_.source.name);
    }

    void collect_vars(const typed::Bool &b)
    {
        std::visit(
            [&](const auto &n) {
                using N = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<N, typed::Quant>) {
                    user_.insert(n.var);
                    collect_vars(*n.body);
                } else if constexpr (std::is_same_v<N, typed::Logic>) {
                    for (const auto &a : n.args)
                        collect_vars(a);
                } else if constexpr (std::is_same_v<N, typed::Negation>) {
                    collect_vars(*n.arg);
                } else if constexpr (std::is_same_v<N, typed::Implies>) {
                    collect_vars(*n.premise);
                    collect_vars(*n.conclusion);
                }
            },
            b.node);
    }

    // User identifiers that are Alloy keywords get a `_` suffix.
    std::string ident(const std::string &id)
    {
        auto it = renamed_.find(id);
        if (it != renamed_.end())
            return it->second;
        std::string out = id;
        while (alloy::is_keyword(out) || (out != id && user_.count(out)))
            out += '_';
        renamed_.emplace(id, out);
        return out;
    }

    std::string fresh()
    {
        std::string v;
        do
            v = "v" + std::to_string(next_var_++);
        while (user_.count(v) || renamed_values_contains(v));
        return v;
    }

    bool renamed_values_contains(const std::string &v) const
    {
        return std::any_of(renamed_.begin(), renamed_.end(), [&](const auto &p) { return p.second == v; });
    }

    bool plain(RelationshipId r) const
    {
        const auto &rel = m_.relationships[r];
        return std::holds_alternative<typed::EntitySet>(rel.source.node) &&
               std::holds_alternative<typed::EntitySet>(rel.target.node);
    }

    EntityId owner(RelationshipId r) const
    {
        const auto &rel = m_.relationships[r];
        if (const auto *e = std::get_if<typed::EntitySet>(&rel.source.node))
            return e->entity;
        return rel.source_root;
    }

    EntityId field_type(RelationshipId r) const
    {
        const auto &rel = m_.relationships[r];
        if (const auto *e = std::get_if<typed::EntitySet>(&rel.target.node))
            return e->entity;
        return rel.target_root;
    }

    // Alloy forbids two fields of the same name within one sig hierarchy, so
    // a clash there is resolved by suffixing; references use the union.
    void assign_field_names()
    {
        std::map<EntityId, std::set<std::string>> used; // per root
        for (RelationshipId r = 0; r < m_.relationships.size(); ++r) {
            EntityId root = m_.entities[owner(r)].root;
            std::string base = ident(m_.relationships[r].name);
            std::string n = base;
            for (int i = 2; used[root].count(n) || (n != base && user_.count(n)); ++i)
                n = base + "_" + std::to_string(i);
            used[root].insert(n);
            field_.push_back(n);
        }
    }

    ExprPtr rel_expr(const typed::Image &img)
    {
        std::vector<std::string> names;
        for (RelationshipId r : img.rels)
            if (std::find(names.begin(), names.end(), field_[r]) == names.end())
                names.push_back(field_[r]);
        ExprPtr out = alloy::name(names.front());
        for (std::size_t i = 1; i < names.size(); ++i)
            out = alloy::binary(K::Union, out, alloy::name(names[i]));
        return out;
    }

    ExprPtr set(const typed::Set &s)
    {
        return std::visit(
            [&](const auto &n) -> ExprPtr {
                using N = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<N, typed::EntitySet>) {
                    return alloy::name(ident(m_.entities[n.entity].name));
                } else if constexpr (std::is_same_v<N, typed::Var>) {
                    return alloy::name(ident(n.name));
                } else if constexpr (std::is_same_v<N, typed::SetOp>) {
                    K k = n.op == SetOpKind::Union ? K::Union : n.op == SetOpKind::Intersection ? K::Intersect : K::Diff;
                    return alloy::binary(k, set(*n.lhs), set(*n.rhs));
                } else {
                    ExprPtr rel = rel_expr(n);
                    if (n.closure)
                        rel = alloy::unary(K::Closure, rel);
                    return alloy::binary(K::Join, set(*n.from), rel);
                }
            },
            s.node);
    }

    ExprPtr integer(const typed::Int &i)
    {
        if (const auto *l = std::get_if<typed::Literal>(&i.node)) {
            max_literal_ = std::max(max_literal_, l->value);
            return alloy::int_lit(l->value);
        }
        return alloy::unary(K::Card, set(std::get<typed::Card>(i.node).set));
    }

    ExprPtr formula(const typed::Bool &b)
    {
        return std::visit(
            [&](const auto &n) -> ExprPtr {
                using N = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<N, typed::Subset>) {
                    return alloy::binary(K::In, set(n.inner), set(n.outer));
                } else if constexpr (std::is_same_v<N, typed::Member>) {
                    return alloy::binary(K::In, alloy::name(ident(n.elem.name)), set(n.set));
                } else if constexpr (std::is_same_v<N, typed::Compare>) {
                    return alloy::compare(n.op, integer(n.lhs), integer(n.rhs));
                } else if constexpr (std::is_same_v<N, typed::Logic>) {
                    std::vector<ExprPtr> args;
                    for (const auto &a : n.args)
                        args.push_back(formula(a));
                    return alloy::nary(n.op == LogicKind::And ? K::And : K::Or, std::move(args));
                } else if constexpr (std::is_same_v<N, typed::Negation>) {
                    return alloy::unary(K::Not, formula(*n.arg));
                } else if constexpr (std::is_same_v<N, typed::Quant>) {
                    return alloy::quant(std::string(to_string(n.quant)), ident(n.var), set(n.domain), formula(*n.body));
                } else {
                    return alloy::binary(K::Implies, formula(*n.premise), formula(*n.conclusion));
                }
            },
            b.node);
    }

    static ExprPtr count_bound(ExprPtr set_expr, const MultBound &b)
    {
        return alloy::compare(b.op, alloy::unary(K::Card, std::move(set_expr)), alloy::int_lit(b.value));
    }

    static MultBound as_bound(const Multiplicity &m)
    {
        if (m.bound)
            return *m.bound;
        switch (m.base) {
        case MultBase::One: return {RelOp::Eq, 1};
        case MultBase::Lone: return {RelOp::Le, 1};
        default: return {RelOp::Ge, 1};
        }
    }

    void side_constraints(RelationshipId r, std::vector<ExprPtr> &out)
    {
        const auto &rel = m_.relationships[r];
        ExprPtr field = alloy::name(field_[r]);
        bool src_plain = std::holds_alternative<typed::EntitySet>(rel.source.node);
        bool tgt_plain = std::holds_alternative<typed::EntitySet>(rel.target.node);

        // Expression endpoints: the field lives on the root sig, restricted here.
        if (!src_plain) {
            ExprPtr outside = alloy::binary(K::Diff, alloy::name(ident(m_.entities[owner(r)].name)), set(rel.source));
            out.push_back(count_bound(alloy::binary(K::Join, outside, field), {RelOp::Eq, 0}));
        }
        if (!tgt_plain) {
            std::string v = fresh();
            out.push_back(alloy::quant("all", v, set(rel.source),
                                       alloy::binary(K::In, alloy::binary(K::Join, alloy::name(v), field), set(rel.target))));
        }
        for (const auto &b : {rel.source_mult, rel.target_mult})
            if (b.bound)
                max_literal_ = std::max<std::int64_t>(max_literal_, b.bound->value);

        const auto &tm = rel.target_mult;
        bool keyword_field = src_plain && tgt_plain && !tm.bound;
        if (!keyword_field && (tm.bound || tm.base != MultBase::Set)) {
            std::string v = fresh();
            out.push_back(alloy::quant("all", v, set(rel.source),
                                       count_bound(alloy::binary(K::Join, alloy::name(v), field), as_bound(tm))));
        }

        const auto &sm = rel.source_mult;
        if (sm.bound) {
            std::string v = fresh();
            out.push_back(alloy::quant("all", v, set(rel.target),
                                       count_bound(alloy::binary(K::Join, field, alloy::name(v)), *sm.bound)));
        } else if (sm.base != MultBase::Set) {
            std::string t = fresh();
            std::string s = fresh();
            out.push_back(alloy::quant(
                "all", t, set(rel.target),
                alloy::quant(std::string(to_string(sm.base)), s, set(rel.source),
                             alloy::binary(K::In, alloy::name(t), alloy::binary(K::Join, alloy::name(s), field)))));
        }
    }

    static void audit_expr(const Expr &e)
    {
        static const std::set<std::string> kQuants = {"all", "some", "no", "one", "lone"};
        if (e.kind == K::Quant && (!kQuants.count(e.text) || !is_identifier(e.var) || alloy::is_keyword(e.var)))
            throw Error("T1", "quantifier outside the emission table: " + e.text);
        if (e.kind == K::Name && (!is_identifier(e.text) || alloy::is_keyword(e.text)))
            throw Error("T1", "name is not an Alloy identifier: " + e.text);
        for (const auto &k : e.kids) {
            if (!k)
                throw Error("T1", "incomplete Alloy formula");
            audit_expr(*k);
        }
    }

    static void audit(const alloy::Module &mod)
    {
        for (const auto &f : mod.facts)
            for (const auto &e : f.formulas)
                audit_expr(*e);
    }

    const TypedModel &m_;
    std::set<std::string> user_;
    std::map<std::string, std::string> renamed_;
    std::vector<std::string> field_;
    int next_var_ = 0;
    std::int64_t max_literal_ = 0;
};

} // namespace

alloy::Module transpile(const TypedModel &model, int scope)
{
    if (scope < 1)
        throw Error("T1", "scope must be at least 1");
    return Translator(model).run(scope);
}

} // namespace girl
