#include "constraints.hpp"

#include "girl/solve.hpp"
#include "girl/syntax.hpp"

namespace girl {

namespace detail {

bool constrains(const Multiplicity &m)
{
    return m.bound || m.base != MultBase::Set;
}

RelationCheck check_relation(const TypedModel &model, const Instance &inst, Evaluator &eval, RelationshipId r)
{
    const auto &rel = model.relationships[r];
    const auto &rows = inst.relations[r];
    Env env(model.max_depth());
    AtomSet src = eval.value(rel.source, env);
    AtomSet tgt = eval.value(rel.target, env);
    RelationCheck out;
    std::vector<std::int64_t> incoming(rows.size(), 0);
    for (AtomId s = 0; s < rows.size(); ++s) {
        if (rows[s].empty())
            continue;
        if (!src.test(s) || !rows[s].subset_of(tgt))
            out.endpoints = false;
        rows[s].for_each([&](AtomId t) { ++incoming[t]; });
    }
    src.for_each([&](AtomId s) {
        if (!admits(rel.target_mult, static_cast<std::int64_t>(rows[s].count())))
            out.target_mult = false;
    });
    tgt.for_each([&](AtomId t) {
        if (!admits(rel.source_mult, incoming[t]))
            out.source_mult = false;
    });
    return out;
}

void relations_read(const typed::Set &s, std::set<RelationshipId> &out)
{
    std::visit(
        [&](const auto &n) {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, typed::SetOp>) {
                relations_read(*n.lhs, out);
                relations_read(*n.rhs, out);
            } else if constexpr (std::is_same_v<N, typed::Image>) {
                out.insert(n.rels.begin(), n.rels.end());
                relations_read(*n.from, out);
            }
        },
        s.node);
}

static void relations_read(const typed::Int &i, std::set<RelationshipId> &out)
{
    if (const auto *c = std::get_if<typed::Card>(&i.node))
        relations_read(c->set, out);
}

void relations_read(const typed::Bool &b, std::set<RelationshipId> &out)
{
    std::visit(
        [&](const auto &n) {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, typed::Subset>) {
                relations_read(n.inner, out);
                relations_read(n.outer, out);
            } else if constexpr (std::is_same_v<N, typed::Member>) {
                relations_read(n.set, out);
            } else if constexpr (std::is_same_v<N, typed::Compare>) {
                relations_read(n.lhs, out);
                relations_read(n.rhs, out);
            } else if constexpr (std::is_same_v<N, typed::Logic>) {
                for (const auto &a : n.args)
                    relations_read(a, out);
            } else if constexpr (std::is_same_v<N, typed::Negation>) {
                relations_read(*n.arg, out);
            } else if constexpr (std::is_same_v<N, typed::Quant>) {
                relations_read(n.domain, out);
                relations_read(*n.body, out);
            } else {
                relations_read(*n.premise, out);
                relations_read(*n.conclusion, out);
            }
        },
        b.node);
}

} // namespace detail

std::string_view to_string(ConstraintVerdict::Kind k)
{
    switch (k) {
    case ConstraintVerdict::Kind::Invariant: return "invariant";
    case ConstraintVerdict::Kind::Multiplicity: return "multiplicity";
    case ConstraintVerdict::Kind::Structure: return "structure";
    }
    return "?";
}

std::vector<ConstraintVerdict> check_instance(const TypedModel &model, const Instance &instance)
{
    using Kind = ConstraintVerdict::Kind;
    if (instance.relations.size() != model.relationships.size() ||
        instance.universe.extent.size() != model.entities.size())
        throw Error("C1", "instance does not match the model's entities and relationships");
    for (const auto &rows : instance.relations)
        if (rows.size() != instance.universe.atoms.size())
            throw Error("C1", "relation rows do not match the universe");

    std::vector<ConstraintVerdict> out;
    const auto &u = instance.universe;
    for (EntityId e = 0; e < model.entities.size(); ++e) {
        const auto &ent = model.entities[e];
        if (ent.kind == EntityKind::Singleton)
            out.push_back({Kind::Structure, "singleton " + ent.name, u.extent[e].count() == 1});
        if (ent.kind == EntityKind::Abstract && !ent.children.empty()) {
            bool covered = true;
            for (const auto &a : u.atoms)
                covered = covered && a.entity != e;
            out.push_back({Kind::Structure, "abstract " + ent.name, covered});
        }
    }

    Evaluator eval(model, instance);
    std::vector<detail::RelationCheck> rel_checks;
    for (RelationshipId r = 0; r < model.relationships.size(); ++r) {
        rel_checks.push_back(detail::check_relation(model, instance, eval, r));
        out.push_back({Kind::Structure, relation_key(model, r) + " endpoints", rel_checks.back().endpoints});
    }
    for (RelationshipId r = 0; r < model.relationships.size(); ++r) {
        const auto &rel = model.relationships[r];
        std::string key = relation_key(model, r);
        if (detail::constrains(rel.source_mult))
            out.push_back({Kind::Multiplicity, key + " source " + print(rel.source_mult), rel_checks[r].source_mult});
        if (detail::constrains(rel.target_mult))
            out.push_back({Kind::Multiplicity, key + " target " + print(rel.target_mult), rel_checks[r].target_mult});
    }
    for (const auto &inv : model.invariants)
        out.push_back({Kind::Invariant, inv.context, eval.holds(inv)});
    return out;
}

} // namespace girl
