#include "girl/diagnostic.hpp"
#include "girl/typed_model.hpp"

#include "endpoints.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace girl {

namespace typed {

bool is_static(const Set &s)
{
    return std::visit(
        [](const auto &n) -> bool {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, SetOp>)
                return is_static(*n.lhs) && is_static(*n.rhs);
            else if constexpr (std::is_same_v<N, Image>)
                return false;
            else
                return true;
        },
        s.node);
}

} // namespace typed

std::optional<EntityId> TypedModel::find_entity(std::string_view name) const
{
    for (EntityId i = 0; i < entities.size(); ++i)
        if (entities[i].name == name)
            return i;
    return std::nullopt;
}

bool TypedModel::is_ancestor_or_self(EntityId ancestor, EntityId e) const
{
    for (std::optional<EntityId> cur = e; cur; cur = entities[*cur].parent)
        if (*cur == ancestor)
            return true;
    return false;
}

namespace {

using detail::RootSet;

class Resolver {
public:
    explicit Resolver(const Model &m) { out_.source = m; }

    TypedModel run()
    {
        const Model &m = out_.source;
        for (const auto &e : m.entities) {
            if (index_.count(e.name))
                throw InternalError("duplicate entity '" + e.name + "'");
            index_.emplace(e.name, out_.entities.size());
            out_.entities.push_back(TypedEntity{e.name, e.kind, std::nullopt, {}, 0});
        }
        for (EntityId i = 0; i < m.entities.size(); ++i) {
            if (const auto &p = m.entities[i].parent) {
                EntityId parent = entity(*p);
                out_.entities[i].parent = parent;
                out_.entities[parent].children.push_back(i);
            }
        }
        for (EntityId i = 0; i < out_.entities.size(); ++i) {
            EntityId cur = i;
            std::size_t steps = 0;
            while (out_.entities[cur].parent) {
                cur = *out_.entities[cur].parent;
                if (++steps > out_.entities.size())
                    throw InternalError("extension cycle through '" + out_.entities[i].name + "'");
            }
            out_.entities[i].root = cur;
            if (cur == i)
                out_.roots.push_back(i);
        }

        for (const auto &r : m.relationships)
            rel_index_[r.name];
        for (RelationshipId i = 0; i < m.relationships.size(); ++i)
            rel_index_[m.relationships[i].name].push_back(i);

        // Endpoint roots first: images inside endpoints need target roots.
        out_.relationships.resize(m.relationships.size());
        auto ends = detail::endpoint_roots(m, [this](const std::string &e) -> std::optional<std::size_t> {
            auto it = index_.find(e);
            if (it == index_.end())
                return std::nullopt;
            return out_.entities[it->second].root;
        });
        for (RelationshipId i = 0; i < m.relationships.size(); ++i) {
            const auto &r = m.relationships[i];
            auto &tr = out_.relationships[i];
            tr.name = r.name;
            tr.source_mult = r.source_mult;
            tr.target_mult = r.target_mult;
            tr.source_root = single_root(ends.source[i], r.name);
            tr.target_root = single_root(ends.target[i], r.name);
        }
        for (RelationshipId i = 0; i < m.relationships.size(); ++i) {
            const auto &r = m.relationships[i];
            scope_.clear();
            out_.relationships[i].source = set(r.source);
            out_.relationships[i].target = set(r.target);
        }

        for (const auto &inv : m.invariants) {
            scope_.clear();
            binders_ = 0;
            out_.invariants.push_back(TypedInvariant{inv.context, boolean(inv.body)});
        }
        return std::move(out_);
    }

private:
    struct Binder {
        std::string name;
        std::size_t binder;
    };

    EntityId entity(const std::string &name) const
    {
        auto it = index_.find(name);
        if (it == index_.end())
            throw InternalError("unresolved entity '" + name + "'");
        return it->second;
    }

    const std::vector<RelationshipId> &relationship(const std::string &name) const
    {
        auto it = rel_index_.find(name);
        if (it == rel_index_.end())
            throw InternalError("unresolved relationship '" + name + "'");
        return it->second;
    }

    static EntityId single_root(const RootSet &roots, const std::string &rel)
    {
        if (roots.size() != 1)
            throw InternalError("relationship '" + rel + "' end does not lie within one top-level entity");
        return *roots.begin();
    }

    typed::Set set(const SetTerm &t)
    {
        return std::visit(
            [&](const auto &n) -> typed::Set {
                using N = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<N, EntityRef>) {
                    return typed::Set{typed::EntitySet{entity(n.name)}};
                } else if constexpr (std::is_same_v<N, VarRef>) {
                    return typed::Set{var(n.name)};
                } else if constexpr (std::is_same_v<N, SetOp>) {
                    return typed::Set{typed::SetOp{n.op, set(*n.lhs), set(*n.rhs)}};
                } else {
                    const auto &rels = relationship(n.rel.name);
                    return typed::Set{typed::Image{n.rel.name, rels, n.rel.closure, set(*n.from)}};
                }
            },
            t.node);
    }

    typed::Var var(const std::string &name) const
    {
        for (std::size_t i = scope_.size(); i-- > 0;)
            if (scope_[i].name == name)
                return typed::Var{name, i, scope_[i].binder};
        throw InternalError("unbound variable '" + name + "'");
    }

    typed::Int integer(const IntTerm &t)
    {
        if (const auto *l = std::get_if<IntLiteral>(&t.node))
            return typed::Int{typed::Literal{l->value}};
        return typed::Int{typed::Card{set(std::get<Cardinality>(t.node).set)}};
    }

    typed::Bool boolean(const BoolExpr &b)
    {
        return std::visit(
            [&](const auto &n) -> typed::Bool {
                using N = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<N, Containment>) {
                    return typed::Bool{typed::Subset{set(n.inner), set(n.outer)}};
                } else if constexpr (std::is_same_v<N, Membership>) {
                    return typed::Bool{typed::Member{var(n.elem.name), set(n.set)}};
                } else if constexpr (std::is_same_v<N, RelationalOp>) {
                    return typed::Bool{typed::Compare{n.op, integer(n.lhs), integer(n.rhs)}};
                } else if constexpr (std::is_same_v<N, LogicalOp>) {
                    typed::Logic l{n.op, {}};
                    for (const auto &a : n.args)
                        l.args.push_back(boolean(a));
                    return typed::Bool{std::move(l)};
                } else if constexpr (std::is_same_v<N, Not>) {
                    return typed::Bool{typed::Negation{boolean(*n.arg)}};
                } else if constexpr (std::is_same_v<N, Quantification>) {
                    typed::Set domain = set(n.domain);
                    std::size_t binder = binders_++;
                    std::size_t slot = scope_.size();
                    scope_.push_back({n.var, binder});
                    out_.max_depth_ = std::max(out_.max_depth_, scope_.size());
                    typed::Bool body = boolean(*n.body);
                    scope_.pop_back();
                    return typed::Bool{typed::Quant{n.quant, n.var, slot, binder, std::move(domain), std::move(body)}};
                } else {
                    return typed::Bool{typed::Implies{boolean(*n.premise), boolean(*n.conclusion)}};
                }
            },
            b.node);
    }

    TypedModel out_;
    std::map<std::string, EntityId> index_;
    std::map<std::string, std::vector<RelationshipId>> rel_index_;
    std::vector<Binder> scope_;
    std::size_t binders_ = 0;
};

} // namespace

TypedModel resolve(const Model &model) { return Resolver(model).run(); }

} // namespace girl
