#include "girl/validate.hpp"

#include "endpoints.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace girl {

namespace {

bool set_mentions_relationship(const SetTerm &t)
{
    return std::visit(
        [](const auto &n) -> bool {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Image>)
                return true;
            else if constexpr (std::is_same_v<N, SetOp>)
                return set_mentions_relationship(*n.lhs) || set_mentions_relationship(*n.rhs);
            else
                return false;
        },
        t.node);
}

bool int_mentions_relationship(const IntTerm &t)
{
    if (const auto *c = std::get_if<Cardinality>(&t.node))
        return set_mentions_relationship(c->set);
    return false;
}

bool reserved_generated_name(const std::string &id)
{
    return id.size() >= 2 && id[0] == 'v' && id[1] >= '0' && id[1] <= '9';
}

using detail::RootSet;

class Validator {
public:
    explicit Validator(const Model &m) : model_(m) {}

    std::vector<Diagnostic> run()
    {
        check_entities();
        check_relationships();
        for (std::size_t i = 0; i < model_.invariants.size(); ++i)
            check_invariant(i);
        return std::move(diags_);
    }

private:
    struct Binder {
        std::string name;
        RootSet roots;
    };

    void report(Severity sev, const char *rule, const SourceSpan &span, std::string path, std::string msg)
    {
        Diagnostic d;
        d.severity = sev;
        d.rule = rule;
        if (span.valid())
            d.span = span;
        d.path = std::move(path);
        d.message = std::move(msg);
        diags_.push_back(std::move(d));
    }

    void error(const char *rule, const SourceSpan &span, std::string path, std::string msg)
    {
        report(Severity::Error, rule, span, std::move(path), std::move(msg));
    }

    void warn_reserved(const std::string &id, const SourceSpan &span, const std::string &path)
    {
        if (reserved_generated_name(id))
            report(Severity::Warning, "W2", span, path,
                   "identifier '" + id + "' has the form reserved for generated variables (v<digit>...)");
    }

    // -- entities ----------------------------------------------------------

    void check_entities()
    {
        std::set<std::string> seen;
        for (std::size_t i = 0; i < model_.entities.size(); ++i) {
            const auto &e = model_.entities[i];
            const std::string path = "entities[" + std::to_string(i) + "]";
            if (!seen.insert(e.name).second)
                error("V1", e.span, path, "duplicate entity '" + e.name + "'");
            else
                index_.emplace(e.name, i);
            warn_reserved(e.name, e.span, path);
        }
        for (std::size_t i = 0; i < model_.entities.size(); ++i) {
            const auto &e = model_.entities[i];
            if (e.parent && !index_.count(*e.parent))
                error("V2", e.span, "entities[" + std::to_string(i) + "]",
                      "entity '" + e.name + "' extends undeclared entity '" + *e.parent + "'");
        }

        // Follow parent links; a walk longer than the entity count is a cycle.
        forest_ok_ = true;
        std::set<std::string> reported;
        for (std::size_t i = 0; i < model_.entities.size(); ++i) {
            const auto &e = model_.entities[i];
            if (index_.at(e.name) != i)
                continue;
            std::size_t cur = i;
            std::size_t steps = 0;
            bool cyclic = false;
            while (model_.entities[cur].parent) {
                auto it = index_.find(*model_.entities[cur].parent);
                if (it == index_.end())
                    break;
                cur = it->second;
                if (cur == i || ++steps > model_.entities.size()) {
                    cyclic = true;
                    break;
                }
            }
            if (cyclic) {
                forest_ok_ = false;
                if (reported.insert(e.name).second)
                    error("V3", e.span, "entities[" + std::to_string(i) + "]",
                          "entity '" + e.name + "' is part of an extension cycle");
            }
        }
    }

    std::optional<std::size_t> root_of(const std::string &entity) const
    {
        if (!forest_ok_)
            return std::nullopt;
        auto it = index_.find(entity);
        if (it == index_.end())
            return std::nullopt;
        std::size_t cur = it->second;
        while (model_.entities[cur].parent) {
            auto p = index_.find(*model_.entities[cur].parent);
            if (p == index_.end())
                return std::nullopt;
            cur = p->second;
        }
        return cur;
    }

    // -- set terms ---------------------------------------------------------

    enum class Where { Relationship, Invariant };

    // Checks a set term and returns the top-level entities its atoms may
    // belong to (empty when unknown because of an earlier error).
    RootSet check_set(const SetTerm &t, Where where, const std::string &path)
    {
        return std::visit(
            [&](const auto &n) -> RootSet {
                using N = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<N, EntityRef>) {
                    if (!index_.count(n.name)) {
                        if (where == Where::Relationship)
                            error("V5", t.span, path,
                                  "relationship end uses entity '" + n.name + "' which is never declared");
                        else
                            error("V2", t.span, path, "unresolved entity '" + n.name + "'");
                        return {};
                    }
                    if (auto r = root_of(n.name))
                        return {*r};
                    return {};
                } else if constexpr (std::is_same_v<N, VarRef>) {
                    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
                        if (it->name == n.name)
                            return it->roots;
                    error("V8", n.span.valid() ? n.span : t.span, path, "unbound variable '" + n.name + "'");
                    return {};
                } else if constexpr (std::is_same_v<N, SetOp>) {
                    RootSet l = check_set(*n.lhs, where, path);
                    RootSet r = check_set(*n.rhs, where, path);
                    if (n.op == SetOpKind::Union) {
                        l.insert(r.begin(), r.end());
                        return l;
                    }
                    if (n.op == SetOpKind::Intersection) {
                        RootSet out;
                        std::set_intersection(l.begin(), l.end(), r.begin(), r.end(),
                                              std::inserter(out, out.end()));
                        return out;
                    }
                    return l;
                } else {
                    check_set(*n.from, where, path);
                    return check_rel(n.rel, t.span, path);
                }
            },
            t.node);
    }

    RootSet check_rel(const RelTerm &rel, const SourceSpan &span, const std::string &path)
    {
        auto it = rel_types_.find(rel.name);
        if (it == rel_types_.end()) {
            error("V2", rel.span.valid() ? rel.span : span, path, "unresolved relationship '" + rel.name + "'");
            return {};
        }
        RootSet targets;
        for (const auto &[src, tgt] : it->second) {
            targets.insert(tgt.begin(), tgt.end());
            if (rel.closure && !src.empty() && !tgt.empty()) {
                RootSet common;
                std::set_intersection(src.begin(), src.end(), tgt.begin(), tgt.end(),
                                      std::inserter(common, common.end()));
                if (common.empty())
                    error("V4", rel.span.valid() ? rel.span : span, path,
                          "transitive closure of '" + rel.name +
                              "' requires source and target of a common entity type");
            }
        }
        return targets;
    }

    // -- relationships -----------------------------------------------------

    void check_relationships()
    {
        // First pass: names and endpoint types, so images inside endpoints
        // can refer to any relationship regardless of order.
        std::set<std::pair<std::string, std::string>> seen;
        for (std::size_t i = 0; i < model_.relationships.size(); ++i) {
            const auto &r = model_.relationships[i];
            const std::string path = "relationships[" + std::to_string(i) + "]";
            if (index_.count(r.name))
                error("V1", r.span, path, "relationship '" + r.name + "' has the name of an entity");
            std::string src_key = source_key(r.source);
            if (!seen.emplace(src_key, r.name).second)
                error("V1", r.span, path, "duplicate relationship '" + r.name + "' on the same source");
            warn_reserved(r.name, r.span, path);
            rel_types_[r.name];
        }
        auto ends = detail::endpoint_roots(model_, [this](const std::string &e) { return root_of(e); });
        for (std::size_t i = 0; i < model_.relationships.size(); ++i)
            rel_types_[model_.relationships[i].name].push_back({ends.source[i], ends.target[i]});
        for (std::size_t i = 0; i < model_.relationships.size(); ++i) {
            const auto &r = model_.relationships[i];
            const std::string path = "relationships[" + std::to_string(i) + "]";
            std::size_t before = diags_.size();
            RootSet src = check_set(r.source, Where::Relationship, path + ".source");
            RootSet tgt = check_set(r.target, Where::Relationship, path + ".target");
            if (!has_errors_since(before)) {
                if (src.size() != 1)
                    error("V9", r.source.span, path + ".source",
                          "relationship '" + r.name + "' source must lie within a single top-level entity");
                if (tgt.size() != 1)
                    error("V9", r.target.span, path + ".target",
                          "relationship '" + r.name + "' target must lie within a single top-level entity");
            }
        }
    }

    static std::string source_key(const SetTerm &t)
    {
        if (const auto *e = std::get_if<EntityRef>(&t.node))
            return e->name;
        return "<expr>";
    }

    bool has_errors_since(std::size_t mark) const
    {
        return std::any_of(diags_.begin() + static_cast<std::ptrdiff_t>(mark), diags_.end(),
                           [](const Diagnostic &d) { return d.severity == Severity::Error; });
    }

    // -- invariants --------------------------------------------------------

    void check_invariant(std::size_t i)
    {
        const auto &inv = model_.invariants[i];
        const std::string path = "invariants[" + std::to_string(i) + "]";
        warn_reserved(inv.context, inv.span, path);
        scope_.clear();
        check_bool(inv.body, path + ".body");
    }

    void check_int(const IntTerm &t, const std::string &path)
    {
        if (const auto *c = std::get_if<Cardinality>(&t.node))
            check_set(c->set, Where::Invariant, path);
    }

    // Does the expression quantify, or use a variable bound outside it?
    bool has_quantifier(const BoolExpr &b) const
    {
        return std::visit(
            [&](const auto &n) -> bool {
                using N = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<N, Quantification>)
                    return true;
                else if constexpr (std::is_same_v<N, Containment>)
                    return set_uses_var(n.inner) || set_uses_var(n.outer);
                else if constexpr (std::is_same_v<N, Membership>)
                    return true;
                else if constexpr (std::is_same_v<N, RelationalOp>)
                    return int_uses_var(n.lhs) || int_uses_var(n.rhs);
                else if constexpr (std::is_same_v<N, LogicalOp>)
                    return std::any_of(n.args.begin(), n.args.end(),
                                       [&](const BoolExpr &a) { return has_quantifier(a); });
                else if constexpr (std::is_same_v<N, Not>)
                    return has_quantifier(*n.arg);
                else
                    return has_quantifier(*n.premise) || has_quantifier(*n.conclusion);
            },
            b.node);
    }

    static bool set_uses_var(const SetTerm &t)
    {
        return std::visit(
            [](const auto &n) -> bool {
                using N = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<N, VarRef>)
                    return true;
                else if constexpr (std::is_same_v<N, SetOp>)
                    return set_uses_var(*n.lhs) || set_uses_var(*n.rhs);
                else if constexpr (std::is_same_v<N, Image>)
                    return set_uses_var(*n.from);
                else
                    return false;
            },
            t.node);
    }

    static bool int_uses_var(const IntTerm &t)
    {
        if (const auto *c = std::get_if<Cardinality>(&t.node))
            return set_uses_var(c->set);
        return false;
    }

    void check_bool(const BoolExpr &b, const std::string &path)
    {
        std::visit(
            [&](const auto &n) {
                using N = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<N, Containment>) {
                    check_set(n.inner, Where::Invariant, path);
                    check_set(n.outer, Where::Invariant, path);
                } else if constexpr (std::is_same_v<N, Membership>) {
                    check_set(SetTerm{n.elem, n.elem.span}, Where::Invariant, path);
                    check_set(n.set, Where::Invariant, path);
                } else if constexpr (std::is_same_v<N, RelationalOp>) {
                    check_int(n.lhs, path);
                    check_int(n.rhs, path);
                } else if constexpr (std::is_same_v<N, LogicalOp>) {
                    for (std::size_t k = 0; k < n.args.size(); ++k)
                        check_bool(n.args[k], path + ".args[" + std::to_string(k) + "]");
                } else if constexpr (std::is_same_v<N, Not>) {
                    check_bool(*n.arg, path + ".arg");
                } else if constexpr (std::is_same_v<N, Quantification>) {
                    RootSet roots = check_set(n.domain, Where::Invariant, path + ".domain");
                    if (std::any_of(scope_.begin(), scope_.end(),
                                    [&](const Binder &x) { return x.name == n.var; }))
                        report(Severity::Warning, "W1", b.span, path,
                               "variable '" + n.var + "' shadows an outer variable of the same name");
                    warn_reserved(n.var, b.span, path);
                    scope_.push_back({n.var, std::move(roots)});
                    check_bool(*n.body, path + ".body");
                    scope_.pop_back();
                } else {
                    check_bool(*n.premise, path + ".premise");
                    check_bool(*n.conclusion, path + ".conclusion");
                    if (is_relationship_membership(*n.premise)) {
                        if (!mentions_relationship(*n.conclusion))
                            error("V7", n.conclusion->span.valid() ? n.conclusion->span : b.span, path,
                                  "implication premise is a relationship, so the conclusion must involve a "
                                  "relationship too");
                    } else if (!has_quantifier(*n.premise)) {
                        error("V6", n.premise->span.valid() ? n.premise->span : b.span, path,
                              "implication premise must contain at least one quantifier");
                    }
                }
            },
            b.node);
    }

    const Model &model_;
    std::vector<Diagnostic> diags_;
    std::map<std::string, std::size_t> index_;
    std::map<std::string, std::vector<std::pair<RootSet, RootSet>>> rel_types_;
    std::vector<Binder> scope_;
    bool forest_ok_ = true;
};

} // namespace

bool mentions_relationship(const BoolExpr &expr)
{
    return std::visit(
        [](const auto &n) -> bool {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Containment>)
                return set_mentions_relationship(n.inner) || set_mentions_relationship(n.outer);
            else if constexpr (std::is_same_v<N, Membership>)
                return set_mentions_relationship(n.set);
            else if constexpr (std::is_same_v<N, RelationalOp>)
                return int_mentions_relationship(n.lhs) || int_mentions_relationship(n.rhs);
            else if constexpr (std::is_same_v<N, LogicalOp>)
                return std::any_of(n.args.begin(), n.args.end(),
                                   [](const BoolExpr &a) { return mentions_relationship(a); });
            else if constexpr (std::is_same_v<N, Not>)
                return mentions_relationship(*n.arg);
            else if constexpr (std::is_same_v<N, Quantification>)
                return set_mentions_relationship(n.domain) || mentions_relationship(*n.body);
            else
                return mentions_relationship(*n.premise) || mentions_relationship(*n.conclusion);
        },
        expr.node);
}

bool is_relationship_membership(const BoolExpr &expr)
{
    if (const auto *m = std::get_if<Membership>(&expr.node))
        return set_mentions_relationship(m->set);
    if (const auto *c = std::get_if<Containment>(&expr.node))
        return set_mentions_relationship(c->inner) || set_mentions_relationship(c->outer);
    return false;
}

std::vector<Diagnostic> validate(const Model &model) { return Validator(model).run(); }

} // namespace girl
