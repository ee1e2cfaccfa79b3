#include "generate.hpp"

#include "girl/diagnostic.hpp"
#include "girl/syntax.hpp"
#include "girl/validate.hpp"

#include <string>
#include <vector>

namespace support {

using namespace girl;
namespace b = girl::build;

namespace {

int pick(Rng &rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool chance(Rng &rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T &any_of(Rng &rng, const std::vector<T> &v)
{
    return v[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(v.size()) - 1))];
}

RelOp any_relop(Rng &rng) { return static_cast<RelOp>(pick(rng, 0, 4)); }

Multiplicity any_mult(Rng &rng, std::int64_t max_bound)
{
    Multiplicity m;
    m.base = static_cast<MultBase>(pick(rng, 0, 3));
    if (m.base == MultBase::Set && chance(rng, 0.3))
        m.bound = MultBound{any_relop(rng), pick(rng, 0, static_cast<int>(max_bound))};
    return m;
}

struct Names {
    std::vector<std::string> entities;
    std::vector<std::string> relations;
};

class ExprGen {
public:
    ExprGen(Rng &rng, const Names &names, std::int64_t max_literal)
        : rng_(rng), names_(names), max_literal_(max_literal)
    {
    }

    SetTerm set(int depth, const std::vector<std::string> &vars)
    {
        int choice = depth <= 0 ? pick(rng_, 0, 1) : pick(rng_, 0, 3);
        if (choice == 1 && !vars.empty())
            return b::var(any_of(rng_, vars));
        if (choice == 2)
            return b::set_op(static_cast<SetOpKind>(pick(rng_, 0, 2)), set(depth - 1, vars), set(depth - 1, vars));
        if (choice == 3 && !names_.relations.empty())
            return b::image(set(depth - 1, vars), any_of(rng_, names_.relations), chance(rng_, 0.3));
        return b::entity(any_of(rng_, names_.entities));
    }

    IntTerm integer(int depth, const std::vector<std::string> &vars)
    {
        if (chance(rng_, 0.4))
            return b::lit(std::uniform_int_distribution<std::int64_t>(0, max_literal_)(rng_));
        return b::card(set(depth, vars));
    }

    BoolExpr boolean(int depth, std::vector<std::string> &vars)
    {
        int choice = depth <= 0 ? pick(rng_, 0, 2) : pick(rng_, 0, 6);
        switch (choice) {
        case 0:
            return b::contains(set(depth - 1, vars), set(depth - 1, vars));
        case 1:
            if (!vars.empty())
                return b::member(any_of(rng_, vars), set(depth - 1, vars));
            [[fallthrough]];
        case 2:
            return b::cmp(any_relop(rng_), integer(depth - 1, vars), integer(depth - 1, vars));
        case 3: {
            std::vector<BoolExpr> args;
            int n = pick(rng_, 2, 3);
            for (int i = 0; i < n; ++i)
                args.push_back(boolean(depth - 1, vars));
            return b::logic(chance(rng_, 0.5) ? LogicKind::And : LogicKind::Or, std::move(args));
        }
        case 4:
            return b::negate(boolean(depth - 1, vars));
        case 5: {
            SetTerm domain = set(depth - 1, vars);
            std::string v = "x" + std::to_string(vars.size());
            vars.push_back(v);
            BoolExpr body = boolean(depth - 1, vars);
            vars.pop_back();
            return b::quant(static_cast<Quantifier>(pick(rng_, 0, 3)), v, std::move(domain), std::move(body));
        }
        default:
            return b::implies(boolean(depth - 1, vars), boolean(depth - 1, vars));
        }
    }

private:
    Rng &rng_;
    const Names &names_;
    std::int64_t max_literal_;
};

} // namespace

Model random_model(Rng &rng)
{
    Model m;
    Names names;
    int entities = pick(rng, 1, 5);
    for (int i = 0; i < entities; ++i) {
        EntityDecl e;
        e.name = "E" + std::to_string(i);
        e.kind = static_cast<EntityKind>(pick(rng, 0, 2));
        if (i > 0 && chance(rng, 0.4))
            e.parent = "E" + std::to_string(pick(rng, 0, i - 1));
        names.entities.push_back(e.name);
        m.entities.push_back(e);
    }
    int rels = pick(rng, 0, 3);
    for (int i = 0; i < rels; ++i)
        names.relations.push_back("r" + std::to_string(i));
    ExprGen gen(rng, names, kMaxLiteral);
    std::vector<std::string> no_vars;
    for (const auto &name : names.relations) {
        RelationshipDecl r;
        r.name = name;
        r.source = gen.set(1, no_vars);
        r.target = gen.set(1, no_vars);
        r.source_mult = any_mult(rng, kMaxLiteral);
        r.target_mult = any_mult(rng, kMaxLiteral);
        m.relationships.push_back(std::move(r));
    }
    int invs = pick(rng, 0, 3);
    for (int i = 0; i < invs; ++i) {
        std::vector<std::string> vars;
        m.invariants.push_back(Invariant{"I" + std::to_string(i), gen.boolean(4, vars), {}});
    }
    return m;
}

Model random_valid_model(Rng &rng)
{
    for (;;) {
        Model m;
        Names names;
        int roots = pick(rng, 1, 2);
        int entities = pick(rng, roots, 3);
        for (int i = 0; i < entities; ++i) {
            EntityDecl e;
            e.name = "E" + std::to_string(i);
            e.kind = chance(rng, 0.6) ? EntityKind::Plain : static_cast<EntityKind>(pick(rng, 1, 2));
            if (i >= roots)
                e.parent = "E" + std::to_string(pick(rng, 0, i - 1));
            names.entities.push_back(e.name);
            m.entities.push_back(e);
        }
        int rels = pick(rng, 0, 2);
        for (int i = 0; i < rels; ++i)
            names.relations.push_back("r" + std::to_string(i));
        ExprGen gen(rng, names, 3);
        std::vector<std::string> no_vars;
        for (const auto &name : names.relations) {
            RelationshipDecl r;
            r.name = name;
            r.source = chance(rng, 0.8) ? b::entity(any_of(rng, names.entities)) : gen.set(1, no_vars);
            r.target = chance(rng, 0.8) ? b::entity(any_of(rng, names.entities)) : gen.set(1, no_vars);
            r.source_mult = any_mult(rng, 2);
            r.target_mult = any_mult(rng, 2);
            m.relationships.push_back(std::move(r));
        }
        int invs = pick(rng, 0, 2);
        for (int i = 0; i < invs; ++i) {
            std::vector<std::string> vars;
            m.invariants.push_back(Invariant{"I" + std::to_string(i), gen.boolean(3, vars), {}});
        }
        if (!has_errors(validate(m)))
            return m;
    }
}

std::set<std::pair<int, int>> random_relation(Rng &rng, int n)
{
    std::set<std::pair<int, int>> r;
    double density = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
            if (chance(rng, density))
                r.insert({s, t});
    return r;
}

} // namespace support
