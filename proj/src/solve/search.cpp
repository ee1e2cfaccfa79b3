#include "constraints.hpp"

#include "girl/diagnostic.hpp"
#include "girl/solve.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

namespace girl {

namespace {

constexpr std::size_t kMaxRowWidth = 24;

// Atom-count configurations of one top-level entity's subtree: how many
// atoms each position (an entity able to hold atoms directly) gets.
struct RootConfigs {
    std::vector<EntityId> positions;              // pre-order
    std::vector<std::vector<std::vector<std::size_t>>> by_total; // [total] -> configs, lexicographic
};

void collect_positions(const TypedModel &m, EntityId e, std::vector<EntityId> &out)
{
    const auto &ent = m.entities[e];
    if (!(ent.kind == EntityKind::Abstract && !ent.children.empty()))
        out.push_back(e);
    for (EntityId c : ent.children)
        collect_positions(m, c, out);
}

std::size_t subtree_size(const TypedModel &m, EntityId e, const std::vector<std::size_t> &direct)
{
    std::size_t n = direct[e];
    for (EntityId c : m.entities[e].children)
        n += subtree_size(m, c, direct);
    return n;
}

bool singletons_ok(const TypedModel &m, EntityId e, const std::vector<std::size_t> &direct)
{
    if (m.entities[e].kind == EntityKind::Singleton && subtree_size(m, e, direct) != 1)
        return false;
    for (EntityId c : m.entities[e].children)
        if (!singletons_ok(m, c, direct))
            return false;
    return true;
}

RootConfigs root_configs(const TypedModel &m, EntityId root, std::size_t bound)
{
    RootConfigs rc;
    collect_positions(m, root, rc.positions);
    rc.by_total.resize(bound + 1);
    std::vector<std::size_t> counts(rc.positions.size(), 0);
    std::vector<std::size_t> direct(m.entities.size(), 0);
    std::function<void(std::size_t, std::size_t)> gen = [&](std::size_t i, std::size_t left) {
        if (i == counts.size()) {
            for (std::size_t k = 0; k < counts.size(); ++k)
                direct[rc.positions[k]] = counts[k];
            if (singletons_ok(m, root, direct))
                rc.by_total[bound - left].push_back(counts);
            return;
        }
        for (std::size_t c = 0; c <= left; ++c) {
            counts[i] = c;
            gen(i + 1, left - c);
        }
        counts[i] = 0;
    };
    gen(0, bound);
    return rc;
}

class Search {
public:
    using Leaf = std::function<bool(const Instance &)>; // false stops the search

    Search(const TypedModel &m, const Scope &scope, const SearchOptions &opt) : m_(m), scope_(scope), opt_(opt)
    {
        for (const auto &[name, bound] : scope.per_entity) {
            auto id = m.find_entity(name);
            if (!id || m.entities[*id].parent)
                throw Error("U2", "scope override '" + name + "' is not a top-level entity");
            if (bound < 1)
                throw Error("U2", "scope for '" + name + "' must be at least 1");
        }
        if (scope.default_bound < 1)
            throw Error("U2", "scope must be at least 1");
        plan_constraints();
    }

    void run(const Leaf &leaf)
    {
        leaf_ = &leaf;
        std::vector<RootConfigs> configs;
        std::size_t max_total = 0;
        for (EntityId root : m_.roots) {
            auto bound = static_cast<std::size_t>(scope_.bound_for(m_, root));
            configs.push_back(root_configs(m_, root, bound));
            max_total += bound;
        }
        if (max_total > AtomSet::kCapacity)
            throw Error("U2", "scope allows more than " + std::to_string(AtomSet::kCapacity) + " atoms");

        std::vector<std::size_t> root_sizes(m_.roots.size());
        std::function<void(std::size_t, std::size_t)> sizes = [&](std::size_t i, std::size_t left) {
            if (stop_)
                return;
            if (i == root_sizes.size()) {
                if (left == 0)
                    per_root_configs(configs, root_sizes);
                return;
            }
            for (std::size_t n = 0; n < configs[i].by_total.size() && n <= left && !stop_; ++n) {
                if (configs[i].by_total[n].empty())
                    continue;
                root_sizes[i] = n;
                sizes(i + 1, left - n);
            }
        };
        for (std::size_t total = 0; total <= max_total && !stop_; ++total)
            sizes(0, total);
    }

    [[nodiscard]] std::uint64_t explored() const { return explored_; }

private:
    void tick()
    {
        if (++explored_ > opt_.max_candidates)
            throw Error("S1", "search budget of " + std::to_string(opt_.max_candidates) +
                                  " candidates exhausted before a verdict");
    }

    // Constraint schedule: after relationship k is complete (slot k + 1), or
    // before any relationship (slot 0), the constraints reading nothing later.
    void plan_constraints()
    {
        std::size_t nrel = m_.relationships.size();
        schedule_.assign(nrel + 1, {});
        for (RelationshipId r = 0; r < nrel; ++r) {
            const auto &rel = m_.relationships[r];
            if (typed::is_static(rel.source) && typed::is_static(rel.target))
                continue;
            std::set<RelationshipId> deps{r};
            detail::relations_read(rel.source, deps);
            detail::relations_read(rel.target, deps);
            schedule_[*deps.rbegin() + 1].push_back({true, r});
        }
        for (std::size_t i = 0; i < m_.invariants.size(); ++i) {
            std::set<RelationshipId> deps;
            detail::relations_read(m_.invariants[i].body, deps);
            schedule_[deps.empty() ? 0 : *deps.rbegin() + 1].push_back({false, i});
        }
    }

    void per_root_configs(const std::vector<RootConfigs> &configs, const std::vector<std::size_t> &root_sizes)
    {
        std::size_t k = configs.size();
        std::vector<std::size_t> pick(k, 0);
        while (!stop_) {
            std::vector<std::size_t> direct(m_.entities.size(), 0);
            for (std::size_t i = 0; i < k; ++i) {
                const auto &cfg = configs[i].by_total[root_sizes[i]][pick[i]];
                for (std::size_t p = 0; p < cfg.size(); ++p)
                    direct[configs[i].positions[p]] = cfg[p];
            }
            std::vector<std::size_t> sizes(m_.entities.size());
            for (EntityId e = 0; e < sizes.size(); ++e)
                sizes[e] = subtree_size(m_, e, direct);
            explore(build_universe(m_, scope_, sizes));

            // Odometer, first root most significant.
            std::size_t i = k;
            while (i > 0) {
                --i;
                if (++pick[i] < configs[i].by_total[root_sizes[i]].size())
                    break;
                pick[i] = 0;
                if (i == 0)
                    return;
            }
            if (k == 0)
                return;
        }
    }

    struct Plan {
        std::vector<AtomId> rows;         // source atoms to assign
        std::vector<AtomSet> candidates;  // row values, binary-counting order
        std::vector<std::int64_t> col_max; // per target atom, when both ends are static
        bool static_ends = false;
    };

    static std::int64_t column_limit(const Multiplicity &m)
    {
        constexpr auto kNone = std::numeric_limits<std::int64_t>::max();
        if (m.bound) {
            switch (m.bound->op) {
            case RelOp::Lt: return m.bound->value - 1;
            case RelOp::Le:
            case RelOp::Eq: return m.bound->value;
            default: return kNone;
            }
        }
        return m.base == MultBase::One || m.base == MultBase::Lone ? 1 : kNone;
    }

    void explore(Universe u)
    {
        tick();
        inst_ = Instance::empty(m_, std::move(u));
        if (!constraints_hold(0))
            return;
        Evaluator eval(m_, inst_);
        Env env(m_.max_depth());
        plans_.assign(m_.relationships.size(), {});
        for (RelationshipId r = 0; r < m_.relationships.size(); ++r) {
            const auto &rel = m_.relationships[r];
            bool src_static = typed::is_static(rel.source);
            bool tgt_static = typed::is_static(rel.target);
            AtomSet src = src_static ? eval.value(rel.source, env) : inst_.universe.extent[rel.source_root];
            AtomSet tgt = tgt_static ? eval.value(rel.target, env) : inst_.universe.extent[rel.target_root];
            Plan &p = plans_[r];
            p.rows = src.atoms();
            p.static_ends = src_static && tgt_static;
            auto targets = tgt.atoms();
            if (p.rows.empty())
                continue;
            if (targets.size() > kMaxRowWidth)
                throw Error("S1", "relationship '" + rel.name + "' has too many candidate targets to enumerate");
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << targets.size()); ++mask) {
                if (src_static && !admits(rel.target_mult, std::popcount(mask)))
                    continue;
                AtomSet row;
                for (std::size_t j = 0; j < targets.size(); ++j)
                    if (mask >> j & 1)
                        row.set(targets[j]);
                p.candidates.push_back(row);
            }
            if (p.static_ends)
                p.col_max.assign(inst_.universe.atoms.size(), column_limit(rel.source_mult));
        }
        cols_.assign(inst_.universe.atoms.size(), 0);
        relation(0);
    }

    void relation(RelationshipId r)
    {
        if (r == m_.relationships.size()) {
            tick();
            if (!(*leaf_)(inst_))
                stop_ = true;
            return;
        }
        std::fill(cols_.begin(), cols_.end(), 0);
        fill_row(r, 0);
    }

    void fill_row(RelationshipId r, std::size_t i)
    {
        const Plan &p = plans_[r];
        if (i == p.rows.size()) {
            if (p.static_ends && !columns_admit(r))
                return;
            if (!constraints_hold(r + 1))
                return;
            auto saved = cols_;
            relation(r + 1);
            cols_ = std::move(saved);
            return;
        }
        AtomId s = p.rows[i];
        for (const AtomSet &row : p.candidates) {
            if (stop_)
                break;
            tick();
            if (p.static_ends) {
                bool over = false;
                row.for_each([&](AtomId t) {
                    if (++cols_[t] > p.col_max[t])
                        over = true;
                });
                if (!over) {
                    inst_.relations[r][s] = row;
                    fill_row(r, i + 1);
                }
                row.for_each([&](AtomId t) { --cols_[t]; });
            } else {
                inst_.relations[r][s] = row;
                fill_row(r, i + 1);
            }
        }
        inst_.relations[r][s] = AtomSet{};
    }

    bool columns_admit(RelationshipId r) const
    {
        const auto &rel = m_.relationships[r];
        Evaluator eval(m_, inst_);
        Env env(m_.max_depth());
        bool ok = true;
        eval.value(rel.target, env).for_each([&](AtomId t) { ok = ok && admits(rel.source_mult, cols_[t]); });
        return ok;
    }

    bool constraints_hold(std::size_t slot)
    {
        if (schedule_[slot].empty())
            return true;
        Evaluator eval(m_, inst_);
        for (const auto &[is_relation, index] : schedule_[slot]) {
            bool ok = is_relation ? detail::check_relation(m_, inst_, eval, index).ok()
                                  : eval.holds(m_.invariants[index]);
            if (!ok)
                return false;
        }
        return true;
    }

    struct Scheduled {
        bool is_relation;
        std::size_t index;
    };

    const TypedModel &m_;
    const Scope &scope_;
    const SearchOptions &opt_;
    const Leaf *leaf_ = nullptr;
    std::vector<std::vector<Scheduled>> schedule_;
    std::vector<Plan> plans_;
    std::vector<std::int64_t> cols_;
    Instance inst_;
    std::uint64_t explored_ = 0;
    bool stop_ = false;
};

} // namespace

Verdict solve(const TypedModel &model, const Scope &scope, const SearchOptions &options)
{
    Search search(model, scope, options);
    Verdict v;
    search.run([&](const Instance &inst) {
        v.witness = inst;
        return false;
    });
    v.explored = search.explored();
    if (v.witness) {
        v.status = Status::Sat;
        for (const auto &c : check_instance(model, *v.witness))
            if (!c.holds)
                throw InternalError("witness violates " + c.label);
    }
    return v;
}

Enumeration enumerate(const TypedModel &model, const Scope &scope, std::size_t limit, const SearchOptions &options)
{
    Search search(model, scope, options);
    Enumeration out;
    if (limit == 0)
        return out;
    search.run([&](const Instance &inst) {
        if (is_canonical(inst))
            out.instances.push_back(inst);
        return out.instances.size() < limit;
    });
    out.explored = search.explored();
    return out;
}

bool is_canonical(const Instance &inst)
{
    const auto &atoms = inst.universe.atoms;
    std::size_t n = atoms.size();
    // Atoms are interchangeable when they share their most specific entity.
    std::vector<std::vector<AtomId>> groups;
    {
        std::map<EntityId, std::vector<AtomId>> by_entity;
        for (AtomId a = 0; a < n; ++a)
            by_entity[atoms[a].entity].push_back(a);
        for (auto &[e, g] : by_entity)
            if (g.size() > 1)
                groups.push_back(std::move(g));
    }
    if (groups.empty())
        return true;

    std::vector<std::vector<AtomId>> images = groups;
    std::vector<AtomId> perm(n), inv(n);
    auto apply = [&](const AtomSet &s) {
        AtomSet out;
        s.for_each([&](AtomId a) { out.set(perm[a]); });
        return out;
    };
    while (true) {
        // Advance the odometer of per-group permutations.
        std::size_t g = 0;
        while (g < images.size() && !std::next_permutation(images[g].begin(), images[g].end()))
            ++g;
        if (g == images.size())
            return true; // wrapped around to the identity
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t k = 0; k < groups.size(); ++k)
            for (std::size_t j = 0; j < groups[k].size(); ++j)
                perm[groups[k][j]] = images[k][j];
        for (AtomId a = 0; a < n; ++a)
            inv[perm[a]] = a;
        for (const auto &rows : inst.relations) {
            bool decided = false;
            for (AtomId s = 0; s < n && !decided; ++s) {
                AtomSet permuted = apply(rows[inv[s]]);
                if (permuted < rows[s])
                    return false;
                decided = permuted != rows[s];
            }
            if (decided)
                break;
        }
    }
}

} // namespace girl
