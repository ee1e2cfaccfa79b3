#include "girl/universe.hpp"

#include "girl/diagnostic.hpp"
#include "girl/syntax.hpp"

namespace girl {

int Scope::bound_for(const TypedModel &model, EntityId root) const
{
    const auto &e = model.entities[root];
    if (e.kind == EntityKind::Singleton)
        return 1;
    auto it = per_entity.find(e.name);
    return it == per_entity.end() ? default_bound : it->second;
}

std::optional<AtomId> Universe::find(std::string_view name) const
{
    for (AtomId a = 0; a < atoms.size(); ++a)
        if (atoms[a].name == name)
            return a;
    return std::nullopt;
}

Universe Universe::from_atoms(const TypedModel &model, std::vector<Atom> atoms)
{
    if (atoms.size() > AtomSet::kCapacity)
        throw Error("U2", "universe exceeds " + std::to_string(AtomSet::kCapacity) + " atoms");
    Universe u;
    u.atoms = std::move(atoms);
    u.extent.assign(model.entities.size(), AtomSet{});
    for (AtomId a = 0; a < u.atoms.size(); ++a)
        for (std::optional<EntityId> e = u.atoms[a].entity; e; e = model.entities[*e].parent)
            u.extent[*e].set(a);
    return u;
}

namespace {

void assign(const TypedModel &model, const std::vector<std::size_t> &sizes, EntityId e, std::size_t n,
            std::vector<EntityId> &owner)
{
    const auto &ent = model.entities[e];
    if (ent.kind == EntityKind::Singleton && n != 1)
        throw Error("U1", "singleton '" + ent.name + "' must have exactly one atom, got " + std::to_string(n));
    std::size_t used = 0;
    for (EntityId c : ent.children) {
        std::size_t k = c < sizes.size() ? sizes[c] : 0;
        if (used + k > n)
            throw Error("U3", "children of '" + ent.name + "' need more atoms than its size " + std::to_string(n));
        std::vector<EntityId> block;
        assign(model, sizes, c, k, block);
        owner.insert(owner.end(), block.begin(), block.end());
        used += k;
    }
    if (ent.kind == EntityKind::Abstract && !ent.children.empty() && used != n)
        throw Error("U3", "abstract '" + ent.name + "' must be covered by its children");
    owner.insert(owner.end(), n - used, e);
}

} // namespace

Universe build_universe(const TypedModel &model, const Scope &scope, const std::vector<std::size_t> &sizes)
{
    std::vector<Atom> atoms;
    for (EntityId root : model.roots) {
        std::size_t n = root < sizes.size() ? sizes[root] : 0;
        const auto &name = model.entities[root].name;
        int bound = scope.bound_for(model, root);
        if (model.entities[root].kind != EntityKind::Singleton && n > static_cast<std::size_t>(bound))
            throw Error("U2", "'" + name + "' has " + std::to_string(n) + " atoms, above its scope of " +
                                  std::to_string(bound));
        std::vector<EntityId> owner;
        assign(model, sizes, root, n, owner);
        for (std::size_t i = 0; i < n; ++i)
            atoms.push_back({name + "$" + std::to_string(i), owner[i], root});
    }
    return Universe::from_atoms(model, std::move(atoms));
}

Instance Instance::empty(const TypedModel &model, Universe universe)
{
    Instance inst;
    std::size_t n = universe.atoms.size();
    inst.universe = std::move(universe);
    inst.relations.assign(model.relationships.size(), std::vector<AtomSet>(n));
    return inst;
}

std::vector<std::pair<AtomId, AtomId>> Instance::tuples(RelationshipId r) const
{
    std::vector<std::pair<AtomId, AtomId>> out;
    for (AtomId s = 0; s < relations[r].size(); ++s)
        relations[r][s].for_each([&](AtomId t) { out.emplace_back(s, t); });
    return out;
}

std::string relation_key(const TypedModel &model, RelationshipId r)
{
    const auto &name = model.relationships[r].name;
    for (RelationshipId o = 0; o < model.relationships.size(); ++o)
        if (o != r && model.relationships[o].name == name) {
            std::string src = print(model.source.relationships[r].source);
            if (!std::holds_alternative<EntityRef>(model.source.relationships[r].source.node))
                src = "(" + src + ")";
            return src + "." + name;
        }
    return name;
}

} // namespace girl
