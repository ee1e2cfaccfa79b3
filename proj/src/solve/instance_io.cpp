#include "girl/instance_io.hpp"

#include "girl/diagnostic.hpp"
#include "json.hpp"

#include <map>
#include <sstream>

namespace girl {

using json = nlohmann::json;

std::string instance_to_json(const TypedModel &model, const Instance &instance)
{
    const auto &u = instance.universe;
    json atoms = json::object();
    json kinds = json::object();
    for (EntityId root : model.roots)
        atoms[model.entities[root].name] = json::array();
    for (const auto &a : u.atoms) {
        atoms[model.entities[a.root].name].push_back(a.name);
        kinds[a.name] = model.entities[a.entity].name;
    }
    json relations = json::object();
    for (RelationshipId r = 0; r < model.relationships.size(); ++r) {
        json tuples = json::array();
        for (auto [s, t] : instance.tuples(r))
            tuples.push_back({u.atoms[s].name, u.atoms[t].name});
        relations[relation_key(model, r)] = std::move(tuples);
    }
    json doc = {{"version", kInstanceSchema}, {"atoms", atoms}, {"kinds", kinds}, {"relations", relations}};
    return doc.dump(2) + "\n";
}

namespace {

[[noreturn]] void malformed(const std::string &msg)
{
    throw Error("J1", "instance: " + msg);
}

const json &member(const json &j, const char *key)
{
    if (!j.is_object() || !j.contains(key))
        malformed(std::string("missing '") + key + "'");
    return j.at(key);
}

} // namespace

Instance instance_from_json(const TypedModel &model, std::string_view text)
{
    json doc = json::parse(text.begin(), text.end(), nullptr, false);
    if (doc.is_discarded())
        malformed("not valid JSON");
    const json &version = member(doc, "version");
    if (!version.is_string() || version.get<std::string>() != kInstanceSchema)
        malformed("version must be \"" + std::string(kInstanceSchema) + "\"");
    const json &atoms = member(doc, "atoms");
    const json &kinds = member(doc, "kinds");
    if (!atoms.is_object() || !kinds.is_object())
        malformed("'atoms' and 'kinds' must be objects");

    std::vector<Atom> list;
    std::map<std::string, AtomId> index;
    for (const auto &[root_name, names] : atoms.items()) {
        auto root = model.find_entity(root_name);
        if (!root)
            throw Error("C1", "unknown entity '" + root_name + "'");
        if (model.entities[*root].parent)
            throw Error("C1", "'" + root_name + "' is not a top-level entity");
    }
    // Atom ids follow the model's declaration order, not the document's.
    for (EntityId r : model.roots) {
        const std::string &root_name = model.entities[r].name;
        if (!atoms.contains(root_name))
            continue;
        const json &names = atoms.at(root_name);
        if (!names.is_array())
            malformed("atoms of '" + root_name + "' must be an array");
        for (const auto &n : names) {
            if (!n.is_string())
                malformed("atom names must be strings");
            std::string name = n.get<std::string>();
            if (index.count(name))
                malformed("duplicate atom '" + name + "'");
            if (!kinds.contains(name) || !kinds.at(name).is_string())
                malformed("atom '" + name + "' has no kind");
            auto kind = model.find_entity(kinds.at(name).get<std::string>());
            if (!kind)
                throw Error("C1", "unknown entity '" + kinds.at(name).get<std::string>() + "'");
            if (!model.is_ancestor_or_self(r, *kind))
                throw Error("C1", "atom '" + name + "' of '" + root_name + "' has kind outside it");
            index[name] = list.size();
            list.push_back({name, *kind, r});
        }
    }
    for (const auto &[name, kind] : kinds.items())
        if (!index.count(name))
            throw Error("C1", "kind given for unknown atom '" + name + "'");

    Instance inst = Instance::empty(model, Universe::from_atoms(model, std::move(list)));
    std::map<std::string, RelationshipId> keys;
    for (RelationshipId r = 0; r < model.relationships.size(); ++r)
        keys[relation_key(model, r)] = r;
    if (doc.contains("relations")) {
        const json &relations = doc.at("relations");
        if (!relations.is_object())
            malformed("'relations' must be an object");
        for (const auto &[key, tuples] : relations.items()) {
            auto it = keys.find(key);
            if (it == keys.end())
                throw Error("C1", "unknown relationship '" + key + "'");
            if (!tuples.is_array())
                malformed("tuples of '" + key + "' must be an array");
            for (const auto &t : tuples) {
                if (!t.is_array() || t.size() != 2 || !t[0].is_string() || !t[1].is_string())
                    malformed("tuples of '" + key + "' must be pairs of atom names");
                auto s = index.find(t[0].get<std::string>());
                auto d = index.find(t[1].get<std::string>());
                if (s == index.end() || d == index.end())
                    throw Error("C1", "tuple of '" + key + "' names an unknown atom");
                inst.relations[it->second][s->second].set(d->second);
            }
        }
    }
    return inst;
}

namespace {

std::string quote(const std::string &s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + '"';
}

} // namespace

std::string export_dot(const TypedModel &model, const Instance &instance)
{
    const auto &u = instance.universe;
    std::ostringstream os;
    os << "digraph instance {\n";
    std::map<EntityId, std::size_t> seen;
    for (const auto &a : u.atoms) {
        std::string label = model.entities[a.entity].name + "$" + std::to_string(seen[a.entity]++);
        os << "  " << quote(a.name) << " [label=" << quote(label) << "];\n";
    }
    for (RelationshipId r = 0; r < model.relationships.size(); ++r) {
        std::string label = quote(model.relationships[r].name);
        for (auto [s, t] : instance.tuples(r))
            os << "  " << quote(u.atoms[s].name) << " -> " << quote(u.atoms[t].name) << " [label=" << label << "];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace girl
