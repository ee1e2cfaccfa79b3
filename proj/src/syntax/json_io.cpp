#include "girl/json_io.hpp"

#include "json.hpp"

#include <array>

namespace girl {

using nlohmann::json;

namespace {

struct SchemaError {
    const char *rule;
    std::string message;
};

[[noreturn]] void schema(std::string where, std::string what)
{
    throw SchemaError{"J1", where + ": " + what};
}

const json &field(const json &j, const char *key, const std::string &where)
{
    if (!j.is_object())
        schema(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        schema(where, std::string("missing field '") + key + "'");
    return *it;
}

std::string str(const json &j, const char *key, const std::string &where)
{
    const json &v = field(j, key, where);
    if (!v.is_string())
        schema(where + "." + key, "expected a string");
    return v.get<std::string>();
}

std::string ident(const json &j, const char *key, const std::string &where)
{
    std::string s = str(j, key, where);
    if (!is_identifier(s))
        schema(where + "." + key, "'" + s + "' is not a valid identifier");
    return s;
}

std::int64_t natural(const json &j, const char *key, const std::string &where)
{
    const json &v = field(j, key, where);
    if (!v.is_number_integer())
        schema(where + "." + key, "expected an integer");
    auto n = v.get<std::int64_t>();
    if (n < 0 || n > kMaxLiteral)
        schema(where + "." + key, "integer out of range");
    return n;
}

template <typename E, std::size_t N>
E enum_value(const json &j, const char *key, const std::string &where,
             const std::array<std::pair<std::string_view, E>, N> &table)
{
    std::string s = str(j, key, where);
    for (const auto &[name, value] : table)
        if (name == s)
            return value;
    schema(where + "." + key, "unknown value '" + s + "'");
}

constexpr std::array<std::pair<std::string_view, EntityKind>, 3> kKinds{
    {{"plain", EntityKind::Plain}, {"abstract", EntityKind::Abstract}, {"singleton", EntityKind::Singleton}}};
constexpr std::array<std::pair<std::string_view, RelOp>, 5> kRelOps{{{"<", RelOp::Lt},
                                                                      {"<=", RelOp::Le},
                                                                      {"=", RelOp::Eq},
                                                                      {">=", RelOp::Ge},
                                                                      {">", RelOp::Gt}}};
constexpr std::array<std::pair<std::string_view, MultBase>, 4> kBases{
    {{"one", MultBase::One}, {"lone", MultBase::Lone}, {"some", MultBase::Some}, {"set", MultBase::Set}}};
constexpr std::array<std::pair<std::string_view, SetOpKind>, 3> kSetOps{{{"union", SetOpKind::Union},
                                                                         {"intersection", SetOpKind::Intersection},
                                                                         {"complement", SetOpKind::Complement}}};
constexpr std::array<std::pair<std::string_view, Quantifier>, 4> kQuants{
    {{"all", Quantifier::All}, {"some", Quantifier::Some}, {"no", Quantifier::No}, {"one", Quantifier::One}}};

template <typename E, std::size_t N>
std::string name_of(E value, const std::array<std::pair<std::string_view, E>, N> &table)
{
    for (const auto &[name, v] : table)
        if (v == value)
            return std::string(name);
    return "?";
}

std::string kind_of(const json &j, const std::string &where) { return str(j, "kind", where); }

[[noreturn]] void unknown_kind(const std::string &where, const std::string &kind, const char *expected)
{
    throw SchemaError{"J2", where + ": unknown " + std::string(expected) + " node kind '" + kind + "'"};
}

// -- reading ---------------------------------------------------------------

SetTerm read_set(const json &j, const std::string &where, int depth);

RelTerm read_rel(const json &j, const std::string &where)
{
    std::string kind = kind_of(j, where);
    if (kind == "rel")
        return RelTerm{ident(j, "name", where), false, {}};
    if (kind == "closure") {
        const json &inner = field(j, "rel", where);
        if (kind_of(inner, where + ".rel") != "rel")
            schema(where + ".rel", "closure applies to a named relationship");
        return RelTerm{ident(inner, "name", where + ".rel"), true, {}};
    }
    unknown_kind(where, kind, "relation");
}

void check_depth(int depth, const std::string &where)
{
    if (depth > kMaxNesting)
        schema(where, "expression nesting too deep");
}

SetTerm read_set(const json &j, const std::string &where, int depth)
{
    check_depth(depth, where);
    std::string kind = kind_of(j, where);
    if (kind == "entity")
        return build::entity(ident(j, "name", where));
    if (kind == "var")
        return build::var(ident(j, "name", where));
    if (kind == "setop")
        return build::set_op(enum_value(j, "op", where, kSetOps), read_set(field(j, "lhs", where), where + ".lhs", depth + 1),
                             read_set(field(j, "rhs", where), where + ".rhs", depth + 1));
    if (kind == "image") {
        RelTerm rel = read_rel(field(j, "rel", where), where + ".rel");
        SetTerm from = read_set(field(j, "from", where), where + ".from", depth + 1);
        return SetTerm{Image{std::move(rel), std::move(from)}, {}};
    }
    unknown_kind(where, kind, "set");
}

IntTerm read_int(const json &j, const std::string &where, int depth)
{
    std::string kind = kind_of(j, where);
    if (kind == "int")
        return build::lit(natural(j, "value", where));
    if (kind == "card")
        return build::card(read_set(field(j, "set", where), where + ".set", depth + 1));
    unknown_kind(where, kind, "integer");
}

BoolExpr read_bool(const json &j, const std::string &where, int depth)
{
    check_depth(depth, where);
    std::string kind = kind_of(j, where);
    if (kind == "containment")
        return build::contains(read_set(field(j, "inner", where), where + ".inner", depth + 1),
                               read_set(field(j, "outer", where), where + ".outer", depth + 1));
    if (kind == "membership") {
        const json &elem = field(j, "elem", where);
        if (kind_of(elem, where + ".elem") != "var")
            schema(where + ".elem", "membership element must be a variable");
        return build::member(ident(elem, "name", where + ".elem"),
                             read_set(field(j, "set", where), where + ".set", depth + 1));
    }
    if (kind == "relop")
        return build::cmp(enum_value(j, "op", where, kRelOps), read_int(field(j, "lhs", where), where + ".lhs", depth + 1),
                          read_int(field(j, "rhs", where), where + ".rhs", depth + 1));
    if (kind == "and" || kind == "or") {
        const json &args = field(j, "args", where);
        if (!args.is_array() || args.size() < 2)
            schema(where + ".args", "expected an array of at least two formulas");
        std::vector<BoolExpr> out;
        for (std::size_t i = 0; i < args.size(); ++i)
            out.push_back(read_bool(args[i], where + ".args[" + std::to_string(i) + "]", depth + 1));
        return build::logic(kind == "and" ? LogicKind::And : LogicKind::Or, std::move(out));
    }
    if (kind == "not")
        return build::negate(read_bool(field(j, "arg", where), where + ".arg", depth + 1));
    if (kind == "quant")
        return build::quant(enum_value(j, "quant", where, kQuants), ident(j, "var", where),
                            read_set(field(j, "domain", where), where + ".domain", depth + 1),
                            read_bool(field(j, "body", where), where + ".body", depth + 1));
    if (kind == "implies")
        return build::implies(read_bool(field(j, "premise", where), where + ".premise", depth + 1),
                              read_bool(field(j, "conclusion", where), where + ".conclusion", depth + 1));
    unknown_kind(where, kind, "formula");
}

Multiplicity read_mult(const json &j, const std::string &where)
{
    Multiplicity m;
    m.base = enum_value(j, "base", where, kBases);
    if (j.contains("bound")) {
        if (m.base != MultBase::Set)
            schema(where, "a bounded multiplicity must have base 'set'");
        const json &b = j["bound"];
        m.bound = MultBound{enum_value(b, "op", where + ".bound", kRelOps), natural(b, "value", where + ".bound")};
    }
    return m;
}

const json &array_field(const json &j, const char *key)
{
    const json &v = field(j, key, "$");
    if (!v.is_array())
        schema(std::string("$.") + key, "expected an array");
    return v;
}

// -- writing ---------------------------------------------------------------

json write_set(const SetTerm &t);

json write_rel(const RelTerm &r)
{
    json rel = {{"kind", "rel"}, {"name", r.name}};
    if (!r.closure)
        return rel;
    return {{"kind", "closure"}, {"rel", rel}};
}

json write_set(const SetTerm &t)
{
    return std::visit(
        [](const auto &n) -> json {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, EntityRef>)
                return {{"kind", "entity"}, {"name", n.name}};
            else if constexpr (std::is_same_v<N, VarRef>)
                return {{"kind", "var"}, {"name", n.name}};
            else if constexpr (std::is_same_v<N, SetOp>)
                return {{"kind", "setop"}, {"op", name_of(n.op, kSetOps)}, {"lhs", write_set(*n.lhs)}, {"rhs", write_set(*n.rhs)}};
            else
                return {{"kind", "image"}, {"rel", write_rel(n.rel)}, {"from", write_set(*n.from)}};
        },
        t.node);
}

json write_int(const IntTerm &t)
{
    if (const auto *l = std::get_if<IntLiteral>(&t.node))
        return {{"kind", "int"}, {"value", l->value}};
    return {{"kind", "card"}, {"set", write_set(std::get<Cardinality>(t.node).set)}};
}

json write_bool(const BoolExpr &b)
{
    return std::visit(
        [](const auto &n) -> json {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Containment>) {
                return {{"kind", "containment"}, {"inner", write_set(n.inner)}, {"outer", write_set(n.outer)}};
            } else if constexpr (std::is_same_v<N, Membership>) {
                return {{"kind", "membership"},
                        {"elem", {{"kind", "var"}, {"name", n.elem.name}}},
                        {"set", write_set(n.set)}};
            } else if constexpr (std::is_same_v<N, RelationalOp>) {
                return {{"kind", "relop"}, {"op", name_of(n.op, kRelOps)}, {"lhs", write_int(n.lhs)}, {"rhs", write_int(n.rhs)}};
            } else if constexpr (std::is_same_v<N, LogicalOp>) {
                json args = json::array();
                for (const auto &a : n.args)
                    args.push_back(write_bool(a));
                return {{"kind", n.op == LogicKind::And ? "and" : "or"}, {"args", std::move(args)}};
            } else if constexpr (std::is_same_v<N, Not>) {
                return {{"kind", "not"}, {"arg", write_bool(*n.arg)}};
            } else if constexpr (std::is_same_v<N, Quantification>) {
                return {{"kind", "quant"},
                        {"quant", name_of(n.quant, kQuants)},
                        {"var", n.var},
                        {"domain", write_set(n.domain)},
                        {"body", write_bool(*n.body)}};
            } else {
                return {{"kind", "implies"}, {"premise", write_bool(*n.premise)}, {"conclusion", write_bool(*n.conclusion)}};
            }
        },
        b.node);
}

json write_mult(const Multiplicity &m)
{
    json j = {{"base", name_of(m.base, kBases)}};
    if (m.bound)
        j["bound"] = {{"op", name_of(m.bound->op, kRelOps)}, {"value", m.bound->value}};
    return j;
}

} // namespace

LoadResult load_json(std::string_view text)
{
    LoadResult out;
    auto fail = [&](const char *rule, std::string msg) {
        Diagnostic d;
        d.rule = rule;
        d.path = "$";
        d.message = std::move(msg);
        out.diagnostics.push_back(std::move(d));
    };

    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) {
        fail("J1", "document is not valid JSON");
        return out;
    }
    try {
        if (!doc.is_object() || !doc.contains("version"))
            schema("$", "missing field 'version'");
        if (doc["version"] != kAstSchema)
            schema("$.version", "expected \"" + std::string(kAstSchema) + "\"");

        Model m;
        m.name = ident(doc, "name", "$");
        const json &entities = array_field(doc, "entities");
        for (std::size_t i = 0; i < entities.size(); ++i) {
            const json &e = entities[i];
            std::string where = "$.entities[" + std::to_string(i) + "]";
            EntityDecl d;
            d.name = ident(e, "name", where);
            d.kind = enum_value(e, "kind", where, kKinds);
            if (e.contains("extends"))
                d.parent = ident(e, "extends", where);
            m.entities.push_back(std::move(d));
        }
        const json &rels = array_field(doc, "relationships");
        for (std::size_t i = 0; i < rels.size(); ++i) {
            const json &r = rels[i];
            std::string where = "$.relationships[" + std::to_string(i) + "]";
            RelationshipDecl d;
            d.name = ident(r, "name", where);
            d.source = read_set(field(r, "source", where), where + ".source", 0);
            d.target = read_set(field(r, "target", where), where + ".target", 0);
            d.source_mult = read_mult(field(r, "sourceMult", where), where + ".sourceMult");
            d.target_mult = read_mult(field(r, "targetMult", where), where + ".targetMult");
            m.relationships.push_back(std::move(d));
        }
        const json &invs = array_field(doc, "invariants");
        for (std::size_t i = 0; i < invs.size(); ++i) {
            std::string where = "$.invariants[" + std::to_string(i) + "]";
            Invariant inv;
            inv.context = ident(invs[i], "context", where);
            inv.body = read_bool(field(invs[i], "body", where), where + ".body", 0);
            m.invariants.push_back(std::move(inv));
        }
        out.model = std::move(m);
    } catch (const SchemaError &e) {
        fail(e.rule, e.message);
    } catch (const json::exception &e) {
        fail("J1", e.what());
    }
    return out;
}

std::string save_json(const Model &model)
{
    json doc;
    doc["version"] = kAstSchema;
    doc["name"] = model.name;
    doc["entities"] = json::array();
    for (const auto &e : model.entities) {
        json j = {{"name", e.name}, {"kind", name_of(e.kind, kKinds)}};
        if (e.parent)
            j["extends"] = *e.parent;
        doc["entities"].push_back(std::move(j));
    }
    doc["relationships"] = json::array();
    for (const auto &r : model.relationships)
        doc["relationships"].push_back({{"name", r.name},
                                        {"source", write_set(r.source)},
                                        {"target", write_set(r.target)},
                                        {"sourceMult", write_mult(r.source_mult)},
                                        {"targetMult", write_mult(r.target_mult)}});
    doc["invariants"] = json::array();
    for (const auto &inv : model.invariants)
        doc["invariants"].push_back({{"context", inv.context}, {"body", write_bool(inv.body)}});
    return doc.dump(2) + "\n";
}

} // namespace girl
