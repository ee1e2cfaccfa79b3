#pragma once

// Abstract syntax of GIRL models: entities, binary relationships with
// per-end multiplicities, and invariants over set, integer and boolean
// expressions. Nodes are immutable values; equality ignores source spans.

#include "girl/box.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace girl {

struct SourceSpan {
    std::string file;
    int start_line = 0;
    int start_col = 0;
    int end_line = 0;
    int end_col = 0;

    [[nodiscard]] bool valid() const { return start_line > 0; }
    bool operator==(const SourceSpan &) const = default;
};

enum class EntityKind { Plain, Abstract, Singleton };
enum class RelOp { Lt, Le, Eq, Ge, Gt };
enum class MultBase { One, Lone, Some, Set };
// Complement is binary: `lhs \ rhs` keeps the atoms of lhs not in rhs.
enum class SetOpKind { Union, Intersection, Complement };
enum class LogicKind { And, Or };
enum class Quantifier { All, Some, No, One };

std::string_view to_string(EntityKind k);
std::string_view to_string(RelOp op);
std::string_view to_string(MultBase b);
std::string_view to_string(SetOpKind op);
std::string_view to_string(LogicKind k);
std::string_view to_string(Quantifier q);

/// Compares two integers with a GIRL relational operator.
bool compare(RelOp op, std::int64_t lhs, std::int64_t rhs);

// ---------------------------------------------------------------------------
// Relation terms

struct RelTerm {
    std::string name;
    bool closure = false; // `^name`
    SourceSpan span;

    bool operator==(const RelTerm &o) const { return name == o.name && closure == o.closure; }
};

// ---------------------------------------------------------------------------
// Set terms

struct SetTerm;

struct EntityRef {
    std::string name;
    bool operator==(const EntityRef &) const = default;
};

struct VarRef {
    std::string name;
    SourceSpan span;
    bool operator==(const VarRef &o) const { return name == o.name; }
};

struct SetOp {
    SetOpKind op;
    Box<SetTerm> lhs;
    Box<SetTerm> rhs;
    bool operator==(const SetOp &) const = default;
};

/// Relational dereference: every atom reachable through `rel` from `from`.
struct Image {
    RelTerm rel;
    Box<SetTerm> from;
    bool operator==(const Image &) const = default;
};

struct SetTerm {
    std::variant<EntityRef, VarRef, SetOp, Image> node;
    SourceSpan span;

    bool operator==(const SetTerm &o) const { return node == o.node; }
};

// ---------------------------------------------------------------------------
// Integer terms

struct IntLiteral {
    std::int64_t value = 0;
    bool operator==(const IntLiteral &) const = default;
};

struct Cardinality {
    SetTerm set;
    bool operator==(const Cardinality &) const = default;
};

struct IntTerm {
    std::variant<IntLiteral, Cardinality> node;
    SourceSpan span;

    bool operator==(const IntTerm &o) const { return node == o.node; }
};

// ---------------------------------------------------------------------------
// Boolean expressions

struct BoolExpr;

struct Containment {
    SetTerm inner;
    SetTerm outer;
    bool operator==(const Containment &) const = default;
};

struct RelationalOp {
    RelOp op;
    IntTerm lhs;
    IntTerm rhs;
    bool operator==(const RelationalOp &) const = default;
};

struct LogicalOp {
    LogicKind op;
    std::vector<BoolExpr> args; // at least two
    bool operator==(const LogicalOp &) const;
};

struct Not {
    Box<BoolExpr> arg;
    bool operator==(const Not &) const = default;
};

struct Quantification {
    Quantifier quant;
    std::string var;
    SetTerm domain;
    Box<BoolExpr> body;
    bool operator==(const Quantification &) const = default;
};

struct Implication {
    Box<BoolExpr> premise;
    Box<BoolExpr> conclusion;
    bool operator==(const Implication &) const = default;
};

/// `x in S` where x is a quantified variable.
struct Membership {
    VarRef elem;
    SetTerm set;
    bool operator==(const Membership &) const = default;
};

struct BoolExpr {
    std::variant<Containment, RelationalOp, LogicalOp, Not, Quantification, Implication, Membership> node;
    SourceSpan span;

    bool operator==(const BoolExpr &o) const { return node == o.node; }
};

inline bool LogicalOp::operator==(const LogicalOp &o) const { return op == o.op && args == o.args; }

// ---------------------------------------------------------------------------
// Declarations

struct EntityDecl {
    std::string name;
    EntityKind kind = EntityKind::Plain;
    std::optional<std::string> parent;
    SourceSpan span;

    bool operator==(const EntityDecl &o) const
    {
        return name == o.name && kind == o.kind && parent == o.parent;
    }
};

struct MultBound {
    RelOp op;
    std::int64_t value;
    bool operator==(const MultBound &) const = default;
};

struct Multiplicity {
    MultBase base = MultBase::Set;
    std::optional<MultBound> bound; // only with base Set

    bool operator==(const Multiplicity &) const = default;
};

/// Does `count` atoms on the far end satisfy this multiplicity?
bool admits(const Multiplicity &m, std::int64_t count);

struct RelationshipDecl {
    std::string name;
    SetTerm source;
    SetTerm target;
    Multiplicity source_mult;
    Multiplicity target_mult;
    SourceSpan span;

    bool operator==(const RelationshipDecl &o) const
    {
        return name == o.name && source == o.source && target == o.target &&
               source_mult == o.source_mult && target_mult == o.target_mult;
    }
};

struct Invariant {
    std::string context;
    BoolExpr body;
    SourceSpan span;

    bool operator==(const Invariant &o) const { return context == o.context && body == o.body; }
};

struct Model {
    std::string name = "model";
    std::vector<EntityDecl> entities;
    std::vector<RelationshipDecl> relationships;
    std::vector<Invariant> invariants;

    bool operator==(const Model &) const = default;

    [[nodiscard]] const EntityDecl *find_entity(std::string_view name) const;
};

// Convenience constructors, mostly for tests and programmatic models.
namespace build {
SetTerm entity(std::string name);
SetTerm var(std::string name);
SetTerm set_op(SetOpKind op, SetTerm lhs, SetTerm rhs);
SetTerm image(SetTerm from, std::string rel, bool closure = false);
IntTerm lit(std::int64_t value);
IntTerm card(SetTerm set);
BoolExpr contains(SetTerm inner, SetTerm outer);
BoolExpr member(std::string var, SetTerm set);
BoolExpr cmp(RelOp op, IntTerm lhs, IntTerm rhs);
BoolExpr logic(LogicKind op, std::vector<BoolExpr> args);
BoolExpr negate(BoolExpr arg);
BoolExpr quant(Quantifier q, std::string var, SetTerm domain, BoolExpr body);
BoolExpr implies(BoolExpr premise, BoolExpr conclusion);
} // namespace build

} // namespace girl
