#include "girl/syntax.hpp"
#include "lexer.hpp"

#include <filesystem>
#include <memory>

namespace girl {

using detail::Tok;
using detail::Token;

namespace {

// The expression grammar mixes formulas, set terms and integer terms, and a
// parenthesis can open any of them. Expressions are first parsed into this
// untyped tree by precedence alone, then converted to the typed AST.
struct PExpr {
    enum class Kind { Name, Int, Card, SetBin, Dot, Cmp, Logic, Not, Implies, Quant };
    Kind kind;
    std::string text; // Name, Dot relation name, Quant variable
    std::int64_t value = 0;
    Tok op = Tok::End; // SetBin, Cmp (In or relop), Logic (And/Or), Quant quantifier
    bool closure = false;
    bool parens = false;
    int depth = 1;
    std::vector<std::unique_ptr<PExpr>> kids;
    SourceSpan span;
    SourceSpan name_span; // Dot relation name, Quant variable
};

using PPtr = std::unique_ptr<PExpr>;

struct SyntaxError {
    Diagnostic diag;
};

class Parser {
public:
    Parser(std::vector<Token> tokens, std::string file) : toks_(std::move(tokens)), file_(std::move(file)) {}

    Model model()
    {
        Model m;
        while (peek().kind != Tok::End) {
            switch (peek().kind) {
            case Tok::Abstract:
            case Tok::Singleton:
            case Tok::Entity: m.entities.push_back(entity_decl()); break;
            case Tok::Rel: m.relationships.push_back(rel_decl()); break;
            case Tok::Inv: m.invariants.push_back(inv_decl()); break;
            default: fail(peek(), "expected 'entity', 'rel' or 'inv', found " + found(peek()));
            }
        }
        return m;
    }

private:
    // -- token helpers -----------------------------------------------------

    const Token &peek(std::size_t ahead = 0) const
    {
        std::size_t k = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[k];
    }

    const Token &take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    bool accept(Tok t)
    {
        if (peek().kind != t)
            return false;
        take();
        return true;
    }

    const Token &expect(Tok t, const char *context)
    {
        if (peek().kind != t)
            fail(peek(), std::string("expected ") + std::string(detail::describe(t)) + " " + context + ", found " +
                             found(peek()));
        return take();
    }

    static std::string found(const Token &t)
    {
        if (t.kind == Tok::End)
            return "end of input";
        if (t.kind == Tok::Ident || t.kind == Tok::Int)
            return "'" + t.text + "'";
        if (detail::keyword(t.text))
            return "keyword '" + t.text + "'";
        return std::string(detail::describe(t.kind));
    }

    [[noreturn]] void fail(const Token &at, std::string msg) const
    {
        Diagnostic d;
        d.rule = "P2";
        d.span = SourceSpan{file_, at.line, at.col, at.end_line, at.end_col};
        d.message = std::move(msg);
        throw SyntaxError{std::move(d)};
    }

    [[noreturn]] void fail_span(const SourceSpan &at, std::string msg) const
    {
        Diagnostic d;
        d.rule = "P2";
        d.span = at;
        d.message = std::move(msg);
        throw SyntaxError{std::move(d)};
    }

    SourceSpan span_of(const Token &t) const { return SourceSpan{file_, t.line, t.col, t.end_line, t.end_col}; }

    SourceSpan span_from(const Token &first) const
    {
        const Token &last = toks_[pos_ > 0 ? pos_ - 1 : 0];
        return SourceSpan{file_, first.line, first.col, last.end_line, last.end_col};
    }

    std::string ident(const char *context)
    {
        const Token &t = expect(Tok::Ident, context);
        return t.text;
    }

    // -- declarations ------------------------------------------------------

    EntityDecl entity_decl()
    {
        const Token &first = peek();
        EntityDecl e;
        if (accept(Tok::Abstract))
            e.kind = EntityKind::Abstract;
        else if (accept(Tok::Singleton))
            e.kind = EntityKind::Singleton;
        expect(Tok::Entity, "in entity declaration");
        e.name = ident("after 'entity'");
        if (accept(Tok::Extends))
            e.parent = ident("after 'extends'");
        expect(Tok::Semi, "after entity declaration");
        e.span = span_from(first);
        return e;
    }

    Multiplicity multiplicity()
    {
        Multiplicity m;
        switch (peek().kind) {
        case Tok::One: take(); m.base = MultBase::One; return m;
        case Tok::Lone: take(); m.base = MultBase::Lone; return m;
        case Tok::Some: take(); m.base = MultBase::Some; return m;
        case Tok::Set: take(); m.base = MultBase::Set; return m;
        case Tok::Lt:
        case Tok::Le:
        case Tok::Eq:
        case Tok::Ge:
        case Tok::Gt: {
            RelOp op = relop(take().kind);
            const Token &n = expect(Tok::Int, "in bounded multiplicity");
            m.base = MultBase::Set;
            m.bound = MultBound{op, n.value};
            return m;
        }
        default:
            fail(peek(), "expected a multiplicity (one, lone, some, set or a bound like '<= 2'), found " +
                             found(peek()));
        }
    }

    RelationshipDecl rel_decl()
    {
        const Token &first = take();
        RelationshipDecl r;
        r.name = ident("after 'rel'");
        expect(Tok::Colon, "after relationship name");
        scope_.clear();
        r.source = to_set(*set_union());
        r.source_mult = multiplicity();
        expect(Tok::Arrow, "between relationship ends");
        r.target_mult = multiplicity();
        r.target = to_set(*set_union());
        expect(Tok::Semi, "after relationship declaration");
        r.span = span_from(first);
        return r;
    }

    Invariant inv_decl()
    {
        const Token &first = take();
        Invariant inv;
        inv.context = ident("after 'inv'");
        expect(Tok::LBrace, "to open the invariant body");
        PPtr body = formula();
        expect(Tok::RBrace, "to close the invariant body");
        scope_.clear();
        inv.body = to_bool(*body);
        inv.span = span_from(first);
        return inv;
    }

    // -- untyped expression parser ----------------------------------------

    PPtr node(PExpr::Kind kind, const Token &first)
    {
        auto p = std::make_unique<PExpr>();
        p->kind = kind;
        p->span = span_of(first);
        return p;
    }

    PPtr finish(PPtr p, const Token &first)
    {
        p->span = span_from(first);
        int d = 0;
        for (const auto &k : p->kids)
            d = std::max(d, k->depth);
        p->depth = d + 1;
        if (p->depth > kMaxNesting)
            fail_span(p->span, "expression nesting exceeds " + std::to_string(kMaxNesting) + " levels");
        return p;
    }

    struct DepthGuard {
        Parser &p;
        const Token &at;
        DepthGuard(Parser &parser, const Token &t) : p(parser), at(t)
        {
            if (++p.nesting_ > kMaxNesting)
                p.fail(at, "expression nesting exceeds " + std::to_string(kMaxNesting) + " levels");
        }
        ~DepthGuard() { --p.nesting_; }
    };

    PPtr formula() { return implication(); }

    PPtr implication()
    {
        const Token &first = peek();
        PPtr lhs = disjunction();
        if (peek().kind != Tok::Implies)
            return lhs;
        DepthGuard guard(*this, peek());
        take();
        PPtr rhs = implication();
        PPtr p = node(PExpr::Kind::Implies, first);
        p->kids.push_back(std::move(lhs));
        p->kids.push_back(std::move(rhs));
        return finish(std::move(p), first);
    }

    PPtr logic_chain(Tok op, PPtr (Parser::*operand)())
    {
        const Token &first = peek();
        PPtr lhs = (this->*operand)();
        if (peek().kind != op)
            return lhs;
        PPtr p = node(PExpr::Kind::Logic, first);
        p->op = op;
        p->kids.push_back(std::move(lhs));
        while (accept(op))
            p->kids.push_back((this->*operand)());
        return finish(std::move(p), first);
    }

    PPtr disjunction() { return logic_chain(Tok::Or, &Parser::conjunction); }
    PPtr conjunction() { return logic_chain(Tok::And, &Parser::unary); }

    bool at_quantifier() const
    {
        Tok k = peek().kind;
        bool quant = k == Tok::All || k == Tok::Some || k == Tok::No || k == Tok::One;
        return quant && peek(1).kind == Tok::Ident && peek(2).kind == Tok::Colon;
    }

    PPtr unary()
    {
        const Token &first = peek();
        if (peek().kind == Tok::Not) {
            DepthGuard guard(*this, first);
            take();
            PPtr p = node(PExpr::Kind::Not, first);
            p->kids.push_back(unary());
            return finish(std::move(p), first);
        }
        if (at_quantifier()) {
            DepthGuard guard(*this, first);
            PPtr p = node(PExpr::Kind::Quant, first);
            p->op = take().kind;
            const Token &v = take();
            p->text = v.text;
            p->name_span = span_of(v);
            take(); // ':'
            p->kids.push_back(set_union());
            expect(Tok::Bar, "after quantifier domain");
            p->kids.push_back(formula());
            return finish(std::move(p), first);
        }
        return comparison();
    }

    static bool is_relop(Tok t)
    {
        return t == Tok::Lt || t == Tok::Le || t == Tok::Eq || t == Tok::Ge || t == Tok::Gt;
    }

    static RelOp relop(Tok t)
    {
        switch (t) {
        case Tok::Lt: return RelOp::Lt;
        case Tok::Le: return RelOp::Le;
        case Tok::Eq: return RelOp::Eq;
        case Tok::Ge: return RelOp::Ge;
        default: return RelOp::Gt;
        }
    }

    PPtr comparison()
    {
        const Token &first = peek();
        PPtr lhs = cardinality();
        Tok k = peek().kind;
        if (k != Tok::In && !is_relop(k))
            return lhs;
        take();
        PPtr p = node(PExpr::Kind::Cmp, first);
        p->op = k;
        p->kids.push_back(std::move(lhs));
        p->kids.push_back(cardinality());
        return finish(std::move(p), first);
    }

    PPtr cardinality()
    {
        const Token &first = peek();
        if (!accept(Tok::Hash))
            return set_union();
        PPtr p = node(PExpr::Kind::Card, first);
        p->kids.push_back(set_union());
        return finish(std::move(p), first);
    }

    PPtr set_union()
    {
        const Token &first = peek();
        PPtr lhs = set_intersection();
        while (peek().kind == Tok::Union || peek().kind == Tok::Minus) {
            PPtr p = node(PExpr::Kind::SetBin, first);
            p->op = take().kind;
            p->kids.push_back(std::move(lhs));
            p->kids.push_back(set_intersection());
            lhs = finish(std::move(p), first);
        }
        return lhs;
    }

    PPtr set_intersection()
    {
        const Token &first = peek();
        PPtr lhs = postfix();
        while (peek().kind == Tok::Intersect) {
            PPtr p = node(PExpr::Kind::SetBin, first);
            p->op = take().kind;
            p->kids.push_back(std::move(lhs));
            p->kids.push_back(postfix());
            lhs = finish(std::move(p), first);
        }
        return lhs;
    }

    PPtr postfix()
    {
        const Token &first = peek();
        PPtr lhs = primary();
        while (accept(Tok::Dot)) {
            PPtr p = node(PExpr::Kind::Dot, first);
            p->closure = accept(Tok::Caret);
            const Token &name = expect(Tok::Ident, "after '.'");
            p->text = name.text;
            p->name_span = span_of(name);
            p->kids.push_back(std::move(lhs));
            lhs = finish(std::move(p), first);
        }
        return lhs;
    }

    PPtr primary()
    {
        const Token &first = peek();
        switch (first.kind) {
        case Tok::Ident: {
            take();
            PPtr p = node(PExpr::Kind::Name, first);
            p->text = first.text;
            return p;
        }
        case Tok::Int: {
            take();
            PPtr p = node(PExpr::Kind::Int, first);
            p->value = first.value;
            return p;
        }
        case Tok::LParen: {
            DepthGuard guard(*this, first);
            take();
            PPtr inner = formula();
            expect(Tok::RParen, "to close '('");
            inner->parens = true;
            inner->span = span_from(first);
            return inner;
        }
        default: fail(first, "expected an expression, found " + found(first));
        }
    }

    // -- conversion to the typed AST ---------------------------------------

    bool bound(const std::string &name) const
    {
        for (const auto &v : scope_)
            if (v == name)
                return true;
        return false;
    }

    SetTerm to_set(const PExpr &p)
    {
        switch (p.kind) {
        case PExpr::Kind::Name:
            if (bound(p.text))
                return SetTerm{VarRef{p.text, p.span}, p.span};
            return SetTerm{EntityRef{p.text}, p.span};
        case PExpr::Kind::SetBin: {
            SetOpKind op = p.op == Tok::Union       ? SetOpKind::Union
                           : p.op == Tok::Intersect ? SetOpKind::Intersection
                                                    : SetOpKind::Complement;
            return SetTerm{SetOp{op, to_set(*p.kids[0]), to_set(*p.kids[1])}, p.span};
        }
        case PExpr::Kind::Dot:
            return SetTerm{Image{RelTerm{p.text, p.closure, p.name_span}, to_set(*p.kids[0])}, p.span};
        default: fail_span(p.span, "expected a set expression");
        }
    }

    IntTerm to_int(const PExpr &p)
    {
        if (p.kind == PExpr::Kind::Int)
            return IntTerm{IntLiteral{p.value}, p.span};
        if (p.kind == PExpr::Kind::Card)
            return IntTerm{Cardinality{to_set(*p.kids[0])}, p.span};
        fail_span(p.span, "expected an integer expression ('#' set or a literal)");
    }

    BoolExpr to_bool(const PExpr &p)
    {
        switch (p.kind) {
        case PExpr::Kind::Cmp: {
            if (p.op == Tok::In) {
                const PExpr &lhs = *p.kids[0];
                if (lhs.kind == PExpr::Kind::Name && !lhs.parens && bound(lhs.text))
                    return BoolExpr{Membership{VarRef{lhs.text, lhs.span}, to_set(*p.kids[1])}, p.span};
                return BoolExpr{Containment{to_set(lhs), to_set(*p.kids[1])}, p.span};
            }
            return BoolExpr{RelationalOp{relop(p.op), to_int(*p.kids[0]), to_int(*p.kids[1])}, p.span};
        }
        case PExpr::Kind::Logic: {
            LogicalOp l{p.op == Tok::And ? LogicKind::And : LogicKind::Or, {}};
            for (const auto &k : p.kids)
                l.args.push_back(to_bool(*k));
            return BoolExpr{std::move(l), p.span};
        }
        case PExpr::Kind::Not: return BoolExpr{Not{to_bool(*p.kids[0])}, p.span};
        case PExpr::Kind::Implies:
            return BoolExpr{Implication{to_bool(*p.kids[0]), to_bool(*p.kids[1])}, p.span};
        case PExpr::Kind::Quant: {
            Quantifier q = p.op == Tok::All    ? Quantifier::All
                           : p.op == Tok::Some ? Quantifier::Some
                           : p.op == Tok::No   ? Quantifier::No
                                               : Quantifier::One;
            SetTerm domain = to_set(*p.kids[0]);
            scope_.push_back(p.text);
            BoolExpr body = to_bool(*p.kids[1]);
            scope_.pop_back();
            return BoolExpr{Quantification{q, p.text, std::move(domain), std::move(body)}, p.span};
        }
        default: fail_span(p.span, "expected a formula");
        }
    }

    std::vector<Token> toks_;
    std::string file_;
    std::size_t pos_ = 0;
    int nesting_ = 0;
    std::vector<std::string> scope_;
};

} // namespace

bool is_keyword(std::string_view word) { return detail::keyword(word).has_value(); }

bool is_identifier(std::string_view word)
{
    if (word.empty() || !((word[0] >= 'a' && word[0] <= 'z') || (word[0] >= 'A' && word[0] <= 'Z')))
        return false;
    for (char c : word)
        if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_'))
            return false;
    return !is_keyword(word);
}

std::string model_name_from_path(std::string_view path)
{
    std::string stem = std::filesystem::path(std::string(path)).stem().string();
    return is_identifier(stem) ? stem : "model";
}

LoadResult parse(std::string_view text, std::string_view file)
{
    LoadResult out;
    std::string filename(file);
    auto lexed = detail::lex(text, filename);
    if (lexed.error) {
        out.diagnostics.push_back(std::move(*lexed.error));
        return out;
    }
    try {
        Parser p(std::move(lexed.tokens), filename);
        Model m = p.model();
        m.name = model_name_from_path(filename);
        out.model = std::move(m);
    } catch (SyntaxError &e) {
        out.diagnostics.push_back(std::move(e.diag));
    }
    return out;
}

} // namespace girl
