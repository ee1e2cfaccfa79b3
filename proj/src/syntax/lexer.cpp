#include "lexer.hpp"

#include <array>
#include <utility>

namespace girl::detail {

namespace {

constexpr std::array<std::pair<std::string_view, Tok>, 16> kKeywords{{
    {"entity", Tok::Entity},
    {"abstract", Tok::Abstract},
    {"singleton", Tok::Singleton},
    {"extends", Tok::Extends},
    {"rel", Tok::Rel},
    {"inv", Tok::Inv},
    {"one", Tok::One},
    {"lone", Tok::Lone},
    {"some", Tok::Some},
    {"set", Tok::Set},
    {"all", Tok::All},
    {"no", Tok::No},
    {"in", Tok::In},
    {"and", Tok::And},
    {"or", Tok::Or},
    {"not", Tok::Not},
}};

bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

} // namespace

std::optional<Tok> keyword(std::string_view word)
{
    for (const auto &[text, tok] : kKeywords)
        if (text == word)
            return tok;
    return std::nullopt;
}

std::string_view describe(Tok t)
{
    switch (t) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Arrow: return "'->'";
    case Tok::Implies: return "'=>'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Bar: return "'|'";
    case Tok::Dot: return "'.'";
    case Tok::Caret: return "'^'";
    case Tok::Hash: return "'#'";
    case Tok::Union: return "'++'";
    case Tok::Intersect: return "'&'";
    case Tok::Minus: return "'\\'";
    case Tok::Lt: return "'<'";
    case Tok::Le: return "'<='";
    case Tok::Eq: return "'='";
    case Tok::Ge: return "'>='";
    case Tok::Gt: return "'>'";
    default:
        for (const auto &[text, tok] : kKeywords)
            if (tok == t)
                return text;
        return "token";
    }
}

LexResult lex(std::string_view text, const std::string &file)
{
    LexResult out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;

    auto fail = [&](const char *rule, int l, int c, std::string msg) {
        Diagnostic d;
        d.rule = rule;
        d.span = SourceSpan{file, l, c, l, c};
        d.message = std::move(msg);
        out.error = std::move(d);
    };
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };

    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n')
                advance(1);
            continue;
        }

        Token tok;
        tok.line = line;
        tok.col = col;
        std::size_t len = 1;

        if (is_alpha(c)) {
            while (i + len < text.size() && (is_alpha(text[i + len]) || is_digit(text[i + len]) || text[i + len] == '_'))
                ++len;
            tok.text = std::string(text.substr(i, len));
            tok.kind = keyword(tok.text).value_or(Tok::Ident);
        } else if (is_digit(c)) {
            while (i + len < text.size() && is_digit(text[i + len]))
                ++len;
            tok.text = std::string(text.substr(i, len));
            tok.kind = Tok::Int;
            std::int64_t v = 0;
            bool overflow = false;
            for (char d : tok.text) {
                v = v * 10 + (d - '0');
                if (v > 2147483647) {
                    overflow = true;
                    break;
                }
            }
            if (overflow) {
                fail("P3", line, col, "integer literal " + tok.text + " is out of range");
                return out;
            }
            tok.value = v;
        } else {
            auto next = i + 1 < text.size() ? text[i + 1] : '\0';
            switch (c) {
            case ';': tok.kind = Tok::Semi; break;
            case ':': tok.kind = Tok::Colon; break;
            case '{': tok.kind = Tok::LBrace; break;
            case '}': tok.kind = Tok::RBrace; break;
            case '(': tok.kind = Tok::LParen; break;
            case ')': tok.kind = Tok::RParen; break;
            case '|': tok.kind = Tok::Bar; break;
            case '.': tok.kind = Tok::Dot; break;
            case '^': tok.kind = Tok::Caret; break;
            case '#': tok.kind = Tok::Hash; break;
            case '&': tok.kind = Tok::Intersect; break;
            case '\\': tok.kind = Tok::Minus; break;
            case '+':
                if (next != '+') {
                    fail("P1", line, col, "unexpected '+' (union is written '++')");
                    return out;
                }
                tok.kind = Tok::Union;
                len = 2;
                break;
            case '-':
                if (next != '>') {
                    fail("P1", line, col, "unexpected '-' (difference is written '\\')");
                    return out;
                }
                tok.kind = Tok::Arrow;
                len = 2;
                break;
            case '=':
                if (next == '>') {
                    tok.kind = Tok::Implies;
                    len = 2;
                } else {
                    tok.kind = Tok::Eq;
                }
                break;
            case '<':
                if (next == '=') {
                    tok.kind = Tok::Le;
                    len = 2;
                } else {
                    tok.kind = Tok::Lt;
                }
                break;
            case '>':
                if (next == '=') {
                    tok.kind = Tok::Ge;
                    len = 2;
                } else {
                    tok.kind = Tok::Gt;
                }
                break;
            default: {
                std::string shown;
                if (static_cast<unsigned char>(c) >= 0x20 && static_cast<unsigned char>(c) < 0x7f)
                    shown = std::string("'") + c + "'";
                else {
                    static const char *hex = "0123456789abcdef";
                    auto u = static_cast<unsigned char>(c);
                    shown = std::string("byte 0x") + hex[u >> 4] + hex[u & 15];
                }
                fail("P1", line, col, "unexpected character " + shown);
                return out;
            }
            }
            tok.text = std::string(text.substr(i, len));
        }
        advance(len);
        tok.end_line = line;
        tok.end_col = col - 1;
        out.tokens.push_back(std::move(tok));
    }
    Token end;
    end.kind = Tok::End;
    end.line = end.end_line = line;
    end.col = end.end_col = col;
    out.tokens.push_back(end);
    return out;
}

} // namespace girl::detail
