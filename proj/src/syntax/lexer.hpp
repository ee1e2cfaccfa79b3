#pragma once

#include "girl/diagnostic.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace girl::detail {

enum class Tok {
    End,
    Ident,
    Int,
    // keywords
    Entity,
    Abstract,
    Singleton,
    Extends,
    Rel,
    Inv,
    One,
    Lone,
    Some,
    Set,
    All,
    No,
    In,
    And,
    Or,
    Not,
    // punctuation
    Semi,
    Colon,
    Arrow,   // ->
    Implies, // =>
    LBrace,
    RBrace,
    LParen,
    RParen,
    Bar,
    Dot,
    Caret,
    Hash,
    Union,     // ++
    Intersect, // &
    Minus,     // backslash
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::int64_t value = 0;
    int line = 1;
    int col = 1;
    int end_line = 1;
    int end_col = 1;
};

std::string_view describe(Tok t);

/// Tokenizes the whole input, stopping at the first lexical error.
/// On success the last token is Tok::End.
struct LexResult {
    std::vector<Token> tokens;
    std::optional<Diagnostic> error;
};

LexResult lex(std::string_view text, const std::string &file);

std::optional<Tok> keyword(std::string_view word);

} // namespace girl::detail
