#pragma once

// Textual concrete syntax for GIRL (`.girl` files). See docs/grammar.md.

#include "girl/diagnostic.hpp"
#include "girl/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace girl {

/// Result of reading a model from text or JSON: a model or error diagnostics.
struct LoadResult {
    std::optional<Model> model;
    std::vector<Diagnostic> diagnostics;

    [[nodiscard]] bool ok() const { return model.has_value(); }
};

/// Maximum nesting depth of a parsed expression; deeper input is rejected (P2).
inline constexpr int kMaxNesting = 200;
/// Largest integer literal accepted (P3 beyond).
inline constexpr std::int64_t kMaxLiteral = 2147483647;

/*
 * Parses a `.girl` document. Never throws on malformed input: lexical
 * errors are P1, syntax errors P2, oversized literals P3. The model name is
 * derived from `file` (its stem, when it is a valid identifier).
 */
LoadResult parse(std::string_view text, std::string_view file = {});

/// Canonical text; parse(print(m)) == m.
std::string print(const Model &model);
std::string print(const BoolExpr &expr);
std::string print(const SetTerm &term);
std::string print(const IntTerm &term);
std::string print(const Multiplicity &mult);

/// `dir/gradcourse.girl` -> `gradcourse`; falls back to `model`.
std::string model_name_from_path(std::string_view path);

bool is_keyword(std::string_view word);
bool is_identifier(std::string_view word);

} // namespace girl
