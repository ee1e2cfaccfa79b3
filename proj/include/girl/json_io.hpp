#pragma once

// `girl-ast/1` JSON interchange for models. Source spans are not stored.

#include "girl/syntax.hpp"

#include <string>
#include <string_view>

namespace girl {

inline constexpr std::string_view kAstSchema = "girl-ast/1";

/// J1 on schema violations (including malformed JSON or a missing or
/// unknown version), J2 on an unknown node kind.
LoadResult load_json(std::string_view text);

/// Canonical, pretty-printed (2-space) JSON with a trailing newline.
std::string save_json(const Model &model);

} // namespace girl
