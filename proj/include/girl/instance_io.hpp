#pragma once

// `girl-instance/1` JSON and Graphviz DOT rendering of instances.
//
//   {"version": "girl-instance/1",
//    "atoms": {"<top-level entity>": ["<atom>", ...]},
//    "kinds": {"<atom>": "<most specific entity>"},
//    "relations": {"<relation key>": [["<source atom>", "<target atom>"], ...]}}

#include "girl/universe.hpp"

#include <string>
#include <string_view>

namespace girl {

inline constexpr std::string_view kInstanceSchema = "girl-instance/1";

std::string instance_to_json(const TypedModel &model, const Instance &instance);

/// J1 on malformed documents; C1 when the document names an entity,
/// relationship or atom the model does not have.
Instance instance_from_json(const TypedModel &model, std::string_view text);

/// One node per atom labeled `<entity>$<i>` after its most specific entity,
/// one edge per tuple labeled with the relationship, in atom and declaration order.
std::string export_dot(const TypedModel &model, const Instance &instance);

} // namespace girl
