#pragma once

#include "girl/model.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace girl::detail {

using RootSet = std::set<std::size_t>;
using RootOf = std::function<std::optional<std::size_t>(const std::string &)>;

/// Top-level entities (indices into Model::entities) that each relationship
/// end may draw atoms from. An image contributes the target roots of every
/// relationship with its name; the result is the least fixed point, so
/// endpoints that refer to their own relationship are handled.
struct EndpointRoots {
    std::vector<RootSet> source;
    std::vector<RootSet> target;
};

EndpointRoots endpoint_roots(const Model &model, const RootOf &root_of);

} // namespace girl::detail
