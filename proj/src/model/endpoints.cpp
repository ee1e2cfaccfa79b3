#include "endpoints.hpp"

#include <algorithm>
#include <iterator>

namespace girl::detail {

namespace {

RootSet roots(const Model &model, const SetTerm &t, const EndpointRoots &known, const RootOf &root_of)
{
    return std::visit(
        [&](const auto &n) -> RootSet {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, EntityRef>) {
                if (auto r = root_of(n.name))
                    return {*r};
                return {};
            } else if constexpr (std::is_same_v<N, VarRef>) {
                return {};
            } else if constexpr (std::is_same_v<N, SetOp>) {
                RootSet l = roots(model, *n.lhs, known, root_of);
                RootSet r = roots(model, *n.rhs, known, root_of);
                if (n.op == SetOpKind::Union) {
                    l.insert(r.begin(), r.end());
                    return l;
                }
                if (n.op == SetOpKind::Intersection) {
                    RootSet out;
                    std::set_intersection(l.begin(), l.end(), r.begin(), r.end(), std::inserter(out, out.end()));
                    return out;
                }
                return l;
            } else {
                RootSet out;
                for (std::size_t i = 0; i < model.relationships.size(); ++i)
                    if (model.relationships[i].name == n.rel.name)
                        out.insert(known.target[i].begin(), known.target[i].end());
                return out;
            }
        },
        t.node);
}

} // namespace

EndpointRoots endpoint_roots(const Model &model, const RootOf &root_of)
{
    EndpointRoots er;
    er.source.resize(model.relationships.size());
    er.target.resize(model.relationships.size());
    // Every step only grows the sets, and they are bounded by the roots.
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < model.relationships.size(); ++i) {
            RootSet s = roots(model, model.relationships[i].source, er, root_of);
            RootSet t = roots(model, model.relationships[i].target, er, root_of);
            if (s != er.source[i] || t != er.target[i]) {
                er.source[i] = std::move(s);
                er.target[i] = std::move(t);
                changed = true;
            }
        }
    }
    return er;
}

} // namespace girl::detail
