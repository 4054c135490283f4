#include "relaynet/transform.hpp"

#include "relaynet/errors.hpp"

namespace relaynet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

NodePtr dual_node(const Node &node, int states) {
    auto dual_children = [&](const std::vector<NodePtr> &children) {
        std::vector<NodePtr> out;
        out.reserve(children.size());
        for (const auto &c : children) {
            out.push_back(dual_node(*c, states));
        }
        return out;
    };
    return std::visit(
        overloaded{
            [&](const Leaf &leaf) {
                return std::visit(overloaded{
                                      [&](const Pswitch &p) { return make_pswitch(p.dist.reversed(), p.id); },
                                      [&](const Det &d) { return make_det(states - 1 - d.state); },
                                      [&](const Input &in) { return make_input(in.name, !in.complemented); },
                                  },
                                  leaf.element);
            },
            [&](const Series &s) { return make_parallel(dual_children(s.children)); },
            [&](const Parallel &p) { return make_series(dual_children(p.children)); },
            [&](const Graph &) -> NodePtr { throw UnsupportedError("dual is defined for sp circuits only"); },
        },
        node.kind);
}

}  // namespace

Circuit dual(const Circuit &c) { return Circuit(c.states(), dual_node(c.node(), c.states())); }

Distribution remap_states(const Distribution &d, const std::vector<int> &mapping, int states) {
    if (static_cast<int>(mapping.size()) != d.states()) {
        throw DimensionError("mapping has " + std::to_string(mapping.size()) + " entries for a " +
                             std::to_string(d.states()) + "-state distribution");
    }
    std::vector<Rational> out(static_cast<std::size_t>(states), Rational(0));
    int previous = -1;
    for (std::size_t i = 0; i < mapping.size(); ++i) {
        if (mapping[i] <= previous || mapping[i] >= states) {
            throw ValidationError("state mapping must be strictly increasing into 0.." + std::to_string(states - 1));
        }
        previous = mapping[i];
        out[static_cast<std::size_t>(mapping[i])] = d[static_cast<int>(i)];
    }
    return Distribution(std::move(out));
}

Circuit clamp(const Circuit &c, int i, int j) {
    if (i > j || i < 0 || j >= c.states()) {
        throw ValidationError("invalid clamp range [" + std::to_string(i) + ", " + std::to_string(j) + "]");
    }
    const Composer compose(c.states());
    return Circuit(c.states(), compose.series(compose.parallel(c.root(), compose.det(i)), compose.det(j)));
}

}  // namespace relaynet
