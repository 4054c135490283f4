#include "relaynet/circuit.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>

#include "relaynet/errors.hpp"

namespace relaynet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool terminals_connected(const Graph &g) {
    std::map<std::string, std::vector<std::string>> adjacency;
    for (const auto &e : g.edges) {
        adjacency[e.from].push_back(e.to);
        adjacency[e.to].push_back(e.from);
    }
    std::set<std::string> seen{g.source};
    std::queue<std::string> frontier;
    frontier.push(g.source);
    while (!frontier.empty()) {
        const std::string v = frontier.front();
        frontier.pop();
        if (v == g.sink) {
            return true;
        }
        for (const auto &w : adjacency[v]) {
            if (seen.insert(w).second) {
                frontier.push(w);
            }
        }
    }
    return false;
}

void validate_node(const Node &node, int states, std::set<std::string> &ids) {
    std::visit(
        overloaded{
            [&](const Leaf &leaf) {
                std::visit(overloaded{
                               [&](const Pswitch &p) {
                                   if (p.dist.states() != states) {
                                       throw DimensionError("pswitch '" + p.id + "' has " +
                                                            std::to_string(p.dist.states()) +
                                                            " states, circuit has " +
                                                            std::to_string(states));
                                   }
                                   if (p.id.empty()) {
                                       throw ValidationError("pswitch without an id");
                                   }
                                   if (!ids.insert(p.id).second) {
                                       throw ValidationError("pswitch id '" + p.id + "' used twice");
                                   }
                               },
                               [&](const Det &d) {
                                   if (d.state < 0 || d.state >= states) {
                                       throw DimensionError("deterministic state " +
                                                            std::to_string(d.state) + " out of range");
                                   }
                               },
                               [&](const Input &in) {
                                   if (in.name.empty()) {
                                       throw ValidationError("input without a name");
                                   }
                               },
                           },
                           leaf.element);
            },
            [&](const Series &s) {
                if (s.children.size() < 2) {
                    throw ValidationError("series composition needs at least 2 children");
                }
                for (const auto &child : s.children) {
                    validate_node(*child, states, ids);
                }
            },
            [&](const Parallel &p) {
                if (p.children.size() < 2) {
                    throw ValidationError("parallel composition needs at least 2 children");
                }
                for (const auto &child : p.children) {
                    validate_node(*child, states, ids);
                }
            },
            [&](const Graph &g) {
                if (g.source == g.sink) {
                    throw ValidationError("graph terminals must differ");
                }
                for (const auto &e : g.edges) {
                    if (!e.element) {
                        throw ValidationError("graph edge without an element");
                    }
                    if (e.from == e.to) {
                        throw ValidationError("graph edge is a self-loop at '" + e.from + "'");
                    }
                    validate_node(*e.element, states, ids);
                }
                if (!terminals_connected(g)) {
                    throw ValidationError("graph terminals are not connected");
                }
            },
        },
        node.kind);
}

bool elements_equal(const SwitchElement &a, const SwitchElement &b) {
    if (a.index() != b.index()) {
        return false;
    }
    if (const auto *p = std::get_if<Pswitch>(&a)) {
        const auto &q = std::get<Pswitch>(b);
        return p->id == q.id && p->dist == q.dist;
    }
    if (const auto *d = std::get_if<Det>(&a)) {
        return d->state == std::get<Det>(b).state;
    }
    const auto &x = std::get<Input>(a);
    const auto &y = std::get<Input>(b);
    return x.name == y.name && x.complemented == y.complemented;
}

bool children_equal(const std::vector<NodePtr> &a, const std::vector<NodePtr> &b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(),
                      [](const NodePtr &x, const NodePtr &y) { return structurally_equal(*x, *y); });
}

void walk(const Node &node, const std::function<void(const Node &)> &visit) {
    visit(node);
    std::visit(overloaded{
                   [](const Leaf &) {},
                   [&](const Series &s) {
                       for (const auto &c : s.children) walk(*c, visit);
                   },
                   [&](const Parallel &p) {
                       for (const auto &c : p.children) walk(*c, visit);
                   },
                   [&](const Graph &g) {
                       for (const auto &e : g.edges) walk(*e.element, visit);
                   },
               },
               node.kind);
}

}  // namespace

NodePtr make_leaf(SwitchElement element) {
    return std::make_shared<const Node>(Node{Leaf{std::move(element)}});
}

NodePtr make_pswitch(Distribution dist, std::string id) {
    return make_leaf(Pswitch{std::move(dist), std::move(id)});
}

NodePtr make_det(int state) { return make_leaf(Det{state}); }

NodePtr make_input(std::string name, bool complemented) {
    return make_leaf(Input{std::move(name), complemented});
}

NodePtr make_series(std::vector<NodePtr> children) {
    return std::make_shared<const Node>(Node{Series{std::move(children)}});
}

NodePtr make_parallel(std::vector<NodePtr> children) {
    return std::make_shared<const Node>(Node{Parallel{std::move(children)}});
}

NodePtr make_graph(std::string source, std::string sink, std::vector<Edge> edges) {
    return std::make_shared<const Node>(Node{Graph{std::move(source), std::move(sink), std::move(edges)}});
}

std::optional<int> constant_state(const NodePtr &node) {
    if (const auto *leaf = std::get_if<Leaf>(&node->kind)) {
        if (const auto *d = std::get_if<Det>(&leaf->element)) {
            return d->state;
        }
    }
    return std::nullopt;
}

bool structurally_equal(const Node &a, const Node &b) {
    if (a.kind.index() != b.kind.index()) {
        return false;
    }
    return std::visit(
        overloaded{
            [&](const Leaf &x) { return elements_equal(x.element, std::get<Leaf>(b.kind).element); },
            [&](const Series &x) { return children_equal(x.children, std::get<Series>(b.kind).children); },
            [&](const Parallel &x) { return children_equal(x.children, std::get<Parallel>(b.kind).children); },
            [&](const Graph &x) {
                const auto &y = std::get<Graph>(b.kind);
                if (x.source != y.source || x.sink != y.sink || x.edges.size() != y.edges.size()) {
                    return false;
                }
                for (std::size_t i = 0; i < x.edges.size(); ++i) {
                    const auto &e = x.edges[i];
                    const auto &f = y.edges[i];
                    if (e.from != f.from || e.to != f.to || !structurally_equal(*e.element, *f.element)) {
                        return false;
                    }
                }
                return true;
            },
        },
        a.kind);
}

Circuit::Circuit(int states, NodePtr root) : states_(states), root_(std::move(root)) {
    if (states_ < 2) {
        throw ValidationError("a circuit needs at least 2 states");
    }
    if (!root_) {
        throw ValidationError("empty circuit");
    }
    std::set<std::string> ids;
    validate_node(*root_, states_, ids);
}

SwitchCounts count_switches(const NodePtr &node) {
    SwitchCounts counts;
    walk(*node, [&](const Node &n) {
        if (const auto *leaf = std::get_if<Leaf>(&n.kind)) {
            std::visit(overloaded{
                           [&](const Pswitch &) { ++counts.pswitches; },
                           [&](const Det &) { ++counts.deterministic; },
                           [&](const Input &) { ++counts.inputs; },
                       },
                       leaf->element);
        }
    });
    return counts;
}

SwitchCounts count_switches(const Circuit &c) { return count_switches(c.root()); }

std::vector<const Pswitch *> collect_pswitches(const Circuit &c) {
    std::vector<const Pswitch *> out;
    walk(c.node(), [&](const Node &n) {
        if (const auto *leaf = std::get_if<Leaf>(&n.kind)) {
            if (const auto *p = std::get_if<Pswitch>(&leaf->element)) {
                out.push_back(p);
            }
        }
    });
    return out;
}

std::set<std::string> input_names(const Circuit &c) {
    std::set<std::string> out;
    walk(c.node(), [&](const Node &n) {
        if (const auto *leaf = std::get_if<Leaf>(&n.kind)) {
            if (const auto *in = std::get_if<Input>(&leaf->element)) {
                out.insert(in->name);
            }
        }
    });
    return out;
}

bool is_series_parallel(const Circuit &c) {
    bool sp = true;
    walk(c.node(), [&](const Node &n) { sp = sp && !std::holds_alternative<Graph>(n.kind); });
    return sp;
}

NodePtr Composer::series(const NodePtr &a, const NodePtr &b) const {
    const auto ca = constant_state(a);
    const auto cb = constant_state(b);
    if (ca && cb) {
        return make_det(std::min(*ca, *cb));
    }
    if ((ca && *ca == 0) || (cb && *cb == 0)) {
        return make_det(0);
    }
    if (ca && *ca == top()) {
        return b;
    }
    if (cb && *cb == top()) {
        return a;
    }
    return make_series({a, b});
}

NodePtr Composer::parallel(const NodePtr &a, const NodePtr &b) const {
    const auto ca = constant_state(a);
    const auto cb = constant_state(b);
    if (ca && cb) {
        return make_det(std::max(*ca, *cb));
    }
    if ((ca && *ca == top()) || (cb && *cb == top())) {
        return make_det(top());
    }
    if (ca && *ca == 0) {
        return b;
    }
    if (cb && *cb == 0) {
        return a;
    }
    return make_parallel({a, b});
}

NodePtr Composer::series(const std::vector<NodePtr> &parts) const {
    if (parts.empty()) {
        return make_det(top());
    }
    NodePtr acc = parts.back();
    for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) {
        acc = series(*it, acc);
    }
    return acc;
}

NodePtr Composer::parallel(const std::vector<NodePtr> &parts) const {
    // constants merge into one Det at the first constant's position
    std::vector<NodePtr> kept;
    int constant = 0;
    std::size_t slot = 0;
    bool seen = false;
    for (const auto &part : parts) {
        if (const auto c = constant_state(part)) {
            constant = std::max(constant, *c);
            if (!seen) {
                slot = kept.size();
                seen = true;
            }
        } else {
            kept.push_back(part);
        }
    }
    if (constant == top()) {
        return make_det(top());
    }
    if (constant > 0) {
        kept.insert(kept.begin() + static_cast<std::ptrdiff_t>(slot), make_det(constant));
    }
    if (kept.empty()) {
        return make_det(0);
    }
    if (kept.size() == 1) {
        return kept.front();
    }
    return make_parallel(std::move(kept));
}

NodePtr Composer::graph(const std::string &source, const std::string &sink, std::vector<Edge> edges) const {
    std::map<std::string, std::string> parent;
    std::function<std::string(const std::string &)> find = [&](const std::string &v) -> std::string {
        auto it = parent.find(v);
        if (it == parent.end() || it->second == v) {
            return v;
        }
        return it->second = find(it->second);
    };
    std::vector<Edge> kept;
    for (auto &e : edges) {
        const auto c = constant_state(e.element);
        if (c && *c == 0) {
            continue;
        }
        if (c && *c == top()) {
            std::string a = find(e.from);
            std::string b = find(e.to);
            if (a != b) {
                // keep the terminal names as representatives
                if (b == source || b == sink) {
                    std::swap(a, b);
                }
                parent[b] = a;
            }
            continue;
        }
        kept.push_back(std::move(e));
    }
    const std::string s = find(source);
    const std::string t = find(sink);
    if (s == t) {
        return make_det(top());
    }
    std::vector<Edge> renamed;
    for (auto &e : kept) {
        std::string a = find(e.from);
        std::string b = find(e.to);
        if (a == b) {
            continue;
        }
        renamed.push_back(Edge{std::move(a), std::move(b), std::move(e.element)});
    }
    Graph probe{s, t, renamed};
    if (!terminals_connected(probe)) {
        return make_det(0);
    }
    if (renamed.size() == 1) {
        return renamed.front().element;
    }
    return make_graph(s, t, std::move(renamed));
}

}  // namespace relaynet
