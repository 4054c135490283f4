#include "relaynet/evaluate.hpp"

#include <algorithm>
#include <numeric>

#include <gmpxx.h>

#include "relaynet/errors.hpp"

namespace relaynet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

int input_state(const Input &in, const Assignment &a, int states) {
    auto it = a.find(in.name);
    if (it == a.end()) {
        throw MissingAssignmentError("input '" + in.name + "' is not assigned");
    }
    if (it->second < 0 || it->second >= states) {
        throw DimensionError("input '" + in.name + "' assigned out-of-range state " + std::to_string(it->second));
    }
    return in.complemented ? states - 1 - it->second : it->second;
}

// Graph with vertices renumbered 0..V-1.
struct IndexedGraph {
    int vertices = 0;
    int source = 0;
    int sink = 0;
    std::vector<std::pair<int, int>> ends;
};

IndexedGraph index_graph(const Graph &g) {
    std::map<std::string, int> ids;
    auto id = [&](const std::string &v) {
        auto [it, inserted] = ids.emplace(v, static_cast<int>(ids.size()));
        return it->second;
    };
    IndexedGraph out;
    out.source = id(g.source);
    out.sink = id(g.sink);
    for (const auto &e : g.edges) {
        out.ends.emplace_back(id(e.from), id(e.to));
    }
    out.vertices = static_cast<int>(ids.size());
    return out;
}

int find_root(std::vector<int> &parent, int v) {
    while (parent[v] != v) {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    return v;
}

// Bottleneck value of the widest source-sink path: add edges in decreasing
// value order until the terminals join.
int widest_path(const IndexedGraph &g, const std::vector<int> &values, std::vector<int> &order,
                std::vector<int> &parent) {
    order.resize(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return values[x] > values[y]; });
    parent.resize(static_cast<std::size_t>(g.vertices));
    std::iota(parent.begin(), parent.end(), 0);
    for (int e : order) {
        const int a = find_root(parent, g.ends[e].first);
        const int b = find_root(parent, g.ends[e].second);
        if (a != b) {
            parent[a] = b;
        }
        if (find_root(parent, g.source) == find_root(parent, g.sink)) {
            return values[e];
        }
    }
    return 0;
}

Distribution eval_graph(const Graph &g, int states, const std::vector<Distribution> &edge_dists,
                        const EvalOptions &options) {
    const IndexedGraph indexed = index_graph(g);
    const std::size_t m = edge_dists.size();
    std::vector<std::vector<int>> support(m);
    int random_edges = 0;
    for (std::size_t e = 0; e < m; ++e) {
        for (int s = 0; s < states; ++s) {
            if (!edge_dists[e][s].is_zero()) {
                support[e].push_back(s);
            }
        }
        random_edges += support[e].size() > 1 ? 1 : 0;
    }
    if (random_edges > options.graph_cap) {
        throw CapacityError("graph has " + std::to_string(random_edges) + " random edges, cap is " +
                            std::to_string(options.graph_cap));
    }

    std::vector<Rational> result(static_cast<std::size_t>(states));
    std::vector<std::size_t> pick(m, 0);
    std::vector<int> values(m);
    std::vector<int> order;
    std::vector<int> parent;
    while (true) {
        Rational weight(1);
        for (std::size_t e = 0; e < m; ++e) {
            values[e] = support[e][pick[e]];
            weight *= edge_dists[e][values[e]];
        }
        result[static_cast<std::size_t>(widest_path(indexed, values, order, parent))] += weight;

        std::size_t e = 0;
        while (e < m && ++pick[e] == support[e].size()) {
            pick[e] = 0;
            ++e;
        }
        if (e == m) {
            break;
        }
    }
    return Distribution(std::move(result));
}

Distribution eval_node(const Node &node, int states, const Assignment &a, const EvalOptions &options) {
    return std::visit(
        overloaded{
            [&](const Leaf &leaf) {
                return std::visit(overloaded{
                                      [&](const Pswitch &p) { return p.dist; },
                                      [&](const Det &d) { return Distribution::point(states, d.state); },
                                      [&](const Input &in) {
                                          return Distribution::point(states, input_state(in, a, states));
                                      },
                                  },
                                  leaf.element);
            },
            [&](const Series &s) {
                Distribution acc = eval_node(*s.children.front(), states, a, options);
                for (std::size_t i = 1; i < s.children.size(); ++i) {
                    acc = compose_series(acc, eval_node(*s.children[i], states, a, options));
                }
                return acc;
            },
            [&](const Parallel &p) {
                Distribution acc = eval_node(*p.children.front(), states, a, options);
                for (std::size_t i = 1; i < p.children.size(); ++i) {
                    acc = compose_parallel(acc, eval_node(*p.children[i], states, a, options));
                }
                return acc;
            },
            [&](const Graph &g) {
                std::vector<Distribution> edge_dists;
                edge_dists.reserve(g.edges.size());
                for (const auto &e : g.edges) {
                    edge_dists.push_back(eval_node(*e.element, states, a, options));
                }
                return eval_graph(g, states, edge_dists, options);
            },
        },
        node.kind);
}

// Postorder program for the oracle. Each instruction writes one slot.
struct Instr {
    enum class Op { Random, Const, Min, Max, Graph } op;
    int value = 0;             // Const: state; Random: pswitch index
    std::vector<int> args;     // Min/Max/Graph: operand slots
    const Graph *graph = nullptr;
    IndexedGraph indexed;
};

struct Program {
    std::vector<Instr> code;
    std::vector<const Pswitch *> pswitches;
};

int compile(const Node &node, int states, const Assignment &a, Program &prog) {
    Instr instr{};
    std::visit(overloaded{
                   [&](const Leaf &leaf) {
                       std::visit(overloaded{
                                      [&](const Pswitch &p) {
                                          instr.op = Instr::Op::Random;
                                          instr.value = static_cast<int>(prog.pswitches.size());
                                          prog.pswitches.push_back(&p);
                                      },
                                      [&](const Det &d) {
                                          instr.op = Instr::Op::Const;
                                          instr.value = d.state;
                                      },
                                      [&](const Input &in) {
                                          instr.op = Instr::Op::Const;
                                          instr.value = input_state(in, a, states);
                                      },
                                  },
                                  leaf.element);
                   },
                   [&](const Series &s) {
                       instr.op = Instr::Op::Min;
                       for (const auto &c : s.children) instr.args.push_back(compile(*c, states, a, prog));
                   },
                   [&](const Parallel &p) {
                       instr.op = Instr::Op::Max;
                       for (const auto &c : p.children) instr.args.push_back(compile(*c, states, a, prog));
                   },
                   [&](const Graph &g) {
                       instr.op = Instr::Op::Graph;
                       instr.graph = &g;
                       instr.indexed = index_graph(g);
                       for (const auto &e : g.edges) instr.args.push_back(compile(*e.element, states, a, prog));
                   },
               },
               node.kind);
    prog.code.push_back(std::move(instr));
    return static_cast<int>(prog.code.size()) - 1;
}

}  // namespace

Distribution compose_series(const Distribution &p, const Distribution &q) {
    require_same_states(p, q);
    const int n = p.states();
    // P(min >= k) = P(X >= k) P(Y >= k)
    std::vector<Rational> tail(static_cast<std::size_t>(n) + 1, Rational(0));
    Rational tp(0);
    Rational tq(0);
    for (int k = n - 1; k >= 0; --k) {
        tp += p[k];
        tq += q[k];
        tail[static_cast<std::size_t>(k)] = tp * tq;
    }
    std::vector<Rational> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        out[static_cast<std::size_t>(k)] = tail[static_cast<std::size_t>(k)] - tail[static_cast<std::size_t>(k) + 1];
    }
    return Distribution(std::move(out));
}

Distribution compose_parallel(const Distribution &p, const Distribution &q) {
    require_same_states(p, q);
    const int n = p.states();
    // P(max <= k) = P(X <= k) P(Y <= k)
    std::vector<Rational> out(static_cast<std::size_t>(n));
    Rational cp(0);
    Rational cq(0);
    Rational prev(0);
    for (int k = 0; k < n; ++k) {
        cp += p[k];
        cq += q[k];
        Rational head = cp * cq;
        out[static_cast<std::size_t>(k)] = head - prev;
        prev = std::move(head);
    }
    return Distribution(std::move(out));
}

Distribution eval(const Circuit &c, const Assignment &a, const EvalOptions &options) {
    return eval_node(c.node(), c.states(), a, options);
}

Distribution eval_oracle(const Circuit &c, const Assignment &a, const OracleOptions &options) {
    const int states = c.states();
    Program prog;
    compile(c.node(), states, a, prog);

    // Integer weights: pswitch i contributes num_i[s] / den_i.
    const std::size_t m = prog.pswitches.size();
    std::vector<std::vector<int>> support(m);
    std::vector<std::vector<mpz_class>> weight(m);
    mpz_class total_den = 1;
    std::uint64_t outcomes = 1;
    for (std::size_t i = 0; i < m; ++i) {
        const Distribution &d = prog.pswitches[i]->dist;
        mpz_class den = 1;
        for (int s = 0; s < states; ++s) {
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d[s].den().get_mpz_t());
        }
        for (int s = 0; s < states; ++s) {
            if (!d[s].is_zero()) {
                support[i].push_back(s);
                weight[i].push_back(d[s].num() * (den / d[s].den()));
            }
        }
        total_den *= den;
        outcomes *= support[i].size();
        if (outcomes > options.cap) {
            throw CapacityError("oracle enumeration exceeds cap of " + std::to_string(options.cap) + " outcomes");
        }
    }

    std::vector<mpz_class> acc(static_cast<std::size_t>(states), 0);
    std::vector<int> outcome(m, 0);
    std::vector<int> slots(prog.code.size(), 0);
    std::vector<int> edge_values;
    std::vector<int> order;
    std::vector<int> parent;

    auto run = [&]() {
        for (std::size_t i = 0; i < prog.code.size(); ++i) {
            const Instr &in = prog.code[i];
            switch (in.op) {
            case Instr::Op::Random:
                slots[i] = outcome[static_cast<std::size_t>(in.value)];
                break;
            case Instr::Op::Const:
                slots[i] = in.value;
                break;
            case Instr::Op::Min: {
                int v = states - 1;
                for (int arg : in.args) v = std::min(v, slots[static_cast<std::size_t>(arg)]);
                slots[i] = v;
                break;
            }
            case Instr::Op::Max: {
                int v = 0;
                for (int arg : in.args) v = std::max(v, slots[static_cast<std::size_t>(arg)]);
                slots[i] = v;
                break;
            }
            case Instr::Op::Graph:
                edge_values.clear();
                for (int arg : in.args) edge_values.push_back(slots[static_cast<std::size_t>(arg)]);
                slots[i] = widest_path(in.indexed, edge_values, order, parent);
                break;
            }
        }
        return slots.back();
    };

    // Depth-first over pswitches, carrying the running weight product.
    auto dfs = [&](auto &self, std::size_t depth, const mpz_class &w) -> void {
        if (depth == m) {
            acc[static_cast<std::size_t>(run())] += w;
            return;
        }
        for (std::size_t j = 0; j < support[depth].size(); ++j) {
            outcome[depth] = support[depth][j];
            self(self, depth + 1, w * weight[depth][j]);
        }
    };
    dfs(dfs, 0, mpz_class(1));

    std::vector<Rational> probs;
    probs.reserve(static_cast<std::size_t>(states));
    for (auto &w : acc) {
        probs.emplace_back(w, total_den);
    }
    return Distribution(std::move(probs));
}

}  // namespace relaynet
