#include "relaynet/netlist.hpp"

#include "relaynet/errors.hpp"

namespace relaynet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

NodePtr node_from_json(const Json &j);

const Json &field(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw ValidationError(std::string("netlist node is missing '") + key + "'");
    }
    return j.at(key);
}

std::string string_field(const Json &j, const char *key) {
    const Json &v = field(j, key);
    if (!v.is_string()) {
        throw ValidationError(std::string("netlist field '") + key + "' must be a string");
    }
    return v.get<std::string>();
}

int int_field(const Json &j, const char *key) {
    const Json &v = field(j, key);
    if (!v.is_number_integer()) {
        throw ValidationError(std::string("netlist field '") + key + "' must be an integer");
    }
    return v.get<int>();
}

std::vector<NodePtr> children_from_json(const Json &j) {
    const Json &arr = field(j, "children");
    if (!arr.is_array()) {
        throw ValidationError("netlist 'children' must be an array");
    }
    std::vector<NodePtr> out;
    for (const auto &c : arr) {
        out.push_back(node_from_json(c));
    }
    return out;
}

NodePtr node_from_json(const Json &j) {
    const std::string op = string_field(j, "op");
    if (op == "pswitch") {
        return make_pswitch(distribution_from_json(field(j, "dist")), string_field(j, "id"));
    }
    if (op == "det") {
        return make_det(int_field(j, "state"));
    }
    if (op == "input") {
        bool complemented = false;
        if (j.contains("complemented")) {
            if (!j.at("complemented").is_boolean()) {
                throw ValidationError("netlist field 'complemented' must be a boolean");
            }
            complemented = j.at("complemented").get<bool>();
        }
        return make_input(string_field(j, "name"), complemented);
    }
    if (op == "series") {
        return make_series(children_from_json(j));
    }
    if (op == "parallel") {
        return make_parallel(children_from_json(j));
    }
    if (op == "graph") {
        const Json &terminals = field(j, "terminals");
        if (!terminals.is_array() || terminals.size() != 2 || !terminals[0].is_string() ||
            !terminals[1].is_string()) {
            throw ValidationError("graph 'terminals' must be two vertex names");
        }
        const Json &edges = field(j, "edges");
        if (!edges.is_array()) {
            throw ValidationError("graph 'edges' must be an array");
        }
        std::vector<Edge> out;
        for (const auto &e : edges) {
            out.push_back(Edge{string_field(e, "from"), string_field(e, "to"), node_from_json(field(e, "element"))});
        }
        return make_graph(terminals[0].get<std::string>(), terminals[1].get<std::string>(), std::move(out));
    }
    throw ValidationError("unknown netlist op '" + op + "'");
}

}  // namespace

Json distribution_to_json(const Distribution &d) {
    Json out = Json::array();
    for (const auto &s : d.to_strings()) {
        out.push_back(s);
    }
    return out;
}

Distribution distribution_from_json(const Json &j) {
    if (!j.is_array()) {
        throw ValidationError("distribution must be an array of rational strings");
    }
    std::vector<Rational> probs;
    for (const auto &v : j) {
        if (v.is_string()) {
            probs.push_back(Rational::parse(v.get<std::string>()));
        } else if (v.is_number_integer()) {
            probs.emplace_back(v.get<std::int64_t>());
        } else {
            throw ValidationError("distribution entries must be rational strings");
        }
    }
    return Distribution(std::move(probs));
}

Json node_to_json(const Node &node) {
    auto children = [](const std::vector<NodePtr> &cs) {
        Json arr = Json::array();
        for (const auto &c : cs) {
            arr.push_back(node_to_json(*c));
        }
        return arr;
    };
    Json out = Json::object();
    std::visit(overloaded{
                   [&](const Leaf &leaf) {
                       std::visit(overloaded{
                                      [&](const Pswitch &p) {
                                          out["op"] = "pswitch";
                                          out["dist"] = distribution_to_json(p.dist);
                                          out["id"] = p.id;
                                      },
                                      [&](const Det &d) {
                                          out["op"] = "det";
                                          out["state"] = d.state;
                                      },
                                      [&](const Input &in) {
                                          out["op"] = "input";
                                          out["name"] = in.name;
                                          out["complemented"] = in.complemented;
                                      },
                                  },
                                  leaf.element);
                   },
                   [&](const Series &s) {
                       out["op"] = "series";
                       out["children"] = children(s.children);
                   },
                   [&](const Parallel &p) {
                       out["op"] = "parallel";
                       out["children"] = children(p.children);
                   },
                   [&](const Graph &g) {
                       out["op"] = "graph";
                       out["terminals"] = Json::array({g.source, g.sink});
                       Json edges = Json::array();
                       for (const auto &e : g.edges) {
                           Json edge = Json::object();
                           edge["from"] = e.from;
                           edge["to"] = e.to;
                           edge["element"] = node_to_json(*e.element);
                           edges.push_back(std::move(edge));
                       }
                       out["edges"] = std::move(edges);
                   },
               },
               node.kind);
    return out;
}

Json netlist_to_json(const Circuit &c) {
    Json out = Json::object();
    out["states"] = c.states();
    out["circuit"] = node_to_json(c.node());
    return out;
}

Circuit netlist_from_json(const Json &j) {
    if (!j.is_object()) {
        throw ValidationError("netlist must be a JSON object");
    }
    return Circuit(int_field(j, "states"), node_from_json(field(j, "circuit")));
}

Circuit parse_netlist(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw ValidationError(std::string("netlist is not valid JSON: ") + e.what());
    }
    return netlist_from_json(j);
}

std::string dump_netlist(const Circuit &c, int indent) { return netlist_to_json(c).dump(indent); }

}  // namespace relaynet
