#include "relaynet/render.hpp"

#include <map>
#include <sstream>

namespace relaynet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string element_label(const SwitchElement &element) {
    return std::visit(overloaded{
                          [](const Pswitch &p) { return p.dist.states() == 2 ? p.dist[1].str() : p.dist.str(); },
                          [](const Det &d) { return "det(" + std::to_string(d.state) + ")"; },
                          [](const Input &in) { return (in.complemented ? "~" : "") + in.name; },
                      },
                      element);
}

std::string ascii(const Node &node) {
    auto join = [](const std::vector<NodePtr> &children, const char *sep) {
        std::string out = "(";
        for (std::size_t i = 0; i < children.size(); ++i) {
            if (i > 0) {
                out += sep;
            }
            out += ascii(*children[i]);
        }
        return out + ")";
    };
    return std::visit(overloaded{
                          [](const Leaf &leaf) { return element_label(leaf.element); },
                          [&](const Series &s) { return join(s.children, " * "); },
                          [&](const Parallel &p) { return join(p.children, " + "); },
                          [](const Graph &g) {
                              std::string out = "graph[" + g.source + "," + g.sink + "]{";
                              for (std::size_t i = 0; i < g.edges.size(); ++i) {
                                  if (i > 0) {
                                      out += "; ";
                                  }
                                  out += g.edges[i].from + "-" + g.edges[i].to + ": " + ascii(*g.edges[i].element);
                              }
                              return out + "}";
                          },
                      },
                      node.kind);
}

class DotWriter {
  public:
    std::string run(const Node &root) {
        body_ << "graph circuit {\n  rankdir=LR;\n  node [shape=point];\n";
        body_ << "  S [shape=circle,label=\"s\"];\n  T [shape=circle,label=\"t\"];\n";
        emit(root, "S", "T");
        body_ << "}\n";
        return body_.str();
    }

  private:
    std::string junction() {
        std::string name = "j" + std::to_string(++junctions_);
        body_ << "  " << name << ";\n";
        return name;
    }

    void emit(const Node &node, const std::string &from, const std::string &to) {
        std::visit(overloaded{
                       [&](const Leaf &leaf) {
                           body_ << "  " << from << " -- " << to << " [label=\"" << element_label(leaf.element)
                                 << "\"];\n";
                       },
                       [&](const Series &s) {
                           std::string at = from;
                           for (std::size_t i = 0; i < s.children.size(); ++i) {
                               const std::string next = i + 1 == s.children.size() ? to : junction();
                               emit(*s.children[i], at, next);
                               at = next;
                           }
                       },
                       [&](const Parallel &p) {
                           for (const auto &c : p.children) {
                               emit(*c, from, to);
                           }
                       },
                       [&](const Graph &g) {
                           std::map<std::string, std::string> names{{g.source, from}, {g.sink, to}};
                           auto name = [&](const std::string &v) {
                               auto it = names.find(v);
                               if (it == names.end()) {
                                   it = names.emplace(v, junction()).first;
                               }
                               return it->second;
                           };
                           for (const auto &e : g.edges) {
                               emit(*e.element, name(e.from), name(e.to));
                           }
                       },
                   },
                   node.kind);
    }

    std::ostringstream body_;
    int junctions_ = 0;
};

}  // namespace

std::string render_ascii(const Circuit &c) { return ascii(c.node()); }

std::string render_dot(const Circuit &c) { return DotWriter().run(c.node()); }

}  // namespace relaynet
