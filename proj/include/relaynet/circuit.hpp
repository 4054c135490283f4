#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "relaynet/distribution.hpp"

namespace relaynet {

/// Stochastic switch; `id` names one physical, independently sampled instance.
struct Pswitch {
    Distribution dist;
    std::string id;
};

/// Deterministic switch fixed in one state.
struct Det {
    int state = 0;
};

/// Switch driven by an input variable. A complemented input in state s reads N-1-s.
struct Input {
    std::string name;
    bool complemented = false;
};

using SwitchElement = std::variant<Pswitch, Det, Input>;

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Leaf {
    SwitchElement element;
};

/// min over children.
struct Series {
    std::vector<NodePtr> children;
};

/// max over children.
struct Parallel {
    std::vector<NodePtr> children;
};

/// Undirected two-terminal network. Each edge carries a sub-circuit (a single
/// switch in the common case); its value is the max over source-sink paths of
/// the min along the path.
struct Edge {
    std::string from;
    std::string to;
    NodePtr element;
};

struct Graph {
    std::string source;
    std::string sink;
    std::vector<Edge> edges;
};

struct Node {
    std::variant<Leaf, Series, Parallel, Graph> kind;
};

NodePtr make_leaf(SwitchElement element);
NodePtr make_pswitch(Distribution dist, std::string id);
NodePtr make_det(int state);
NodePtr make_input(std::string name, bool complemented = false);
NodePtr make_series(std::vector<NodePtr> children);
NodePtr make_parallel(std::vector<NodePtr> children);
NodePtr make_graph(std::string source, std::string sink, std::vector<Edge> edges);

/// The state of a Det leaf, or nullopt for anything else.
std::optional<int> constant_state(const NodePtr &node);

bool structurally_equal(const Node &a, const Node &b);

/// A validated circuit over `states` states. Immutable; copies share nodes.
class Circuit {
  public:
    /// Throws ValidationError (or DimensionError) if any invariant fails:
    /// element/state-count consistency, >= 2 children per series/parallel,
    /// distinct graph terminals joined by a path, unique pswitch ids.
    Circuit(int states, NodePtr root);

    int states() const { return states_; }
    const NodePtr &root() const { return root_; }
    const Node &node() const { return *root_; }

    friend bool operator==(const Circuit &a, const Circuit &b) {
        return a.states_ == b.states_ && structurally_equal(*a.root_, *b.root_);
    }

  private:
    int states_;
    NodePtr root_;
};

struct SwitchCounts {
    int pswitches = 0;
    int deterministic = 0;
    int inputs = 0;

    friend bool operator==(const SwitchCounts &, const SwitchCounts &) = default;
};

/// Leaf counts by kind; inputs are counted per occurrence.
SwitchCounts count_switches(const Circuit &c);
SwitchCounts count_switches(const NodePtr &node);

/// Pswitch leaves in depth-first order.
std::vector<const Pswitch *> collect_pswitches(const Circuit &c);
std::set<std::string> input_names(const Circuit &c);
bool is_series_parallel(const Circuit &c);

/// Hands out fresh pswitch ids "<prefix>1", "<prefix>2", ...
class IdSource {
  public:
    explicit IdSource(std::string prefix = "p") : prefix_(std::move(prefix)) {}
    std::string next() { return prefix_ + std::to_string(++counter_); }
    int issued() const { return counter_; }

  private:
    std::string prefix_;
    int counter_ = 0;
};

/// Node factory that folds constant deterministic switches away:
/// x*0 = 0, x*(N-1) = x, x+0 = x, x+(N-1) = N-1. Graph edges that are always
/// open are dropped and always-closed edges are contracted.
class Composer {
  public:
    explicit Composer(int states) : states_(states) {}

    int states() const { return states_; }
    int top() const { return states_ - 1; }

    NodePtr det(int state) const { return make_det(state); }
    NodePtr series(const NodePtr &a, const NodePtr &b) const;
    NodePtr parallel(const NodePtr &a, const NodePtr &b) const;
    NodePtr series(const std::vector<NodePtr> &parts) const;
    NodePtr parallel(const std::vector<NodePtr> &parts) const;
    NodePtr graph(const std::string &source, const std::string &sink, std::vector<Edge> edges) const;

  private:
    int states_;
};

}  // namespace relaynet
