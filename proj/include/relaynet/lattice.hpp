#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "relaynet/netlist.hpp"
#include "relaynet/rational.hpp"

namespace relaynet {

/// Finite lattice with precomputed join and meet tables.
class Lattice {
  public:
    /// Closes `leq` reflexively and transitively, then requires antisymmetry
    /// and a unique join and meet for every pair. ValidationError otherwise.
    static Lattice from_relation(std::vector<std::string> elements,
                                 const std::vector<std::pair<std::string, std::string>> &leq);
    /// {"elements": [...], "leq": [["a","b"], ...]}
    static Lattice from_json(const Json &j);
    /// Labels "0" < "1" < ... < "n-1".
    static Lattice chain(int n);
    /// 00 < 01, 10 < 11.
    static Lattice diamond();
    /// "diamond", "chain:N", or a path to a lattice JSON file.
    static Lattice load(const std::string &spec);

    int size() const { return static_cast<int>(labels_.size()); }
    const std::string &label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
    const std::vector<std::string> &labels() const { return labels_; }
    int index(const std::string &label) const;
    bool leq(int a, int b) const { return leq_[static_cast<std::size_t>(a * size() + b)]; }
    int join(int a, int b) const { return join_[static_cast<std::size_t>(a * size() + b)]; }
    int meet(int a, int b) const { return meet_[static_cast<std::size_t>(a * size() + b)]; }
    int bottom() const { return bottom_; }
    int top() const { return top_; }

    Json to_json() const;

    friend bool operator==(const Lattice &a, const Lattice &b) {
        return a.labels_ == b.labels_ && a.leq_ == b.leq_;
    }

  private:
    std::vector<std::string> labels_;
    std::vector<bool> leq_;
    std::vector<int> join_;
    std::vector<int> meet_;
    int bottom_ = 0;
    int top_ = 0;
};

using LatticePtr = std::shared_ptr<const Lattice>;

/// Distribution over lattice elements, indexed in element order.
class LatticeDistribution {
  public:
    LatticeDistribution(LatticePtr lattice, std::vector<Rational> probs);
    static LatticeDistribution point(LatticePtr lattice, int element);
    /// Comma-separated rationals in element order.
    static LatticeDistribution parse(LatticePtr lattice, const std::string &csv);

    const LatticePtr &lattice() const { return lattice_; }
    const std::vector<Rational> &probs() const { return probs_; }
    const Rational &operator[](int i) const { return probs_[static_cast<std::size_t>(i)]; }
    const Rational &at(const std::string &label) const { return (*this)[lattice_->index(label)]; }
    std::vector<std::string> to_strings() const;
    /// "(1/4,1/4,1/4,1/4)"
    std::string str() const;

    friend bool operator==(const LatticeDistribution &a, const LatticeDistribution &b) {
        return *a.lattice_ == *b.lattice_ && a.probs_ == b.probs_;
    }

  private:
    LatticePtr lattice_;
    std::vector<Rational> probs_;
};

enum class LatticeOp { join, meet };

/// result(e) = sum over x op y = e of p(x) q(y). ValidationError on a lattice mismatch.
LatticeDistribution compose_lattice(const LatticeDistribution &p, const LatticeDistribution &q, LatticeOp op);

struct SearchSpec {
    LatticePtr lattice;
    std::vector<LatticeDistribution> switch_set;
    bool include_deterministic = true;
    int max_switches = 1;
    LatticeDistribution target;
    /// Distinct distributions kept before giving up with CapacityError.
    std::size_t cap = 2'000'000;
};

struct SearchResult {
    bool found = false;
    /// Bracketed expression: "+" is join and "*" is meet.
    std::string witness;
    int switches = 0;
    /// Distinct distributions reachable within the explored sizes.
    std::size_t explored = 0;
    int max_switches = 0;

    std::string message() const;
    Json to_json() const;
};

/// Breadth-first over leaf counts, deduplicated by distribution. A
/// distribution first reached with k leaves is never rebuilt at a larger k.
SearchResult search_expressible(const SearchSpec &spec);

/// Every distinct distribution expressible with at most `spec.max_switches`
/// leaves; levels[k - 1] holds those first reached with k leaves.
std::vector<std::vector<LatticeDistribution>> enumerate_expressible(const SearchSpec &spec);

}  // namespace relaynet
