#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relaynet/circuit.hpp"
#include "relaynet/distribution.hpp"
#include "relaynet/netlist.hpp"

namespace relaynet {

struct SwitchSet {
    std::vector<Distribution> pswitches;
    bool allow_deterministic = true;

    /// {1/2, 1/3, ..., 1/q} in the (1-p, 0, ..., 0, p) shorthand.
    static SwitchSet reciprocals(int states, std::int64_t q);
    bool contains(const Distribution &d) const;
};

/// Target whose probabilities are all x_i / q^n.
struct TargetSpec {
    Distribution dist;
    std::int64_t q;
    int n;

    /// Smallest n that fits; InvalidTargetError if no n does.
    static TargetSpec make(Distribution dist, std::int64_t q);
    /// InvalidTargetError unless every denominator divides q^n.
    static TargetSpec make(Distribution dist, std::int64_t q, int n);
};

struct CutResult {
    Distribution left;
    Distribution right;
    int index;
};

/// Splits p at point q so that p = left + ((q, 0, ..., 1-q) * right). `index`
/// is the smallest k with sum_{i<=k} p_i >= q.
CutResult block_interval_cut(const Distribution &p, const Rational &q);

struct CutRecord {
    Rational cut;
    int index;
    Distribution left;
    Distribution right;
};

struct SynthesisReport {
    std::string method;
    TargetSpec target;
    Circuit circuit;
    int pswitch_count = 0;
    std::int64_t bound = 0;
    /// Deepest chain of nested cut rounds.
    int rounds = 0;
    std::vector<CutRecord> trace;

    // state reduction only
    int half_pswitches = 0;
    int leaf_pswitches = 0;
    std::int64_t half_bound = 0;

    // composite only: the prime order actually used
    std::vector<std::int64_t> prime_order;
};

Json report_to_json(const SynthesisReport &report);

/// Dyadic targets (q = 2) from (1/2, 0, ..., 0, 1/2) pswitches. The cut index
/// is the smallest k with prefix sum strictly above 1/2.
SynthesisReport synth_binary_nstate(const TargetSpec &target);

/// Halves the target until every piece has at most two active states. Pieces
/// equal to (1/2, 1/2) on their two states become clamped 1/2-pswitches; any
/// other two-state piece becomes a leaf pswitch.
SynthesisReport state_reduction(const TargetSpec &target);

/// Base-q rounds of q-1 cuts at (q-1)/q, (q-2)/(q-1), ..., 1/2.
/// `switches` defaults to SwitchSet::reciprocals(N, q).
SynthesisReport denominator_reduction(const TargetSpec &target, const std::optional<SwitchSet> &switches = {});

/// Runs prime-base rounds for every prime factor of q, trying each order of
/// the distinct primes and keeping the cheapest circuit.
SynthesisReport composite_synthesis(const TargetSpec &target, const std::optional<SwitchSet> &switches = {});

}  // namespace relaynet
