#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "relaynet/circuit.hpp"
#include "relaynet/distribution.hpp"

namespace relaynet {

/// Input variable name -> state in 0..N-1.
using Assignment = std::map<std::string, int>;

/// Distribution of min(X, Y) for independent X ~ p, Y ~ q.
Distribution compose_series(const Distribution &p, const Distribution &q);
/// Distribution of max(X, Y) for independent X ~ p, Y ~ q.
Distribution compose_parallel(const Distribution &p, const Distribution &q);

struct EvalOptions {
    /// Max number of random edges (more than one active state) in one graph node.
    int graph_cap = 20;
};

/// Exact output distribution. sp nodes compose recursively; graph nodes
/// enumerate the joint outcomes of their edges and take the widest s-t path.
Distribution eval(const Circuit &c, const Assignment &a = {}, const EvalOptions &options = {});

struct OracleOptions {
    /// Max product of pswitch support sizes.
    std::uint64_t cap = std::uint64_t{1} << 22;
};

/// Independent brute force: enumerates every joint outcome of all pswitches in
/// the circuit and evaluates the min/max structure per outcome.
Distribution eval_oracle(const Circuit &c, const Assignment &a = {}, const OracleOptions &options = {});

}  // namespace relaynet
