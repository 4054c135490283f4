#pragma once

#include <vector>

#include "relaynet/circuit.hpp"
#include "relaynet/distribution.hpp"

namespace relaynet {

/// Reverses every leaf, swaps series with parallel, maps Det(s) to Det(N-1-s)
/// and toggles input complements. sp trees only; graphs throw UnsupportedError.
Circuit dual(const Circuit &c);

/// Moves d[i] to state mapping[i] of an N-state distribution. `mapping` must
/// be strictly increasing and land in 0..N-1.
Distribution remap_states(const Distribution &d, const std::vector<int> &mapping, int states);

/// Circuit whose value is min(max(X, i), j).
Circuit clamp(const Circuit &c, int i, int j);

}  // namespace relaynet
