#pragma once

#include <string>

#include "relaynet/circuit.hpp"

namespace relaynet {

/// Bracket notation: "(a * b)" for series, "(a + b)" for parallel. A 2-state
/// pswitch prints as its closed probability, wider ones as the full tuple.
std::string render_ascii(const Circuit &c);

/// Graphviz: junctions are points, switches are labeled undirected edges.
std::string render_dot(const Circuit &c);

}  // namespace relaynet
