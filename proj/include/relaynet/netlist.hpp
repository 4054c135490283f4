#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "relaynet/circuit.hpp"
#include "relaynet/distribution.hpp"

namespace relaynet {

using Json = nlohmann::ordered_json;

/// ["1/2","0","1/2"]
Json distribution_to_json(const Distribution &d);
Distribution distribution_from_json(const Json &j);

Json node_to_json(const Node &node);
/// {"states": N, "circuit": node}. Key order is fixed, so dumps are canonical.
Json netlist_to_json(const Circuit &c);

/// Throws ValidationError on malformed documents and on circuits that break
/// the Circuit invariants.
Circuit netlist_from_json(const Json &j);
Circuit parse_netlist(std::string_view text);
std::string dump_netlist(const Circuit &c, int indent = 2);

}  // namespace relaynet
