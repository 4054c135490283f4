#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "relaynet/circuit.hpp"
#include "relaynet/netlist.hpp"

namespace relaynet {

/// Per-pswitch signed error e: +e on the lower active state, -e on the upper.
/// Pswitches missing from `errors` are unperturbed.
struct PerturbationModel {
    Rational epsilon;
    std::map<std::string, Rational> errors;
};

/// Every pswitch must have exactly two active states and every id in the model
/// must name one of them. Throws ValidationError otherwise, and when |e| > epsilon
/// or a perturbed entry leaves [0, 1].
Circuit perturb(const Circuit &c, const PerturbationModel &m);

enum class SearchMode { corners, sampled };

struct RobustnessOptions {
    SearchMode mode = SearchMode::corners;
    /// corners mode refuses circuits with more pswitches than this
    int corner_cap = 16;
    int trials = 256;
    std::uint64_t seed = 1;
    /// sampled errors are epsilon * t / grid for integer t in [-grid, grid]
    int grid = 8;
};

struct ErrorReport {
    Rational epsilon;
    Distribution nominal;
    /// max |eval(perturbed) - nominal| per state
    std::vector<Rational> per_state;
    /// the assignment with the largest single-state deviation
    PerturbationModel worst;
    bool exhaustive = true;
    std::int64_t evaluations = 0;
};

ErrorReport worst_case_error(const Circuit &c, const Rational &epsilon, const RobustnessOptions &options = {});

/// Bound family: boundary states 0 and N-1 get q*eps, interior states (q+1)*eps.
/// The binary family is q = 2.
struct BoundFamily {
    std::string name;
    std::int64_t q;

    static BoundFamily binary() { return {"binary", 2}; }
    static BoundFamily denominator(std::int64_t q) { return {"denom:" + std::to_string(q), q}; }
    /// "binary" or "denom:q"
    static BoundFamily parse(const std::string &text);
};

struct Verdict {
    bool holds = true;
    Rational boundary_bound;
    Rational interior_bound;
    std::vector<bool> per_state;
};

Verdict check_bounds(const ErrorReport &report, const BoundFamily &family);

Json error_report_to_json(const ErrorReport &report, const Verdict *verdict = nullptr);

}  // namespace relaynet
