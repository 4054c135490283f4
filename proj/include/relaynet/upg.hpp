#pragma once

#include <string>
#include <vector>

#include "relaynet/circuit.hpp"
#include "relaynet/evaluate.hpp"
#include "relaynet/netlist.hpp"

namespace relaynet {

enum class UpgConstruction { exponential, reduced_sp, reduced_nonsp, bit_removed_sp, bit_removed_nonsp };

std::string to_string(UpgConstruction c);
UpgConstruction parse_construction(const std::string &text);
const std::vector<UpgConstruction> &all_constructions();

struct UpgSpec {
    int states;
    int bits;
    UpgConstruction construction;
};

/// Input variable for bit j of vector i: vectors are lettered r, s, t, ...;
/// j = 0 is the integer bit, j = bits the 1/2 bit and j = 1 the last bit.
std::string upg_input_name(int vector, int bit);

/// N-1 prefix-sum vectors. vectors[i] holds symbols (0 or N-1) in the order
/// r_{i0}, r_{in}, ..., r_{i1}.
struct UpgInput {
    int states;
    int bits;
    std::vector<std::vector<int>> vectors;

    /// "0101"
    std::string vector_string(int i) const;
    Assignment assignment() const;
    /// {"r": "0101", ...}
    Json to_json() const;
    /// Parses per-vector symbol strings such as {"002", "020"}.
    static UpgInput parse(int states, int bits, const std::vector<std::string> &vectors);
};

/// UnsupportedError for N > 10 or n > 30.
Circuit build_upg(const UpgSpec &spec);

/// The sub-generator on states a..b (vectors a..b-1), clamped to [a, b].
Circuit build_upg_range(const UpgSpec &spec, int a, int b);

/// InvalidTargetError unless every probability is x/2^n.
UpgInput encode_input(const Distribution &target, int bits);

/// The distribution an input asks for. ValidationError for non-monotone or
/// out-of-range encodings.
Distribution decode_input(const UpgInput &input);

/// Every valid input, ordered by the prefix-sum numerators.
std::vector<UpgInput> enumerate_inputs(int states, int bits);

struct TruthRow {
    UpgInput input;
    Distribution output;
    Distribution expected;
};

std::vector<TruthRow> upg_truth_table(const UpgSpec &spec);
std::vector<TruthRow> upg_truth_table(const Circuit &upg, int states, int bits);

/// [{"inputs": {"r": "0101"}, "output": ["5/8", "3/8"]}, ...]
Json truth_table_to_json(const std::vector<TruthRow> &rows);

}  // namespace relaynet
