#include "relaynet/upg.hpp"

#include "relaynet/errors.hpp"
#include "relaynet/transform.hpp"

namespace relaynet {

namespace {

constexpr const char *kLetters = "rstuvwxyz";
constexpr int kMaxStates = 10;
constexpr int kMaxBits = 30;

void check_dimensions(int states, int bits) {
    if (states < 2 || bits < 0) {
        throw ValidationError("a UPG needs N >= 2 and n >= 0");
    }
    if (states > kMaxStates || bits > kMaxBits) {
        throw UnsupportedError("UPG builds are limited to N <= 10 and n <= 30");
    }
}

class UpgBuilder {
  public:
    UpgBuilder(int states, UpgConstruction kind) : compose_(states), kind_(kind) {}

    NodePtr top(int a, int b, int bits) {
        if (bit_removed()) {
            return compose_.series(integer_chain(a, b), build(a, b, bits));
        }
        return build(a, b, bits);
    }

  private:
    bool bit_removed() const {
        return kind_ == UpgConstruction::bit_removed_sp || kind_ == UpgConstruction::bit_removed_nonsp;
    }
    bool graph_form() const {
        return kind_ == UpgConstruction::reduced_nonsp || kind_ == UpgConstruction::bit_removed_nonsp;
    }

    NodePtr input(int i, int j, bool complemented) { return make_input(upg_input_name(i, j), complemented); }
    NodePtr det(int s) { return compose_.det(s); }
    NodePtr half() { return make_pswitch(Distribution::extremes(compose_.states(), Rational(1, 2)), ids_.next()); }

    // Closed iff the prefix sum of vector i is at least 1/2 at this level.
    NodePtr cond(int i, int m) {
        if (bit_removed()) {
            return input(i, m, false);
        }
        return compose_.parallel(input(i, 0, false), input(i, m, false));
    }
    NodePtr not_cond(int i, int m) {
        if (bit_removed()) {
            return input(i, m, true);
        }
        return compose_.series(input(i, 0, true), input(i, m, true));
    }

    // Point mass on the first state whose integer bit is set.
    NodePtr integer_chain(int a, int b) {
        NodePtr out = det(b);
        for (int i = b - 1; i >= a; --i) {
            out = compose_.parallel(det(i), compose_.series(input(i, 0, true), out));
        }
        return out;
    }

    // options[k - first] is chosen when k is the first index >= first with c_k closed.
    NodePtr mux(const std::vector<NodePtr> &options, int first, int m) {
        const int last = first + static_cast<int>(options.size()) - 1;
        NodePtr out = options.back();
        for (int k = last - 1; k >= first; --k) {
            out = compose_.parallel(compose_.series(cond(k, m), options[static_cast<std::size_t>(k - first)]),
                                    compose_.series(not_cond(k, m), out));
        }
        return out;
    }

    NodePtr build(int a, int b, int m) {
        if (a == b) {
            return det(a);
        }
        if (m == 0) {
            return bit_removed() ? det(b) : integer_chain(a, b);
        }
        if (kind_ == UpgConstruction::exponential) {
            return exponential(a, b, m);
        }
        return reduced(a, b, m);
    }

    NodePtr exponential(int a, int b, int m) {
        std::vector<NodePtr> lefts;
        std::vector<NodePtr> rights;
        for (int k = a; k <= b; ++k) {
            lefts.push_back(build(a, k, m - 1));
            rights.push_back(build(k, b, m - 1));
        }
        NodePtr left = mux(lefts, a, m);
        NodePtr right = mux(rights, a, m);
        return compose_.parallel(left, compose_.series(half(), right));
    }

    NodePtr reduced(int a, int b, int m) {
        NodePtr whole = build(a, b, m - 1);
        NodePtr left;
        NodePtr right;
        NodePtr source_arm = whole;
        if (b - a == 1) {
            left = det(b);
            right = det(b);
        } else {
            // Closes when the cut lands strictly inside (a, b), where `whole`
            // must not cap the left piece.
            std::vector<NodePtr> inner;
            for (int i = a + 1; i < b; ++i) {
                inner.push_back(cond(i, m));
            }
            source_arm = compose_.parallel(whole, compose_.series(not_cond(a, m), compose_.parallel(inner)));
            std::vector<NodePtr> lefts;
            std::vector<NodePtr> rights;
            // At k = b the left piece is `whole` itself, already on the source arm.
            for (int k = a + 1; k <= b; ++k) {
                lefts.push_back(k == b ? det(b) : build(a, k, m - 1));
                rights.push_back(build(k, b, m - 1));
            }
            left = mux(lefts, a + 1, m);
            right = mux(rights, a + 1, m);
        }

        NodePtr body;
        if (graph_form()) {
            std::vector<Edge> edges{
                {"s", "a", source_arm},
                {"a", "t", compose_.series(not_cond(a, m), left)},
                {"s", "b", compose_.series(not_cond(a, m), right)},
                {"b", "t", half()},
                {"a", "b", cond(a, m)},
            };
            body = compose_.graph("s", "t", std::move(edges));
        } else {
            NodePtr low = b - a == 1 ? compose_.parallel(compose_.series(not_cond(a, m), left), half())
                                     : compose_.parallel(compose_.series(not_cond(a, m), left),
                                                         compose_.series(half(), cond(a, m)));
            NodePtr high = compose_.series(half(), compose_.series(not_cond(a, m), right));
            body = compose_.parallel(compose_.series(source_arm, low), high);
        }
        return compose_.parallel(det(a), body);
    }

    Composer compose_;
    UpgConstruction kind_;
    IdSource ids_;
};

}  // namespace

std::string to_string(UpgConstruction c) {
    switch (c) {
    case UpgConstruction::exponential:
        return "exponential";
    case UpgConstruction::reduced_sp:
        return "reduced_sp";
    case UpgConstruction::reduced_nonsp:
        return "reduced_nonsp";
    case UpgConstruction::bit_removed_sp:
        return "bit_removed_sp";
    case UpgConstruction::bit_removed_nonsp:
        return "bit_removed_nonsp";
    }
    return "?";
}

UpgConstruction parse_construction(const std::string &text) {
    for (auto c : all_constructions()) {
        if (to_string(c) == text) {
            return c;
        }
    }
    throw ValidationError("unknown UPG construction '" + text + "'");
}

const std::vector<UpgConstruction> &all_constructions() {
    static const std::vector<UpgConstruction> all{UpgConstruction::exponential, UpgConstruction::reduced_sp,
                                                  UpgConstruction::reduced_nonsp, UpgConstruction::bit_removed_sp,
                                                  UpgConstruction::bit_removed_nonsp};
    return all;
}

std::string upg_input_name(int vector, int bit) {
    if (vector < 0 || vector >= kMaxStates - 1) {
        throw UnsupportedError("UPG input vector index out of range");
    }
    return std::string(1, kLetters[vector]) + std::to_string(bit);
}

std::string UpgInput::vector_string(int i) const {
    std::string out;
    for (int symbol : vectors[static_cast<std::size_t>(i)]) {
        out += std::to_string(symbol);
    }
    return out;
}

Assignment UpgInput::assignment() const {
    Assignment a;
    for (int i = 0; i < states - 1; ++i) {
        const auto &v = vectors[static_cast<std::size_t>(i)];
        a[upg_input_name(i, 0)] = v[0];
        for (int j = 1; j <= bits; ++j) {
            a[upg_input_name(i, j)] = v[static_cast<std::size_t>(bits + 1 - j)];
        }
    }
    return a;
}

Json UpgInput::to_json() const {
    Json out = Json::object();
    for (int i = 0; i < states - 1; ++i) {
        out[std::string(1, kLetters[i])] = vector_string(i);
    }
    return out;
}

UpgInput UpgInput::parse(int states, int bits, const std::vector<std::string> &vectors) {
    check_dimensions(states, bits);
    if (static_cast<int>(vectors.size()) != states - 1) {
        throw DimensionError("a " + std::to_string(states) + "-state UPG takes " + std::to_string(states - 1) +
                             " input vectors");
    }
    const char high = static_cast<char>('0' + states - 1);
    UpgInput out{states, bits, {}};
    for (const auto &text : vectors) {
        if (static_cast<int>(text.size()) != bits + 1) {
            throw DimensionError("input vector '" + text + "' needs " + std::to_string(bits + 1) + " symbols");
        }
        std::vector<int> symbols;
        for (char ch : text) {
            if (ch != '0' && ch != high) {
                throw ValidationError("input symbols must be 0 or " + std::string(1, high));
            }
            symbols.push_back(ch - '0');
        }
        out.vectors.push_back(std::move(symbols));
    }
    return out;
}

Circuit build_upg(const UpgSpec &spec) {
    check_dimensions(spec.states, spec.bits);
    UpgBuilder builder(spec.states, spec.construction);
    return Circuit(spec.states, builder.top(0, spec.states - 1, spec.bits));
}

Circuit build_upg_range(const UpgSpec &spec, int a, int b) {
    check_dimensions(spec.states, spec.bits);
    if (a < 0 || b >= spec.states || a >= b) {
        throw ValidationError("UPG range must satisfy 0 <= a < b < N");
    }
    UpgBuilder builder(spec.states, spec.construction);
    return clamp(Circuit(spec.states, builder.top(a, b, spec.bits)), a, b);
}

UpgInput encode_input(const Distribution &target, int bits) {
    const int states = target.states();
    check_dimensions(states, bits);
    const std::int64_t whole = std::int64_t{1} << bits;
    UpgInput out{states, bits, {}};
    Rational prefix(0);
    for (int i = 0; i < states - 1; ++i) {
        prefix += target[i];
        const Rational scaled = prefix * Rational(whole);
        if (scaled.den() != 1) {
            throw InvalidTargetError("probability " + target[i].str() + " is not of the form x/2^" +
                                     std::to_string(bits));
        }
        const std::int64_t x = scaled.num().get_si();
        std::vector<int> symbols{x == whole ? states - 1 : 0};
        for (int j = bits; j >= 1; --j) {
            const bool set = x < whole && ((x >> (j - 1)) & 1) != 0;
            symbols.push_back(set ? states - 1 : 0);
        }
        out.vectors.push_back(std::move(symbols));
    }
    for (int i = 0; i < states; ++i) {
        if ((target[i] * Rational(whole)).den() != 1) {
            throw InvalidTargetError("probability " + target[i].str() + " is not of the form x/2^" +
                                     std::to_string(bits));
        }
    }
    return out;
}

Distribution decode_input(const UpgInput &input) {
    const int states = input.states;
    const std::int64_t whole = std::int64_t{1} << input.bits;
    std::vector<Rational> probs;
    std::int64_t previous = 0;
    for (int i = 0; i < states - 1; ++i) {
        const auto &v = input.vectors[static_cast<std::size_t>(i)];
        std::int64_t x = 0;
        for (int j = input.bits; j >= 1; --j) {
            x = 2 * x + (v[static_cast<std::size_t>(input.bits + 1 - j)] != 0 ? 1 : 0);
        }
        if (v[0] != 0) {
            if (x != 0) {
                throw ValidationError("input vector " + input.vector_string(i) + " encodes a value above 1");
            }
            x = whole;
        }
        if (x < previous) {
            throw ValidationError("input vectors are not monotone at " + input.vector_string(i));
        }
        probs.emplace_back(x - previous, whole);
        previous = x;
    }
    probs.emplace_back(whole - previous, whole);
    return Distribution(std::move(probs));
}

std::vector<UpgInput> enumerate_inputs(int states, int bits) {
    check_dimensions(states, bits);
    const std::int64_t whole = std::int64_t{1} << bits;
    std::vector<UpgInput> out;
    std::vector<std::int64_t> prefix(static_cast<std::size_t>(states - 1), 0);
    auto rec = [&](auto &self, int i, std::int64_t low) -> void {
        if (i == states - 1) {
            std::vector<Rational> probs;
            std::int64_t previous = 0;
            for (auto x : prefix) {
                probs.emplace_back(x - previous, whole);
                previous = x;
            }
            probs.emplace_back(whole - previous, whole);
            out.push_back(encode_input(Distribution(std::move(probs)), bits));
            return;
        }
        for (std::int64_t x = low; x <= whole; ++x) {
            prefix[static_cast<std::size_t>(i)] = x;
            self(self, i + 1, x);
        }
    };
    rec(rec, 0, 0);
    return out;
}

std::vector<TruthRow> upg_truth_table(const Circuit &upg, int states, int bits) {
    std::vector<TruthRow> rows;
    for (auto &in : enumerate_inputs(states, bits)) {
        Distribution output = eval(upg, in.assignment());
        Distribution expected = decode_input(in);
        rows.push_back(TruthRow{std::move(in), std::move(output), std::move(expected)});
    }
    return rows;
}

std::vector<TruthRow> upg_truth_table(const UpgSpec &spec) {
    return upg_truth_table(build_upg(spec), spec.states, spec.bits);
}

Json truth_table_to_json(const std::vector<TruthRow> &rows) {
    Json out = Json::array();
    for (const auto &row : rows) {
        Json entry = Json::object();
        entry["inputs"] = row.input.to_json();
        entry["output"] = distribution_to_json(row.output);
        entry["expected"] = distribution_to_json(row.expected);
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace relaynet
