#include <gtest/gtest.h>

#include "relaynet/errors.hpp"
#include "relaynet/render.hpp"
#include "relaynet/transform.hpp"
#include "relaynet/upg.hpp"
#include "test_support.hpp"

using namespace relaynet;
using relaynet::testing::dist;

namespace {

UpgSpec spec(int states, int bits, UpgConstruction c) { return UpgSpec{states, bits, c}; }

// Decodes the prefix sums from the raw symbols, independently of decode_input.
Distribution reference_target(const UpgInput &in) {
    const std::int64_t whole = std::int64_t{1} << in.bits;
    std::vector<Rational> probs;
    std::int64_t previous = 0;
    for (const auto &v : in.vectors) {
        std::int64_t x = v[0] != 0 ? whole : 0;
        for (std::size_t pos = 1; pos < v.size(); ++pos) {
            if (v[pos] != 0) {
                x += std::int64_t{1} << (in.bits - static_cast<int>(pos));
            }
        }
        probs.emplace_back(x - previous, whole);
        previous = x;
    }
    probs.emplace_back(whole - previous, whole);
    return Distribution(std::move(probs));
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
    std::int64_t out = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        out = out * (n - k + i) / i;
    }
    return out;
}

void expect_truth_table(int states, int bits, UpgConstruction c) {
    const Circuit upg = build_upg(spec(states, bits, c));
    const auto rows = upg_truth_table(upg, states, bits);
    ASSERT_EQ(static_cast<std::int64_t>(rows.size()), binomial((std::int64_t{1} << bits) + states - 1, states - 1));
    const bool small = count_switches(upg).pswitches <= 12;
    for (const auto &row : rows) {
        const Distribution want = reference_target(row.input);
        EXPECT_EQ(row.expected, want);
        EXPECT_EQ(row.output, want) << to_string(c) << " N=" << states << " n=" << bits << " "
                                    << row.input.to_json().dump();
        if (small) {
            EXPECT_EQ(eval_oracle(upg, row.input.assignment()), want);
        }
    }
}

Distribution run(const Circuit &c, int states, int bits, const std::vector<std::string> &vectors) {
    return eval(c, UpgInput::parse(states, bits, vectors).assignment());
}

}  // namespace

TEST(upg_input, encode_examples) {
    auto a = encode_input(dist("1/8,7/8"), 3);
    EXPECT_EQ(a.vector_string(0), "0001");
    auto b = encode_input(dist("1/4,1/4,1/2"), 2);
    EXPECT_EQ(b.vector_string(0), "002");
    EXPECT_EQ(b.vector_string(1), "020");
    for (int n = 0; n <= 5; ++n) {
        auto c = encode_input(dist("1,0"), n);
        EXPECT_EQ(c.vector_string(0), "1" + std::string(static_cast<std::size_t>(n), '0'));
    }
    EXPECT_THROW(encode_input(dist("1/3,2/3"), 4), InvalidTargetError);
    EXPECT_THROW(encode_input(dist("1/8,7/8"), 2), InvalidTargetError);
}

TEST(upg_input, names_and_assignment) {
    EXPECT_EQ(upg_input_name(0, 3), "r3");
    EXPECT_EQ(upg_input_name(1, 0), "s0");
    auto in = UpgInput::parse(2, 3, {"0101"});
    Assignment a = in.assignment();
    EXPECT_EQ(a.at("r0"), 0);
    EXPECT_EQ(a.at("r3"), 1);
    EXPECT_EQ(a.at("r2"), 0);
    EXPECT_EQ(a.at("r1"), 1);
    EXPECT_EQ(in.to_json().dump(), R"({"r":"0101"})");
}

TEST(upg_input, decode_rejects_invalid) {
    EXPECT_THROW(decode_input(UpgInput::parse(2, 2, {"120"})), ValidationError);
    EXPECT_THROW(decode_input(UpgInput::parse(3, 2, {"020", "002"})), ValidationError);
    EXPECT_THROW(UpgInput::parse(3, 2, {"010", "002"}), ValidationError);
    EXPECT_THROW(UpgInput::parse(3, 2, {"020"}), DimensionError);
    EXPECT_THROW(UpgInput::parse(2, 2, {"0000"}), DimensionError);
}

TEST(upg_input, round_trip) {
    for (int states = 2; states <= 4; ++states) {
        for (int bits = 0; bits <= 3; ++bits) {
            const auto all = enumerate_inputs(states, bits);
            EXPECT_EQ(static_cast<std::int64_t>(all.size()),
                      binomial((std::int64_t{1} << bits) + states - 1, states - 1));
            for (const auto &in : all) {
                const Distribution d = decode_input(in);
                EXPECT_EQ(d, reference_target(in));
                EXPECT_EQ(encode_input(d, bits).vectors, in.vectors);
            }
        }
    }
}

TEST(upg, base_case_is_complemented_input) {
    const Circuit expected(2, make_input("r0", true));
    for (auto c : all_constructions()) {
        EXPECT_TRUE(build_upg(spec(2, 0, c)) == expected) << to_string(c);
    }
    EXPECT_EQ(render_ascii(build_upg(spec(3, 0, UpgConstruction::exponential))), "(~r0 * (det(1) + ~s0))");
}

TEST(upg, spot_rows) {
    for (auto c : all_constructions()) {
        const Circuit two = build_upg(spec(2, 3, c));
        EXPECT_EQ(run(two, 2, 3, {"0001"}), dist("1/8,7/8")) << to_string(c);
        EXPECT_EQ(run(two, 2, 3, {"0101"}), dist("5/8,3/8")) << to_string(c);
        EXPECT_EQ(run(two, 2, 3, {"0000"}), dist("0,1")) << to_string(c);
        const Circuit three = build_upg(spec(3, 2, c));
        EXPECT_EQ(run(three, 3, 2, {"002", "020"}), dist("1/4,1/4,1/2")) << to_string(c);
        EXPECT_EQ(run(three, 3, 2, {"020", "022"}), dist("1/2,1/4,1/4")) << to_string(c);
        EXPECT_EQ(run(three, 3, 2, {"000", "000"}), dist("0,0,1")) << to_string(c);
    }
}

TEST(upg, truth_tables_two_states) {
    for (auto c : all_constructions()) {
        for (int n = 0; n <= 5; ++n) {
            expect_truth_table(2, n, c);
        }
    }
}

TEST(upg, truth_tables_three_states) {
    for (auto c : all_constructions()) {
        for (int n = 0; n <= 3; ++n) {
            expect_truth_table(3, n, c);
        }
    }
}

TEST(upg, truth_tables_four_states) {
    for (auto c : all_constructions()) {
        for (int n = 0; n <= 2; ++n) {
            expect_truth_table(4, n, c);
        }
    }
}

TEST(upg, constructions_agree) {
    for (int states = 2; states <= 3; ++states) {
        for (int n = 0; n <= 3; ++n) {
            std::vector<std::vector<TruthRow>> tables;
            for (auto c : all_constructions()) {
                tables.push_back(upg_truth_table(spec(states, n, c)));
            }
            for (std::size_t k = 1; k < tables.size(); ++k) {
                ASSERT_EQ(tables[k].size(), tables[0].size());
                for (std::size_t row = 0; row < tables[0].size(); ++row) {
                    EXPECT_EQ(tables[k][row].output, tables[0][row].output);
                }
            }
        }
    }
}

TEST(upg, two_state_counts) {
    for (int n = 1; n <= 6; ++n) {
        const auto exp = count_switches(build_upg(spec(2, n, UpgConstruction::exponential)));
        EXPECT_EQ(exp.pswitches, (1 << n) - 1);

        const auto red = count_switches(build_upg(spec(2, n, UpgConstruction::reduced_sp)));
        EXPECT_EQ(red.pswitches, 2 * n);
        // r_{0n} = r_0 + r_n is two contacts, so each of the 2n + 1 conditions costs two inputs.
        EXPECT_EQ(red.inputs, 4 * n + 1);

        const auto brsp = count_switches(build_upg(spec(2, n, UpgConstruction::bit_removed_sp)));
        EXPECT_EQ(brsp.pswitches, 2 * n);
        EXPECT_EQ(brsp.inputs + brsp.deterministic, 2 * n + 1);

        const auto nonsp = count_switches(build_upg(spec(2, n, UpgConstruction::reduced_nonsp)));
        EXPECT_EQ(nonsp.pswitches, n);

        const auto brns = count_switches(build_upg(spec(2, n, UpgConstruction::bit_removed_nonsp)));
        EXPECT_EQ(brns.pswitches, n);
        EXPECT_EQ(brns.inputs + brns.deterministic, 3 * n + 1);
    }
    EXPECT_EQ(count_switches(build_upg(spec(2, 3, UpgConstruction::reduced_sp))).pswitches, 6);
    EXPECT_EQ(count_switches(build_upg(spec(2, 3, UpgConstruction::bit_removed_nonsp))).pswitches, 3);
}

TEST(upg, count_growth) {
    for (auto c : all_constructions()) {
        for (int states = 2; states <= 4; ++states) {
            int previous = -1;
            std::vector<int> counts;
            for (int n = 0; n <= 6; ++n) {
                const int p = count_switches(build_upg(spec(states, n, c))).pswitches;
                EXPECT_GE(p, previous) << to_string(c) << " N=" << states << " n=" << n;
                previous = p;
                counts.push_back(p);
            }
            if (c == UpgConstruction::exponential) {
                continue;
            }
            // Differences of order N-1 are constant: linear for 2 states, quadratic for 3.
            std::vector<int> diff = counts;
            for (int order = 0; order < states; ++order) {
                std::vector<int> next;
                for (std::size_t i = order == 0 ? 2 : 1; i < diff.size(); ++i) {
                    next.push_back(diff[i] - diff[i - 1]);
                }
                diff = next;
            }
            for (int d : diff) {
                EXPECT_EQ(d, 0) << to_string(c) << " N=" << states;
            }
        }
    }
}

TEST(upg, non_sp_variants_use_graphs) {
    EXPECT_TRUE(is_series_parallel(build_upg(spec(3, 3, UpgConstruction::reduced_sp))));
    EXPECT_TRUE(is_series_parallel(build_upg(spec(3, 3, UpgConstruction::bit_removed_sp))));
    EXPECT_FALSE(is_series_parallel(build_upg(spec(3, 3, UpgConstruction::reduced_nonsp))));
    EXPECT_FALSE(is_series_parallel(build_upg(spec(2, 3, UpgConstruction::reduced_nonsp))));
}

TEST(upg, clamped_sub_generator) {
    for (auto c : all_constructions()) {
        for (int n = 0; n <= 3; ++n) {
            const Circuit standalone = build_upg(spec(2, n, c));
            for (int states = 3; states <= 4; ++states) {
                for (int i = 0; i + 1 < states; ++i) {
                    const Circuit embedded = build_upg_range(spec(states, n, c), i, i + 1);
                    for (const auto &in : enumerate_inputs(2, n)) {
                        // Embedded copy reads vector i.
                        UpgInput wide{states, n, std::vector<std::vector<int>>(static_cast<std::size_t>(states - 1))};
                        for (int v = 0; v < states - 1; ++v) {
                            for (int sym : in.vectors[0]) {
                                wide.vectors[static_cast<std::size_t>(v)].push_back(sym == 0 ? 0 : states - 1);
                            }
                        }
                        const Distribution small = eval(standalone, in.assignment());
                        EXPECT_EQ(eval(embedded, wide.assignment()), remap_states(small, {i, i + 1}, states));
                    }
                }
            }
        }
    }
}

TEST(upg, pswitches_are_fair_extremes) {
    const Circuit c = build_upg(spec(4, 2, UpgConstruction::reduced_sp));
    for (const auto &p : collect_pswitches(c)) {
        EXPECT_EQ(p->dist, Distribution::extremes(4, Rational(1, 2)));
    }
}

TEST(upg, unsupported_and_invalid) {
    EXPECT_THROW(build_upg(spec(1, 2, UpgConstruction::reduced_sp)), ValidationError);
    EXPECT_THROW(build_upg(spec(2, -1, UpgConstruction::reduced_sp)), ValidationError);
    EXPECT_THROW(build_upg(spec(11, 1, UpgConstruction::reduced_sp)), UnsupportedError);
    EXPECT_THROW(parse_construction("bogus"), ValidationError);
    EXPECT_EQ(parse_construction("bit_removed_nonsp"), UpgConstruction::bit_removed_nonsp);
}

TEST(upg, truth_table_json) {
    const auto rows = upg_truth_table(spec(2, 1, UpgConstruction::reduced_sp));
    const Json j = truth_table_to_json(rows);
    ASSERT_EQ(j.size(), 3u);
    EXPECT_EQ(j[1]["inputs"].dump(), R"({"r":"01"})");
    EXPECT_EQ(j[1]["output"].dump(), R"(["1/2","1/2"])");
}
