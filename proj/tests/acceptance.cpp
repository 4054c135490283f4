// One line per acceptance criterion: "PASS <k> <summary>" or "FAIL <k> <summary>".
// Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "relaynet/bounds.hpp"
#include "relaynet/errors.hpp"
#include "relaynet/evaluate.hpp"
#include "relaynet/lattice.hpp"
#include "relaynet/robustness.hpp"
#include "relaynet/synthesis.hpp"
#include "relaynet/transform.hpp"
#include "relaynet/upg.hpp"
#include "test_support.hpp"

using namespace relaynet;
namespace t = relaynet::testing;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string &what) {
        if (!cond && ok) {
            ok = false;
            detail.str("");
            detail << "first failure: " << what;
        }
    }
};

int failures = 0;

void criterion(int id, const std::string &name, double budget_seconds, const std::function<void(Outcome &)> &body) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception &e) {
        o.ok = false;
        o.detail.str("");
        o.detail << "exception: " << e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > budget_seconds) {
        o.require(false, "took " + std::to_string(seconds) + " s, budget " + std::to_string(budget_seconds) + " s");
    }
    std::printf("%s %d %s: %s [%.2f s]\n", o.ok ? "PASS" : "FAIL", id, name.c_str(), o.detail.str().c_str(), seconds);
    std::fflush(stdout);
    if (!o.ok) {
        ++failures;
    }
}

std::vector<Distribution> all_targets(int states, std::int64_t den) {
    std::vector<Distribution> out;
    for (const auto &counts : t::compositions(static_cast<int>(den), states)) {
        out.push_back(t::from_counts(counts, static_cast<int>(den)));
    }
    return out;
}

std::string show(const Distribution &d) {
    std::string s = "(";
    const auto parts = d.to_strings();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        s += (i ? "," : "") + parts[i];
    }
    return s + ")";
}

// Prefix sums read straight off the raw symbols.
Distribution decode_symbols(const UpgInput &in) {
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

}  // namespace

int main() {
    criterion(1, "exhaustive N=3 binary synthesis, n <= 4", 10, [](Outcome &o) {
        int targets = 0;
        int at_four = 0;
        int worst_slack = 1 << 30;
        for (int n = 0; n <= 4; ++n) {
            for (const auto &d : all_targets(3, std::int64_t{1} << n)) {
                const auto r = synth_binary_nstate(TargetSpec::make(d, 2, n));
                ++targets;
                at_four += n == 4 ? 1 : 0;
                const int limit = n == 0 ? 0 : 2 * n - 1;
                o.require(eval_oracle(r.circuit) == d, "oracle mismatch for " + show(d));
                o.require(eval(r.circuit) == d, "eval mismatch for " + show(d));
                o.require(r.pswitch_count <= limit, show(d) + " used " + std::to_string(r.pswitch_count));
                worst_slack = std::min(worst_slack, limit - r.pswitch_count);
            }
        }
        o.detail << targets << " targets (" << at_four << " at n=4), exact, min slack to 2n-1 = " << worst_slack;
    });

    criterion(2, "complexity table reproduction", 1, [](Outcome &o) {
        int entries = 0;
        for (int states = 1; states <= 9; ++states) {
            for (int n = 1; n <= 10; ++n) {
                const std::int64_t printed = t::kComplexityTable[states - 1][n];
                o.require(complexity_bound_recursive(n, states) == printed,
                          "recursion f(" + std::to_string(n) + "," + std::to_string(states) + ")");
                o.require(complexity_bound(n, states) == printed,
                          "closed form f(" + std::to_string(n) + "," + std::to_string(states) + ")");
                ++entries;
            }
        }
        o.require(complexity_bound(4, 9) == 15 && complexity_bound(10, 2) == 10, "spot values");
        o.detail << entries << " entries match, f(4,9)=" << complexity_bound(4, 9) << " f(10,2)="
                 << complexity_bound(10, 2);
    });

    criterion(3, "eval equals brute-force oracle on random sp circuits", 60, [](Outcome &o) {
        std::mt19937_64 rng(20261016);
        int max_p = 0;
        for (int i = 0; i < 500; ++i) {
            const Circuit c = t::random_circuit(rng, 4, 10);
            max_p = std::max(max_p, count_switches(c).pswitches);
            o.require(eval(c) == eval_oracle(c), "circuit " + std::to_string(i));
        }
        o.detail << "500 circuits, N <= 4, up to " << max_p << " pswitches";
    });

    criterion(4, "dual reverses the output distribution", 30, [](Outcome &o) {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 200; ++i) {
            const Circuit c = t::random_circuit(rng, 5, 12);
            o.require(eval(dual(c)) == eval(c).reversed(), "circuit " + std::to_string(i));
            o.require(eval_oracle(dual(c)) == eval_oracle(c).reversed(), "oracle, circuit " + std::to_string(i));
        }
        o.detail << "200 circuits";
    });

    criterion(5, "denominator and composite synthesis, q in {3,5,6}, N=3, n <= 2", 60, [](Outcome &o) {
        std::ostringstream summary;
        for (std::int64_t q : {3, 5, 6}) {
            int count = 0;
            std::int64_t worst = 0;
            for (int n = 1; n <= 2; ++n) {
                std::int64_t den = 1;
                for (int k = 0; k < n; ++k) {
                    den *= q;
                }
                const std::int64_t bound = denominator_bound(q, n, 3);
                for (const auto &d : all_targets(3, den)) {
                    const TargetSpec spec = TargetSpec::make(d, q, n);
                    for (const auto &r : {denominator_reduction(spec), composite_synthesis(spec)}) {
                        o.require(eval(r.circuit) == d, r.method + " mismatch for " + show(d));
                        o.require(r.pswitch_count <= bound, r.method + " over bound for " + show(d));
                        worst = std::max<std::int64_t>(worst, r.pswitch_count);
                    }
                    ++count;
                }
            }
            summary << (q == 3 ? "" : "; ") << "q=" << q << ": " << count << " targets, worst " << worst
                    << " vs bound " << denominator_bound(q, 2, 3);
        }
        o.detail << summary.str();
    });

    criterion(6, "robustness bounds by exact corner search", 300, [](Outcome &o) {
        const Rational eps(1, 100);
        Rational worst_boundary(0);
        Rational worst_interior(0);
        int circuits = 0;
        auto check = [&](const Circuit &c, const Rational &boundary, const Rational &interior, const std::string &tag) {
            const ErrorReport r = worst_case_error(c, eps);
            o.require(r.exhaustive, tag + " not exhaustive");
            const int n = static_cast<int>(r.per_state.size());
            for (int s = 0; s < n; ++s) {
                const bool edge = s == 0 || s == n - 1;
                o.require(r.per_state[static_cast<std::size_t>(s)] <= (edge ? boundary : interior), tag);
                auto &w = edge ? worst_boundary : worst_interior;
                w = std::max(w, r.per_state[static_cast<std::size_t>(s)]);
            }
            ++circuits;
        };
        for (int n = 1; n <= 3; ++n) {
            for (const auto &d : all_targets(3, std::int64_t{1} << n)) {
                check(synth_binary_nstate(TargetSpec::make(d, 2, n)).circuit, Rational(2, 100), Rational(3, 100),
                      "binary " + show(d));
            }
        }
        const Rational binary_boundary = worst_boundary;
        const Rational binary_interior = worst_interior;
        worst_boundary = Rational(0);
        worst_interior = Rational(0);
        for (int n = 1; n <= 2; ++n) {
            for (const auto &d : all_targets(3, n == 1 ? 3 : 9)) {
                check(denominator_reduction(TargetSpec::make(d, 3, n)).circuit, Rational(3, 100), Rational(4, 100),
                      "q=3 " + show(d));
            }
        }
        o.detail << circuits << " circuits; binary worst boundary " << binary_boundary.str() << " interior "
                 << binary_interior.str() << "; q=3 worst boundary " << worst_boundary.str() << " interior "
                 << worst_interior.str();
    });

    criterion(7, "UPG truth tables and switch counts", 120, [](Outcome &o) {
        int rows = 0;
        for (auto c : all_constructions()) {
            for (int states = 2; states <= 3; ++states) {
                for (int n = 0; n <= (states == 2 ? 5 : 3); ++n) {
                    const Circuit u = build_upg(UpgSpec{states, n, c});
                    for (const auto &in : enumerate_inputs(states, n)) {
                        o.require(eval(u, in.assignment()) == decode_symbols(in),
                                  to_string(c) + " row " + in.to_json().dump());
                        ++rows;
                    }
                }
            }
            auto row = [&](int states, int n, const std::vector<std::string> &v, const char *want) {
                const Circuit u = build_upg(UpgSpec{states, n, c});
                o.require(eval(u, UpgInput::parse(states, n, v).assignment()) == Distribution::parse(want),
                          to_string(c) + " spot row " + want);
            };
            row(2, 3, {"0001"}, "1/8,7/8");
            row(2, 3, {"0101"}, "5/8,3/8");
            row(3, 2, {"002", "020"}, "1/4,1/4,1/2");
            row(3, 2, {"020", "022"}, "1/2,1/4,1/4");
        }
        for (int n = 1; n <= 6; ++n) {
            const auto red = count_switches(build_upg(UpgSpec{2, n, UpgConstruction::reduced_sp}));
            const auto brsp = count_switches(build_upg(UpgSpec{2, n, UpgConstruction::bit_removed_sp}));
            const auto brns = count_switches(build_upg(UpgSpec{2, n, UpgConstruction::bit_removed_nonsp}));
            o.require(red.pswitches == 2 * n, "reduced sp pswitches at n=" + std::to_string(n));
            o.require(brsp.pswitches == 2 * n && brsp.inputs + brsp.deterministic == 2 * n + 1,
                      "bit-removed sp counts at n=" + std::to_string(n));
            o.require(brns.pswitches == n && brns.inputs + brns.deterministic == 3 * n + 1,
                      "bit-removed non-sp counts at n=" + std::to_string(n));
        }
        const auto red3 = count_switches(build_upg(UpgSpec{2, 3, UpgConstruction::reduced_sp}));
        const auto brsp3 = count_switches(build_upg(UpgSpec{2, 3, UpgConstruction::bit_removed_sp}));
        o.detail << rows << " rows exact; n=3: reduced sp " << red3.pswitches << " pswitches / " << red3.inputs
                 << " input contacts, bit-removed sp " << brsp3.pswitches << " pswitches / "
                 << brsp3.inputs + brsp3.deterministic << " deterministic, bit-removed non-sp "
                 << count_switches(build_upg(UpgSpec{2, 3, UpgConstruction::bit_removed_nonsp})).pswitches
                 << " pswitches";
    });

    criterion(8, "partial-order inexpressibility search", 120, [](Outcome &o) {
        auto diamond = std::make_shared<const Lattice>(Lattice::diamond());
        const auto uniform = LatticeDistribution::parse(diamond, "1/4,1/4,1/4,1/4");
        for (const char *target : {"0,3/4,1/4,0", "0,1/2,1/2,0", "0,1/4,3/4,0"}) {
            const auto r = search_expressible(
                SearchSpec{diamond, {uniform}, true, 4, LatticeDistribution::parse(diamond, target)});
            o.require(!r.found, std::string("diamond target ") + target + " realized by " + r.witness);
            o.require(r.message().find("not realizable within explored space") != std::string::npos, "message");
            if (std::string(target) == "0,1/2,1/2,0") {
                o.detail << r.message() << "; ";
            }
        }
        auto chain = std::make_shared<const Lattice>(Lattice::chain(2));
        const auto r = search_expressible(SearchSpec{chain, {LatticeDistribution::parse(chain, "1/2,1/2")}, true, 2,
                                                     LatticeDistribution::parse(chain, "1/4,3/4")});
        o.require(r.found && r.switches == 2, "chain control");
        o.detail << "chain control: " << r.witness;
    });

    return failures;
}
