#include "relaynet/synthesis.hpp"

#include <algorithm>

#include <gmpxx.h>

#include "relaynet/bounds.hpp"
#include "relaynet/errors.hpp"

namespace relaynet {

namespace {

bool divides_power(mpz_class den, const mpz_class &q, int n) {
    mpz_class power;
    mpz_pow_ui(power.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n));
    return power % den == 0;
}

// Smallest n with den | q^n: divide out gcd(den, q) until nothing is left.
std::optional<int> exponent_for(mpz_class den, const mpz_class &q) {
    int n = 0;
    while (den > 1) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), q.get_mpz_t());
        if (g == 1) {
            return std::nullopt;
        }
        den /= g;
        ++n;
    }
    return n;
}

// Shared state of one synthesis run.
struct Builder {
    explicit Builder(int states) : compose(states) {}

    Composer compose;
    IdSource ids;
    std::vector<CutRecord> trace;
    int pswitches = 0;
    int rounds = 0;
    int halves = 0;
    int leaves = 0;

    NodePtr pswitch(const Distribution &d) {
        ++pswitches;
        return make_pswitch(d, ids.next());
    }

    NodePtr shorthand(const Rational &p) { return pswitch(Distribution::extremes(compose.states(), p)); }
};

NodePtr binary(Builder &b, const Distribution &p, int depth) {
    if (const auto s = p.point_state()) {
        return b.compose.det(*s);
    }
    b.rounds = std::max(b.rounds, depth + 1);
    const Rational half(1, 2);
    auto [left, right, index] = block_interval_cut(p, half);
    // strict rule: first prefix sum above 1/2
    Rational prefix(0);
    int strict = 0;
    while ((prefix += p[strict]) <= half) {
        ++strict;
    }
    b.trace.push_back(CutRecord{half, strict, left, right});
    NodePtr l = binary(b, left, depth + 1);
    NodePtr r = binary(b, right, depth + 1);
    return b.compose.parallel(l, b.compose.series(b.shorthand(half), r));
}

NodePtr reduce_states(Builder &b, const Distribution &p, int depth) {
    if (const auto s = p.point_state()) {
        return b.compose.det(*s);
    }
    if (p.active_count() == 2) {
        const int lo = p.lowest_active();
        const int hi = p.highest_active();
        if (p[lo] == Rational(1, 2)) {
            ++b.halves;
            NodePtr half = b.shorthand(Rational(1, 2));
            return b.compose.series(b.compose.parallel(half, b.compose.det(lo)), b.compose.det(hi));
        }
        ++b.leaves;
        return b.pswitch(p);
    }
    b.rounds = std::max(b.rounds, depth + 1);
    const Rational half(1, 2);
    auto [left, right, index] = block_interval_cut(p, half);
    b.trace.push_back(CutRecord{half, index, left, right});
    NodePtr l = reduce_states(b, left, depth + 1);
    NodePtr r = reduce_states(b, right, depth + 1);
    ++b.halves;
    return b.compose.parallel(l, b.compose.series(b.shorthand(half), r));
}

// One base-q round per entry of `bases`, outermost first.
NodePtr denominator_rounds(Builder &b, const Distribution &p, const std::vector<std::int64_t> &bases,
                           std::size_t level) {
    if (const auto s = p.point_state()) {
        return b.compose.det(*s);
    }
    if (level == bases.size()) {
        throw InvalidTargetError("target " + p.str() + " needs more rounds than its denominator allows");
    }
    b.rounds = std::max(b.rounds, static_cast<int>(level) + 1);
    const std::int64_t q = bases[level];
    std::vector<NodePtr> terms;
    Distribution rest = p;
    // (j, piece above the cut at (j-1)/j); it hangs off the 1/j switch
    std::vector<std::pair<std::int64_t, Distribution>> upper;
    for (std::int64_t j = q; j >= 2; --j) {
        const Rational at(j - 1, j);
        auto [left, right, index] = block_interval_cut(rest, at);
        b.trace.push_back(CutRecord{at, index, left, right});
        upper.emplace_back(j, right);
        rest = left;
    }
    terms.push_back(denominator_rounds(b, rest, bases, level + 1));
    for (auto it = upper.rbegin(); it != upper.rend(); ++it) {
        NodePtr piece = denominator_rounds(b, it->second, bases, level + 1);
        if (constant_state(piece) == 0) {
            continue;
        }
        terms.push_back(b.compose.series(b.shorthand(Rational(1, it->first)), piece));
    }
    return b.compose.parallel(terms);
}

void require_reciprocals(const SwitchSet &set, int states, std::int64_t q) {
    for (std::int64_t j = 2; j <= q; ++j) {
        const auto needed = Distribution::extremes(states, Rational(1, j));
        if (!set.contains(needed)) {
            throw InsufficientSwitchSetError("switch set lacks " + needed.str() + " needed for base " +
                                             std::to_string(q));
        }
    }
    if (!set.allow_deterministic) {
        throw InsufficientSwitchSetError("denominator reduction needs deterministic switches");
    }
}

SynthesisReport finish(std::string method, const TargetSpec &target, Builder &b, NodePtr root,
                       std::int64_t bound) {
    return SynthesisReport{std::move(method), target, Circuit(target.dist.states(), std::move(root)),
                           b.pswitches, bound, b.rounds, std::move(b.trace), b.halves, b.leaves, 0, {}};
}

}  // namespace

SwitchSet SwitchSet::reciprocals(int states, std::int64_t q) {
    SwitchSet out;
    for (std::int64_t j = 2; j <= q; ++j) {
        out.pswitches.push_back(Distribution::extremes(states, Rational(1, j)));
    }
    return out;
}

bool SwitchSet::contains(const Distribution &d) const {
    return std::find(pswitches.begin(), pswitches.end(), d) != pswitches.end();
}

TargetSpec TargetSpec::make(Distribution dist, std::int64_t q) {
    if (q < 2) {
        throw InvalidTargetError("denominator base must be at least 2");
    }
    const mpz_class base(static_cast<long>(q));
    int n = 0;
    for (const auto &p : dist.probs()) {
        const auto e = exponent_for(p.den(), base);
        if (!e) {
            throw InvalidTargetError("probability " + p.str() + " is not of the form x/" + std::to_string(q) + "^n");
        }
        n = std::max(n, *e);
    }
    return TargetSpec{std::move(dist), q, n};
}

TargetSpec TargetSpec::make(Distribution dist, std::int64_t q, int n) {
    if (q < 2 || n < 0) {
        throw InvalidTargetError("target form needs q >= 2 and n >= 0");
    }
    const mpz_class base(static_cast<long>(q));
    for (const auto &p : dist.probs()) {
        if (!divides_power(p.den(), base, n)) {
            throw InvalidTargetError("probability " + p.str() + " is not of the form x/" + std::to_string(q) + "^" +
                                     std::to_string(n));
        }
    }
    return TargetSpec{std::move(dist), q, n};
}

CutResult block_interval_cut(const Distribution &p, const Rational &q) {
    if (q <= Rational(0) || q >= Rational(1)) {
        throw ValidationError("cut point " + q.str() + " is outside (0, 1)");
    }
    const int states = p.states();
    Rational below(0);
    int k = 0;
    while (k < states - 1 && below + p[k] < q) {
        below += p[k];
        ++k;
    }
    std::vector<Rational> left(static_cast<std::size_t>(states), Rational(0));
    std::vector<Rational> right(static_cast<std::size_t>(states), Rational(0));
    const Rational upper = Rational(1) - q;
    for (int i = 0; i < k; ++i) {
        left[static_cast<std::size_t>(i)] = p[i] / q;
    }
    left[static_cast<std::size_t>(k)] = (q - below) / q;
    right[static_cast<std::size_t>(k)] = (below + p[k] - q) / upper;
    for (int i = k + 1; i < states; ++i) {
        right[static_cast<std::size_t>(i)] = p[i] / upper;
    }
    return CutResult{Distribution(std::move(left)), Distribution(std::move(right)), k};
}

SynthesisReport synth_binary_nstate(const TargetSpec &target) {
    if (target.q != 2) {
        throw InvalidTargetError("binary synthesis needs a dyadic target (q = 2)");
    }
    Builder b(target.dist.states());
    NodePtr root = binary(b, target.dist, 0);
    return finish("binary", target, b, std::move(root), complexity_bound(target.n, target.dist.states()));
}

SynthesisReport state_reduction(const TargetSpec &target) {
    const int states = target.dist.states();
    mpz_class q_n;
    mpz_ui_pow_ui(q_n.get_mpz_t(), static_cast<unsigned long>(target.q), static_cast<unsigned long>(target.n));
    int cuts = 0;
    while (mpz_class(1) << cuts < q_n) {
        ++cuts;
    }
    Builder b(states);
    NodePtr root = reduce_states(b, target.dist, 0);
    const std::int64_t half_bound = complexity_bound(cuts, states);
    auto report = finish("state_reduction", target, b, std::move(root), half_bound + states - 1);
    report.half_bound = half_bound;
    return report;
}

SynthesisReport denominator_reduction(const TargetSpec &target, const std::optional<SwitchSet> &switches) {
    const int states = target.dist.states();
    require_reciprocals(switches ? *switches : SwitchSet::reciprocals(states, target.q), states, target.q);
    Builder b(states);
    const std::vector<std::int64_t> bases(static_cast<std::size_t>(target.n), target.q);
    NodePtr root = denominator_rounds(b, target.dist, bases, 0);
    return finish("denominator", target, b, std::move(root), denominator_bound(target.q, target.n, states));
}

SynthesisReport composite_synthesis(const TargetSpec &target, const std::optional<SwitchSet> &switches) {
    const int states = target.dist.states();
    const auto factors = factorize(target.q);
    require_reciprocals(switches ? *switches : SwitchSet::reciprocals(states, factors.back().first), states,
                        factors.back().first);

    std::vector<std::size_t> order(factors.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::optional<SynthesisReport> best;
    do {
        std::vector<std::int64_t> bases;
        std::vector<std::int64_t> primes;
        for (std::size_t i : order) {
            primes.push_back(factors[i].first);
            bases.insert(bases.end(), static_cast<std::size_t>(factors[i].second * target.n), factors[i].first);
        }
        Builder b(states);
        NodePtr root = denominator_rounds(b, target.dist, bases, 0);
        if (!best || b.pswitches < best->pswitch_count) {
            best = finish("composite", target, b, std::move(root), composite_bound(target.q, target.n, states));
            best->prime_order = std::move(primes);
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return std::move(*best);
}

Json report_to_json(const SynthesisReport &report) {
    Json out = Json::object();
    out["method"] = report.method;
    out["target"] = distribution_to_json(report.target.dist);
    out["q"] = report.target.q;
    out["n"] = report.target.n;
    out["pswitch_count"] = report.pswitch_count;
    out["bound"] = report.bound;
    out["rounds"] = report.rounds;
    if (report.method == "state_reduction") {
        out["half_pswitches"] = report.half_pswitches;
        out["half_pswitch_bound"] = report.half_bound;
        out["leaf_pswitches"] = report.leaf_pswitches;
    }
    if (!report.prime_order.empty()) {
        out["prime_order"] = report.prime_order;
    }
    Json trace = Json::array();
    for (const auto &c : report.trace) {
        Json entry = Json::object();
        entry["cut"] = c.cut.str();
        entry["index"] = c.index;
        entry["left"] = distribution_to_json(c.left);
        entry["right"] = distribution_to_json(c.right);
        trace.push_back(std::move(entry));
    }
    out["trace"] = std::move(trace);
    out["netlist"] = netlist_to_json(report.circuit);
    return out;
}

}  // namespace relaynet
