#include "relaynet/robustness.hpp"

#include <random>
#include <set>

#include "relaynet/errors.hpp"
#include "relaynet/evaluate.hpp"

namespace relaynet {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Distribution shifted(const Distribution &d, const Rational &e) {
    std::vector<Rational> probs = d.probs();
    const int lo = d.lowest_active();
    const int hi = d.highest_active();
    probs[static_cast<std::size_t>(lo)] += e;
    probs[static_cast<std::size_t>(hi)] -= e;
    for (const auto &p : probs) {
        if (p < Rational(0) || p > Rational(1)) {
            throw ValidationError("perturbation by " + e.str() + " pushes " + d.str() + " outside [0, 1]");
        }
    }
    return Distribution(std::move(probs));
}

NodePtr perturb_node(const NodePtr &node, const std::map<std::string, Rational> &errors) {
    return std::visit(
        overloaded{
            [&](const Leaf &leaf) -> NodePtr {
                const auto *p = std::get_if<Pswitch>(&leaf.element);
                if (p == nullptr) {
                    return node;
                }
                auto it = errors.find(p->id);
                if (it == errors.end() || it->second.is_zero()) {
                    return node;
                }
                return make_pswitch(shifted(p->dist, it->second), p->id);
            },
            [&](const Series &s) -> NodePtr {
                std::vector<NodePtr> children;
                for (const auto &c : s.children) children.push_back(perturb_node(c, errors));
                return make_series(std::move(children));
            },
            [&](const Parallel &s) -> NodePtr {
                std::vector<NodePtr> children;
                for (const auto &c : s.children) children.push_back(perturb_node(c, errors));
                return make_parallel(std::move(children));
            },
            [&](const Graph &g) -> NodePtr {
                std::vector<Edge> edges;
                for (const auto &e : g.edges) edges.push_back(Edge{e.from, e.to, perturb_node(e.element, errors)});
                return make_graph(g.source, g.sink, std::move(edges));
            },
        },
        node->kind);
}

std::vector<std::string> pswitch_ids(const Circuit &c) {
    std::vector<std::string> ids;
    for (const auto *p : collect_pswitches(c)) {
        if (p->dist.active_count() != 2) {
            throw ValidationError("pswitch '" + p->id + "' has " + std::to_string(p->dist.active_count()) +
                                  " active states; the error model needs exactly 2");
        }
        ids.push_back(p->id);
    }
    return ids;
}

}  // namespace

Circuit perturb(const Circuit &c, const PerturbationModel &m) {
    if (m.epsilon < Rational(0)) {
        throw ValidationError("epsilon must be non-negative");
    }
    const auto ids = pswitch_ids(c);
    const std::set<std::string> known(ids.begin(), ids.end());
    for (const auto &[id, e] : m.errors) {
        if (!known.contains(id)) {
            throw ValidationError("perturbation names unknown pswitch '" + id + "'");
        }
        if (e.abs() > m.epsilon) {
            throw ValidationError("error " + e.str() + " on '" + id + "' exceeds epsilon " + m.epsilon.str());
        }
    }
    return Circuit(c.states(), perturb_node(c.root(), m.errors));
}

ErrorReport worst_case_error(const Circuit &c, const Rational &epsilon, const RobustnessOptions &options) {
    const auto ids = pswitch_ids(c);
    const std::size_t m = ids.size();
    if (options.mode == SearchMode::corners && static_cast<int>(m) > options.corner_cap) {
        throw CapacityError("corner search over " + std::to_string(m) + " pswitches exceeds cap of " +
                            std::to_string(options.corner_cap) + "; use sampled mode");
    }
    const Distribution nominal = eval(c);
    ErrorReport report{epsilon, nominal, std::vector<Rational>(static_cast<std::size_t>(c.states()), Rational(0)),
                       PerturbationModel{epsilon, {}}, options.mode == SearchMode::corners, 0};
    Rational worst(-1);

    auto consider = [&](const std::vector<Rational> &errors) {
        PerturbationModel model{epsilon, {}};
        for (std::size_t i = 0; i < m; ++i) {
            model.errors.emplace(ids[i], errors[i]);
        }
        const Distribution out = eval(perturb(c, model));
        ++report.evaluations;
        Rational largest(0);
        for (int s = 0; s < c.states(); ++s) {
            const Rational d = (out[s] - nominal[s]).abs();
            if (d > report.per_state[static_cast<std::size_t>(s)]) {
                report.per_state[static_cast<std::size_t>(s)] = d;
            }
            largest = std::max(largest, d);
        }
        if (largest > worst) {
            worst = largest;
            report.worst = std::move(model);
        }
    };

    std::vector<Rational> errors(m);
    if (options.mode == SearchMode::corners) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
            for (std::size_t i = 0; i < m; ++i) {
                errors[i] = (mask >> i & 1) != 0 ? epsilon : -epsilon;
            }
            consider(errors);
        }
        return report;
    }

    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> step(-options.grid, options.grid);
    for (int t = 0; t < options.trials; ++t) {
        // even trials: a random corner; odd trials: a random grid point
        for (std::size_t i = 0; i < m; ++i) {
            if (t % 2 == 0) {
                errors[i] = (rng() & 1) != 0 ? epsilon : -epsilon;
            } else {
                errors[i] = epsilon * Rational(step(rng), options.grid);
            }
        }
        consider(errors);
    }
    return report;
}

BoundFamily BoundFamily::parse(const std::string &text) {
    if (text == "binary") {
        return binary();
    }
    if (text.rfind("denom:", 0) == 0) {
        const Rational q = Rational::parse(text.substr(6));
        if (q.den() != 1 || q < Rational(2)) {
            throw ValidationError("denominator family needs an integer q >= 2");
        }
        return denominator(q.num().get_si());
    }
    throw ValidationError("unknown bound family '" + text + "' (expected binary or denom:q)");
}

Verdict check_bounds(const ErrorReport &report, const BoundFamily &family) {
    Verdict v;
    v.boundary_bound = report.epsilon * Rational(family.q);
    v.interior_bound = report.epsilon * Rational(family.q + 1);
    const std::size_t n = report.per_state.size();
    for (std::size_t s = 0; s < n; ++s) {
        const bool boundary = s == 0 || s + 1 == n;
        const bool ok = report.per_state[s] <= (boundary ? v.boundary_bound : v.interior_bound);
        v.per_state.push_back(ok);
        v.holds = v.holds && ok;
    }
    return v;
}

Json error_report_to_json(const ErrorReport &report, const Verdict *verdict) {
    Json out = Json::object();
    out["epsilon"] = report.epsilon.str();
    out["nominal"] = distribution_to_json(report.nominal);
    Json errors = Json::array();
    for (const auto &e : report.per_state) {
        errors.push_back(e.str());
    }
    out["per_state_max_error"] = std::move(errors);
    Json worst = Json::object();
    for (const auto &[id, e] : report.worst.errors) {
        worst[id] = e.str();
    }
    out["worst_assignment"] = std::move(worst);
    out["exhaustive"] = report.exhaustive;
    out["evaluations"] = report.evaluations;
    if (verdict != nullptr) {
        out["bound_boundary"] = verdict->boundary_bound.str();
        out["bound_interior"] = verdict->interior_bound.str();
        out["bounds_hold"] = verdict->holds;
    }
    return out;
}

}  // namespace relaynet
