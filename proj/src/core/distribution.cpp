#include "relaynet/distribution.hpp"

#include <sstream>

#include "relaynet/errors.hpp"

namespace relaynet {

Distribution::Distribution(std::vector<Rational> probs) : probs_(std::move(probs)) {
    if (probs_.size() < 2) {
        throw ValidationError("a distribution needs at least 2 states");
    }
    Rational total = 0;
    for (const auto &p : probs_) {
        if (p.sign() < 0 || p > Rational(1)) {
            throw ValidationError("probability " + p.str() + " outside [0, 1]");
        }
        total += p;
    }
    if (total != Rational(1)) {
        throw ValidationError("probabilities sum to " + total.str() + ", not 1");
    }
}

Distribution Distribution::point(int states, int state) {
    if (states < 2 || state < 0 || state >= states) {
        throw ValidationError("point mass on state " + std::to_string(state) + " of " +
                              std::to_string(states));
    }
    std::vector<Rational> probs(static_cast<std::size_t>(states));
    probs[static_cast<std::size_t>(state)] = 1;
    return Distribution(std::move(probs));
}

Distribution Distribution::extremes(int states, const Rational &top) {
    if (states < 2) {
        throw ValidationError("a distribution needs at least 2 states");
    }
    std::vector<Rational> probs(static_cast<std::size_t>(states));
    probs.front() = Rational(1) - top;
    probs.back() = top;
    return Distribution(std::move(probs));
}

Distribution Distribution::parse(std::string_view csv) {
    std::vector<Rational> probs;
    std::size_t start = 0;
    while (true) {
        const auto comma = csv.find(',', start);
        probs.push_back(Rational::parse(csv.substr(start, comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return Distribution(std::move(probs));
}

Rational Distribution::cdf(int state) const {
    Rational acc = 0;
    for (int i = 0; i <= state && i < states(); ++i) {
        acc += (*this)[i];
    }
    return acc;
}

Distribution Distribution::reversed() const {
    return Distribution(std::vector<Rational>(probs_.rbegin(), probs_.rend()));
}

int Distribution::active_count() const {
    int count = 0;
    for (const auto &p : probs_) {
        count += p.is_zero() ? 0 : 1;
    }
    return count;
}

int Distribution::lowest_active() const {
    for (int i = 0; i < states(); ++i) {
        if (!(*this)[i].is_zero()) {
            return i;
        }
    }
    return -1;
}

int Distribution::highest_active() const {
    for (int i = states() - 1; i >= 0; --i) {
        if (!(*this)[i].is_zero()) {
            return i;
        }
    }
    return -1;
}

std::optional<int> Distribution::point_state() const {
    if (active_count() != 1) {
        return std::nullopt;
    }
    return lowest_active();
}

std::vector<std::string> Distribution::to_strings() const {
    std::vector<std::string> out;
    out.reserve(probs_.size());
    for (const auto &p : probs_) {
        out.push_back(p.str());
    }
    return out;
}

std::string Distribution::str() const {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        out << (i ? "," : "") << probs_[i];
    }
    out << ')';
    return out.str();
}

void require_same_states(const Distribution &p, const Distribution &q) {
    if (p.states() != q.states()) {
        throw DimensionError("state count mismatch: " + std::to_string(p.states()) + " vs " +
                             std::to_string(q.states()));
    }
}

}  // namespace relaynet
