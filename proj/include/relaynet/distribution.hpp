#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relaynet/rational.hpp"

namespace relaynet {

/// Probability distribution over the totally ordered states 0 < 1 < ... < N-1.
/// Entries lie in [0, 1] and sum to exactly 1; N >= 2.
class Distribution {
  public:
    explicit Distribution(std::vector<Rational> probs);

    /// Point mass on `state`.
    static Distribution point(int states, int state);
    /// The shorthand p == (1-p, 0, ..., 0, p).
    static Distribution extremes(int states, const Rational &top);
    /// Comma-separated rationals, e.g. "5/8,1/4,1/8". Arity gives N.
    static Distribution parse(std::string_view csv);

    int states() const { return static_cast<int>(probs_.size()); }
    const Rational &operator[](int state) const { return probs_[static_cast<std::size_t>(state)]; }
    const std::vector<Rational> &probs() const { return probs_; }

    /// Cumulative P(X <= state).
    Rational cdf(int state) const;

    /// Index reversal: result[i] = this[N-1-i].
    Distribution reversed() const;

    int active_count() const;
    int lowest_active() const;
    int highest_active() const;
    std::optional<int> point_state() const;

    std::vector<std::string> to_strings() const;
    /// "(1/2,0,1/2)"
    std::string str() const;

    friend bool operator==(const Distribution &, const Distribution &) = default;
    friend auto operator<=>(const Distribution &a, const Distribution &b) { return a.probs_ <=> b.probs_; }

  private:
    std::vector<Rational> probs_;
};

/// Throws DimensionError unless both distributions have the same state count.
void require_same_states(const Distribution &p, const Distribution &q);

}  // namespace relaynet
