#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace relaynet {

/// Exact arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator. Thin value wrapper over GMP's mpq_class.
class Rational {
  public:
    Rational() = default;
    Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den);
    Rational(const mpz_class &num, const mpz_class &den);
    explicit Rational(mpq_class value);

    /// Parses "a", "-a" or "a/b" (whitespace around the string is ignored).
    /// Throws ValidationError on malformed input or a zero denominator.
    static Rational parse(std::string_view text);

    const mpz_class &num() const { return value_.get_num(); }
    const mpz_class &den() const { return value_.get_den(); }
    const mpq_class &raw() const { return value_; }

    bool is_zero() const { return sgn(value_) == 0; }
    int sign() const { return sgn(value_); }
    Rational abs() const;

    /// "a/b" in lowest terms, or "a" when the denominator is 1.
    std::string str() const;

    Rational &operator+=(const Rational &rhs);
    Rational &operator-=(const Rational &rhs);
    Rational &operator*=(const Rational &rhs);
    Rational &operator/=(const Rational &rhs);

    friend Rational operator+(Rational lhs, const Rational &rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational &rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational &rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational &rhs) { return lhs /= rhs; }
    Rational operator-() const;

    friend bool operator==(const Rational &a, const Rational &b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    std::size_t hash() const;

  private:
    mpq_class value_{0};
};

std::ostream &operator<<(std::ostream &out, const Rational &r);

}  // namespace relaynet

template <>
struct std::hash<relaynet::Rational> {
    std::size_t operator()(const relaynet::Rational &r) const noexcept { return r.hash(); }
};
