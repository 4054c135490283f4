#include "relaynet/rational.hpp"

#include <cctype>
#include <ostream>

#include "relaynet/errors.hpp"

namespace relaynet {

namespace {

bool parse_integer(std::string_view text, mpz_class &out) {
    if (text.empty()) {
        return false;
    }
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) {
        return false;
    }
    for (std::size_t i = start; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            return false;
        }
    }
    std::string digits(text.substr(text[0] == '+' ? 1 : 0));
    return out.set_str(digits, 10) == 0;
}

std::string_view trim(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    return text;
}

}  // namespace

Rational::Rational(std::int64_t value) : value_(static_cast<long>(value)) {}

Rational::Rational(std::int64_t num, std::int64_t den)
    : Rational(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))) {}

Rational::Rational(const mpz_class &num, const mpz_class &den) {
    if (den == 0) {
        throw ValidationError("rational with zero denominator");
    }
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
    const std::string_view body = trim(text);
    const auto slash = body.find('/');
    mpz_class num;
    mpz_class den = 1;
    if (slash == std::string_view::npos) {
        if (!parse_integer(body, num)) {
            throw ValidationError("malformed rational '" + std::string(text) + "'");
        }
    } else {
        if (!parse_integer(trim(body.substr(0, slash)), num) ||
            !parse_integer(trim(body.substr(slash + 1)), den)) {
            throw ValidationError("malformed rational '" + std::string(text) + "'");
        }
        if (den == 0) {
            throw ValidationError("rational with zero denominator '" + std::string(text) + "'");
        }
    }
    return Rational(num, den);
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

std::string Rational::str() const {
    if (value_.get_den() == 1) {
        return value_.get_num().get_str();
    }
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational &Rational::operator+=(const Rational &rhs) {
    value_ += rhs.value_;
    return *this;
}

Rational &Rational::operator-=(const Rational &rhs) {
    value_ -= rhs.value_;
    return *this;
}

Rational &Rational::operator*=(const Rational &rhs) {
    value_ *= rhs.value_;
    return *this;
}

Rational &Rational::operator/=(const Rational &rhs) {
    if (rhs.is_zero()) {
        throw ValidationError("division by zero");
    }
    value_ /= rhs.value_;
    return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

std::size_t Rational::hash() const {
    const std::size_t h1 = std::hash<std::string>{}(value_.get_num().get_str(16));
    const std::size_t h2 = std::hash<std::string>{}(value_.get_den().get_str(16));
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

std::ostream &operator<<(std::ostream &out, const Rational &r) { return out << r.str(); }

}  // namespace relaynet
