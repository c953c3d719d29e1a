#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "cosetforge/error.hpp"

namespace cosetforge {

/// Exact nonnegative rational, used for the support fractions alpha and beta
/// and the success probability alpha*beta. Small by construction (denominators
/// bounded by |G|^2 at desk scale), so int64 never overflows here.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0) fail(Errc::config, "rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num * b.num, a.den * b.den);
    }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

} // namespace cosetforge
