// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "pilotplan/error.hpp"

namespace pilotplan {

/// Exact rational on int64, always normalized with positive denominator.
/// Group weights and ratios enter the optimizer as rationals so that
/// comparisons against 1 and the integrality test on log3(w/(1-w)) are
/// decided without floating point.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0) throw InvalidParameter("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }
    explicit Rational(std::int64_t n) : num(n), den(1) {}

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num * b.den < b.num * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return a.num * b.den <= b.num * a.den;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    friend Rational operator*(const Rational& a, const Rational& b) {
        return {a.num * b.num, a.den * b.den};
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    /// Parses "num/den" or a bare integer.
    static Rational parse(const std::string& text) {
        const auto slash = text.find('/');
        try {
            if (slash == std::string::npos) return Rational(std::stoll(text));
            return Rational(std::stoll(text.substr(0, slash)),
                            std::stoll(text.substr(slash + 1)));
        } catch (const std::exception&) {
            throw InvalidParameter("cannot parse rational: " + text);
        }
    }
};

inline std::int64_t pow3(int e) {
    std::int64_t v = 1;
    for (int i = 0; i < e; ++i) v *= 3;
    return v;
}

/// Value 3^k * r for possibly negative k, kept exact.
inline Rational scale_pow3(const Rational& r, int k) {
    if (k >= 0) return {r.num * pow3(k), r.den};
    return {r.num, r.den * pow3(-k)};
}

}  // namespace pilotplan
