#pragma once

/**
 * Construction parameters: grid side C, dimension d, ground set size n = C^d,
 * shell half-width epsilon (an exact rational), progression length k and the
 * exact squared radius r^2 = d(C-1)(2C-1)/6.
 */

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace rainbow {

// Reduced fraction with positive denominator.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
};

// Accepts "p/q" (exact) or a plain decimal such as "0.05", which becomes
// 5/100 reduced. Throws invalid_input on anything else.
Rational parse_rational(std::string_view text);

inline constexpr std::uint64_t max_ground_set = std::uint64_t{1} << 48;

struct Params {
    std::int64_t C = 0;
    int d = 0;
    std::uint64_t n = 0;
    Rational epsilon;
    int k = 3;
    Rational r_squared;

    // Validates and derives n and r^2. Throws invalid_input.
    static Params make(std::int64_t C, int d, Rational epsilon, int k = 3);

    // epsilon = 1/C^3
    static Rational default_epsilon(std::int64_t C);

    std::string describe() const;
    friend bool operator==(const Params&, const Params&) = default;
};

// Exact C^d, or 0 if it exceeds max_ground_set.
std::uint64_t checked_power(std::int64_t C, int d);

std::uint64_t factorial(int k);

} // namespace rainbow
