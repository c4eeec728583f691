#include "rainbow/params.hpp"

#include "rainbow/error.hpp"

#include <charconv>
#include <numeric>
#include <sstream>

namespace rainbow {

Rational::Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw invalid_input("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const std::int64_t g = std::gcd(n, d);
    num = g ? n / g : 0;
    den = g ? d / g : 1;
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 lhs = static_cast<__int128>(a.num) * b.den;
    const __int128 rhs = static_cast<__int128>(b.num) * a.den;
    return lhs <=> rhs;
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw invalid_input("cannot parse number '" + std::string(whole) + "'");
    return v;
}

} // namespace

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw invalid_input("empty rational");
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        return Rational(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
    }
    const auto dot = text.find('.');
    if (dot == std::string_view::npos) return Rational(parse_int(text, text), 1);

    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    bool negative = false;
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
        negative = int_part.front() == '-';
        int_part.remove_prefix(1);
    }
    if (frac_part.size() > 17) throw invalid_input("too many decimal digits in '" + std::string(text) + "'");
    for (char c : frac_part)
        if (c < '0' || c > '9') throw invalid_input("cannot parse number '" + std::string(text) + "'");
    if (int_part.empty() && frac_part.empty()) throw invalid_input("cannot parse number '" + std::string(text) + "'");

    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    const std::int64_t whole = int_part.empty() ? 0 : parse_int(int_part, text);
    const std::int64_t frac = frac_part.empty() ? 0 : parse_int(frac_part, text);
    const __int128 numer = static_cast<__int128>(whole) * scale + frac;
    if (numer > INT64_MAX) throw invalid_input("decimal out of range: '" + std::string(text) + "'");
    const auto value = static_cast<std::int64_t>(numer);
    return Rational(negative ? -value : value, scale);
}

std::uint64_t checked_power(std::int64_t C, int d) {
    if (C < 1 || d < 0) return 0;
    unsigned __int128 acc = 1;
    for (int i = 0; i < d; ++i) {
        acc *= static_cast<unsigned __int128>(C);
        if (acc > max_ground_set) return 0;
    }
    return static_cast<std::uint64_t>(acc);
}

std::uint64_t factorial(int k) {
    if (k < 0 || k > 20) throw invalid_input("factorial argument out of range");
    std::uint64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

Params Params::make(std::int64_t C, int d, Rational epsilon, int k) {
    if (k < 3 || k > 20) throw invalid_input("k must lie in [3, 20], got " + std::to_string(k));
    if (d < 1) throw invalid_input("d must be at least 1, got " + std::to_string(d));
    const std::int64_t min_side = k == 3 ? 2 : 2 * (k - 1);
    if (C < min_side)
        throw invalid_input("C must be at least " + std::to_string(min_side) + " for k=" + std::to_string(k) +
                            ", got " + std::to_string(C));
    if (epsilon <= Rational(0, 1) || epsilon >= Rational(1, 1))
        throw invalid_input("epsilon must lie strictly between 0 and 1, got " + epsilon.str());

    const std::uint64_t n = checked_power(C, d);
    if (n == 0)
        throw invalid_input("C^d exceeds 2^48 for C=" + std::to_string(C) + " d=" + std::to_string(d));

    // Squared norms must fit comfortably in int64.
    const unsigned __int128 max_norm = static_cast<unsigned __int128>(d) * static_cast<unsigned __int128>(C - 1) *
                                       static_cast<unsigned __int128>(C - 1);
    if (max_norm > (static_cast<unsigned __int128>(1) << 62))
        throw invalid_input("d(C-1)^2 exceeds 2^62; grid too elongated");

    Params p;
    p.C = C;
    p.d = d;
    p.n = n;
    p.epsilon = epsilon;
    p.k = k;
    const __int128 rn = static_cast<__int128>(d) * (C - 1) * (2 * C - 1);
    if (rn > INT64_MAX) throw invalid_input("r^2 numerator overflows");
    p.r_squared = Rational(static_cast<std::int64_t>(rn), 6);
    return p;
}

Rational Params::default_epsilon(std::int64_t C) {
    const __int128 c3 = static_cast<__int128>(C) * C * C;
    if (c3 > INT64_MAX || C < 1) throw invalid_input("C too large for the default epsilon 1/C^3");
    return Rational(1, static_cast<std::int64_t>(c3));
}

std::string Params::describe() const {
    std::ostringstream os;
    os << "C=" << C << " d=" << d << " epsilon=" << epsilon.str() << " k=" << k;
    return os.str();
}

} // namespace rainbow
