#include "rainbow/grid.hpp"

#include "rainbow/error.hpp"

#include <string>

namespace rainbow {

bool is_valid(const GridPoint& x, const Params& p) {
    if (x.dim() != static_cast<std::size_t>(p.d)) return false;
    for (auto c : x.coords)
        if (c < 0 || c >= p.C) return false;
    return true;
}

std::uint64_t phi(const GridPoint& x, const Params& p) {
    if (x.dim() != static_cast<std::size_t>(p.d))
        throw invalid_input("grid point has dimension " + std::to_string(x.dim()) + ", expected " +
                            std::to_string(p.d));
    std::uint64_t v = 0;
    for (std::size_t i = x.dim(); i-- > 0;) {
        const auto c = x.coords[i];
        if (c < 0 || c >= p.C)
            throw invalid_input("coordinate " + std::to_string(c) + " outside [0, " + std::to_string(p.C - 1) + "]");
        v = v * static_cast<std::uint64_t>(p.C) + static_cast<std::uint64_t>(c);
    }
    return v + 1;
}

void phi_inv_into(std::uint64_t v, const Params& p, std::span<std::int64_t> out) {
    if (v < 1 || v > p.n)
        throw invalid_input("value " + std::to_string(v) + " outside [1, " + std::to_string(p.n) + "]");
    std::uint64_t rest = v - 1;
    const auto base = static_cast<std::uint64_t>(p.C);
    for (auto& c : out) {
        c = static_cast<std::int64_t>(rest % base);
        rest /= base;
    }
}

GridPoint phi_inv(std::uint64_t v, const Params& p) {
    GridPoint x(std::vector<std::int64_t>(static_cast<std::size_t>(p.d)));
    phi_inv_into(v, p, x.coords);
    return x;
}

std::optional<GridPoint> midpoint(const GridPoint& x, const GridPoint& y) {
    if (x.dim() != y.dim()) throw invalid_input("midpoint of points with different dimensions");
    GridPoint m(std::vector<std::int64_t>(x.dim()));
    for (std::size_t i = 0; i < x.dim(); ++i) {
        const auto s = x[i] + y[i];
        if (s % 2 != 0) return std::nullopt;
        m.coords[i] = s / 2;
    }
    return m;
}

std::optional<GridPoint> reflect(const GridPoint& x, const GridPoint& y, const Params& p) {
    return rational_combination(x, y, 2, 1, p);
}

std::optional<GridPoint> rational_combination(const GridPoint& x, const GridPoint& y, std::int64_t p_num,
                                              std::int64_t q_den, const Params& p) {
    if (q_den <= 0) throw invalid_input("rational_combination needs a positive denominator");
    if (x.dim() != y.dim()) throw invalid_input("rational_combination of points with different dimensions");
    GridPoint z(std::vector<std::int64_t>(x.dim()));
    for (std::size_t i = 0; i < x.dim(); ++i) {
        const __int128 s = static_cast<__int128>(p_num) * x[i] + static_cast<__int128>(q_den - p_num) * y[i];
        if (s % q_den != 0) return std::nullopt;
        const __int128 c = s / q_den;
        if (c < 0 || c >= p.C) return std::nullopt;
        z.coords[i] = static_cast<std::int64_t>(c);
    }
    return z;
}

std::int64_t squared_norm(const GridPoint& x) {
    std::int64_t s = 0;
    for (auto c : x.coords) s += c * c;
    return s;
}

std::int64_t squared_distance(std::span<const std::int64_t> x, std::span<const std::int64_t> y) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto t = x[i] - y[i];
        s += t * t;
    }
    return s;
}

} // namespace rainbow
