#pragma once

// The grid B = {0,...,C-1}^d, the positional bijection phi : B -> [n] and
// the exact grid-point arithmetic used by the construction.
//
// Coordinates are stored least-significant first: coords[0] carries weight
// C^0 in phi.

#include "rainbow/params.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rainbow {

struct GridPoint {
    std::vector<std::int64_t> coords;

    GridPoint() = default;
    explicit GridPoint(std::vector<std::int64_t> c) : coords(std::move(c)) {}
    GridPoint(std::initializer_list<std::int64_t> c) : coords(c) {}

    std::size_t dim() const { return coords.size(); }
    std::int64_t operator[](std::size_t i) const { return coords[i]; }

    friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

bool is_valid(const GridPoint& x, const Params& p);

// 1 + sum x(i) C^i. Throws invalid_input for a point outside B.
std::uint64_t phi(const GridPoint& x, const Params& p);

// Base-C digits of v-1. Throws invalid_input unless 1 <= v <= n.
GridPoint phi_inv(std::uint64_t v, const Params& p);

// Allocation-free variant for hot loops; out.size() must equal p.d.
void phi_inv_into(std::uint64_t v, const Params& p, std::span<std::int64_t> out);

// (x+y)/2, or nullopt when some coordinate sum is odd.
std::optional<GridPoint> midpoint(const GridPoint& x, const GridPoint& y);

// 2x-y, or nullopt when it leaves B.
std::optional<GridPoint> reflect(const GridPoint& x, const GridPoint& y, const Params& p);

// (p_num x + (q_den - p_num) y) / q_den when every coordinate is an integer
// in [0, C-1]; nullopt otherwise. Throws invalid_input for q_den <= 0.
std::optional<GridPoint> rational_combination(const GridPoint& x, const GridPoint& y, std::int64_t p_num,
                                              std::int64_t q_den, const Params& p);

std::int64_t squared_norm(const GridPoint& x);

// |x - y|^2 over raw coordinate spans of equal length.
std::int64_t squared_distance(std::span<const std::int64_t> x, std::span<const std::int64_t> y);

} // namespace rainbow
