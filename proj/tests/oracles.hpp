#pragma once

// Brute-force reference implementations used only by tests. None of these
// call into the code paths they check beyond the shared data types.

#include "rainbow/grid.hpp"
#include "rainbow/params.hpp"
#include "rainbow/shell.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using rainbow::GridPoint;
using rainbow::Params;

// All grid points of B in phi order, by direct odometer enumeration.
inline std::vector<std::vector<std::int64_t>> all_points(std::int64_t C, int d) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> x(static_cast<std::size_t>(d), 0);
    while (true) {
        out.push_back(x);
        std::size_t i = 0;
        while (i < x.size() && ++x[i] == C) x[i++] = 0;
        if (i == x.size()) break;
    }
    return out;
}

// Shell membership by cross-multiplying the defining inequality
// (1-eps)^2 r^2 <= |x|^2 <= (1+eps)^2 r^2 in 128-bit integers with
// r^2 = d(C-1)(2C-1)/6. Only for small parameters.
inline bool in_shell(const std::vector<std::int64_t>& x, std::int64_t C, int d, std::int64_t en, std::int64_t ed) {
    __int128 norm = 0;
    for (auto c : x) norm += static_cast<__int128>(c) * c;
    const __int128 r6 = static_cast<__int128>(d) * (C - 1) * (2 * C - 1); // 6 r^2
    const __int128 lhs = 6 * norm * ed * ed;
    return r6 * (ed - en) * (ed - en) <= lhs && lhs <= r6 * (ed + en) * (ed + en);
}

// Shell set by enumeration: value of point = position in enumeration + 1.
inline std::set<std::uint64_t> shell_values(std::int64_t C, int d, std::int64_t en, std::int64_t ed) {
    std::set<std::uint64_t> out;
    std::uint64_t v = 1;
    for (const auto& x : all_points(C, d)) {
        if (in_shell(x, C, d, en, ed)) out.insert(v);
        ++v;
    }
    return out;
}

// Every progression (first, step, length) with 3 <= length <= k inside [n]
// whose members all lie in `in_A`.
template <class Member>
std::vector<std::vector<std::uint64_t>> progressions(std::uint64_t n, int k, Member in_A) {
    std::vector<std::vector<std::uint64_t>> out;
    for (int len = 3; len <= k; ++len)
        for (std::uint64_t a = 1; a <= n; ++a)
            for (std::uint64_t s = 1; a + static_cast<std::uint64_t>(len - 1) * s <= n; ++s) {
                std::vector<std::uint64_t> ap;
                bool ok = true;
                for (int t = 0; t < len && ok; ++t) {
                    const auto v = a + static_cast<std::uint64_t>(t) * s;
                    ok = in_A(v);
                    ap.push_back(v);
                }
                if (ok) out.push_back(std::move(ap));
            }
    return out;
}

// Count of non-rainbow progressions, by triple loop.
template <class Member, class Color>
std::uint64_t count_violations(std::uint64_t n, int k, Member in_A, Color color) {
    std::uint64_t bad = 0;
    for (const auto& ap : progressions(n, k, in_A)) {
        std::set<std::uint32_t> seen;
        for (auto v : ap) seen.insert(color(v));
        if (seen.size() != ap.size()) ++bad;
    }
    return bad;
}

// Pairs (a < b) that co-occur in some progression of length 3..k inside A.
template <class Member>
std::set<std::pair<std::uint64_t, std::uint64_t>> conflict_pairs(std::uint64_t n, int k, Member in_A) {
    std::set<std::pair<std::uint64_t, std::uint64_t>> out;
    for (const auto& ap : progressions(n, k, in_A))
        for (std::size_t i = 0; i < ap.size(); ++i)
            for (std::size_t j = i + 1; j < ap.size(); ++j) out.emplace(ap[i], ap[j]);
    return out;
}

// Per-coordinate label of f, written from the case definition: parity mod
// `modulus`; bucket j from the window base^{j-1} - 1 <= v < base^j - 1 with
// base = num/den, compared by cross-multiplying integer powers.
inline std::pair<std::int64_t, std::int64_t> label(std::int64_t x, std::int64_t C, std::int64_t modulus,
                                                   std::int64_t num, std::int64_t den) {
    const bool low = 2 * x <= C;
    const std::int64_t v = low ? x : C - 1 - x;
    __int128 pn = 1, pd = 1; // base^{j-1} = pn / pd
    for (std::int64_t j = 1;; ++j) {
        const __int128 nn = pn * num, nd = pd * den; // base^j
        // pn/pd <= v+1 < nn/nd
        if (pn <= static_cast<__int128>(v + 1) * pd && static_cast<__int128>(v + 1) * nd < nn)
            return {x % modulus, low ? j : -j};
        pn = nn;
        pd = nd;
    }
}

// Exhaustive closure check over all ordered same-label pairs of B, using
// explicit position enumeration: x at position i, y at position j of a
// progression of length 3..k; every other position t must land in B.
// Returns the number of failing (pair, position triple) combinations.
inline std::uint64_t closure_failures(std::int64_t C, int d, int k, std::int64_t modulus, std::int64_t num,
                                      std::int64_t den) {
    const auto pts = all_points(C, d);
    std::map<std::vector<std::pair<std::int64_t, std::int64_t>>, std::vector<std::size_t>> classes;
    for (std::size_t a = 0; a < pts.size(); ++a) {
        std::vector<std::pair<std::int64_t, std::int64_t>> key;
        for (auto c : pts[a]) key.push_back(label(c, C, modulus, num, den));
        classes[key].push_back(a);
    }
    std::uint64_t failures = 0;
    for (const auto& [key, members] : classes)
        for (auto a : members)
            for (auto b : members) {
                if (a == b) continue;
                const auto& x = pts[a];
                const auto& y = pts[b];
                for (int len = 3; len <= k; ++len)
                    for (int i = 0; i < len; ++i)
                        for (int j = i + 1; j < len; ++j)
                            for (int t = 0; t < len; ++t) {
                                if (t == i || t == j) continue;
                                // z = x + (t - i)(y - x)/(j - i)
                                for (int c = 0; c < d; ++c) {
                                    const std::int64_t numer = (t - i) * (y[c] - x[c]);
                                    if (numer % (j - i) != 0) {
                                        ++failures;
                                        break;
                                    }
                                    const std::int64_t z = x[c] + numer / (j - i);
                                    if (z < 0 || z >= C) {
                                        ++failures;
                                        break;
                                    }
                                }
                            }
            }
    return failures;
}

} // namespace oracle
