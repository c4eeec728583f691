#pragma once

// Spherical shell S = { x : r(1-eps) <= |x| <= r(1+eps) } and the set
// A = phi(B ∩ S) stored as a bitmap over [n].

#include "rainbow/grid.hpp"
#include "rainbow/params.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace rainbow {

// Bitmap over [n]; bit v-1 is set iff v is a member.
class MembershipSet {
public:
    MembershipSet() = default;
    explicit MembershipSet(std::uint64_t n);

    static MembershipSet full(std::uint64_t n);
    // Throws invalid_input for values outside [1, n].
    static MembershipSet from_values(std::uint64_t n, std::span<const std::uint64_t> values);
    // Adopts a word array; trailing bits past n are cleared and count recomputed.
    static MembershipSet from_words(std::uint64_t n, std::vector<std::uint64_t> words);

    std::uint64_t n() const { return n_; }
    std::uint64_t count() const { return count_; }

    bool contains(std::uint64_t v) const noexcept {
        if (v < 1 || v > n_) return false;
        const auto i = v - 1;
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void insert(std::uint64_t v);
    void erase(std::uint64_t v);

    // Membership of v, v+1, ..., v+63 packed into one word (bit t <-> v+t).
    // Positions outside [1, n] read as zero. Requires v >= 1.
    std::uint64_t window(std::uint64_t v) const noexcept {
        const auto i = v - 1;
        const auto w = i >> 6;
        const auto s = i & 63;
        const std::uint64_t lo = w < words_.size() ? words_[w] : 0;
        if (s == 0) return lo;
        const std::uint64_t hi = w + 1 < words_.size() ? words_[w + 1] : 0;
        return (lo >> s) | (hi << (64 - s));
    }

    std::span<const std::uint64_t> words() const { return words_; }
    std::vector<std::uint64_t> values() const;

    friend bool operator==(const MembershipSet&, const MembershipSet&) = default;

private:
    std::uint64_t n_ = 0;
    std::uint64_t count_ = 0;
    std::vector<std::uint64_t> words_;
};

// Integer window [lo, hi] on |x|^2 equivalent to the shell inequality,
// derived exactly from the rational r^2 and epsilon. lo > hi means empty.
struct ShellWindow {
    std::int64_t lo = 0;
    std::int64_t hi = -1;

    bool contains(std::int64_t norm_sq) const { return lo <= norm_sq && norm_sq <= hi; }
};

ShellWindow shell_window(const Params& p);

bool in_shell(const GridPoint& x, const Params& p);

struct ShellBuildOptions {
    unsigned threads = 0;                                  // 0 = all cores
    std::uint64_t max_bitmap_bytes = std::uint64_t{1} << 30; // 1 GiB
};

// Throws resource_error when the bitmap would exceed the budget.
MembershipSet build_A(const Params& p, const ShellBuildOptions& opts = {});

// Permitted shortfall n - |A| <= 2 n exp(-d eps^2 / 18).
double shortfall_bound(const Params& p);

// Same quantity written as 2 n^{1 - eps^2 / (18 ln C)}.
double shortfall_bound_power_form(const Params& p);

} // namespace rainbow
