#pragma once

// Auxiliary coloring f of the grid. Two points with the same f-label have
// all AP companion points (midpoints, reflections and, for longer
// progressions, the rational combinations fixed by AP positions) inside B,
// so grid arithmetic agrees with integer arithmetic under phi.
//
// Per coordinate the label is (parity, bucket):
//   parity = x mod 2 (k = 3) or x mod k! (k >= 4)
//   bucket = +j when 2x <= C and x+1 lies in the j-th geometric window,
//            -j when 2x >  C and C-x lies in the j-th geometric window.
// Windows have ratio 2 for k = 3 and k/(k-1) otherwise; the j-th window is
// base^{j-1} <= v+1 < base^j.

#include "rainbow/grid.hpp"
#include "rainbow/params.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rainbow {

struct AuxColor {
    std::vector<std::int64_t> parities;
    std::vector<std::int64_t> buckets;

    friend bool operator==(const AuxColor&, const AuxColor&) = default;
    friend auto operator<=>(const AuxColor&, const AuxColor&) = default;
};

// Ratio-2 windows, parity mod 2.
AuxColor f3(const GridPoint& x, const Params& p);
// Ratio-k/(k-1) windows, parity mod k!.
AuxColor fk(const GridPoint& x, const Params& p);
// f3 when p.k == 3, fk otherwise. This is the coloring the build uses.
AuxColor aux_color(const GridPoint& x, const Params& p);

// Precomputed window thresholds for bulk labelling.
class FClassifier {
public:
    enum class Variant { ratio_two, ratio_k };

    // Variant matching aux_color: ratio_two for k == 3, ratio_k otherwise.
    explicit FClassifier(const Params& p);
    FClassifier(const Params& p, Variant variant);

    std::int64_t parity(std::int64_t x) const { return x % parity_modulus_; }
    std::int64_t bucket(std::int64_t x) const;
    // Geometric window index of v (v >= 0): the j >= 1 with base^{j-1} <= v+1 < base^j.
    int window_index(std::int64_t v) const;

    AuxColor color(std::span<const std::int64_t> x) const;

    std::int64_t parity_modulus() const { return parity_modulus_; }
    // Largest bucket magnitude any coordinate can receive.
    std::int64_t max_bucket() const { return max_bucket_; }
    // thresholds()[j-1] = ceil(base^{j-1}); window j is thresholds()[j-1] <= v+1 < thresholds()[j].
    std::span<const std::int64_t> thresholds() const { return thresholds_; }

    bool key_fits_u64() const { return key_fits_; }
    // Mixed-radix packing of the label. Throws encoding_error on overflow.
    std::uint64_t key(std::span<const std::int64_t> x) const;
    // Canonical byte-string key; always available.
    std::string key_bytes(std::span<const std::int64_t> x) const;

private:
    std::int64_t bucket_digit(std::int64_t b) const;

    std::int64_t C_;
    int d_;
    std::int64_t parity_modulus_;
    std::vector<std::int64_t> thresholds_; // thresholds_[j-1] = ceil(base^{j-1})
    std::int64_t max_bucket_ = 0;
    std::uint64_t parity_radix_ = 0;
    std::uint64_t bucket_radix_ = 0;
    bool key_fits_ = false;
};

// Injective packing of aux_color(x). Throws encoding_error when the packed
// key needs more than 64 bits; fclass_key_bytes is the fallback.
std::uint64_t fclass_key(const GridPoint& x, const Params& p);
std::string fclass_key_bytes(const GridPoint& x, const Params& p);

// Upper bound on the number of f-classes, in natural-log space.
double count_f_colors(const Params& p);

// (p_num, q_den) pairs, reduced, such that a progression of length 3..k with
// x at position i and y at position j has its position-t member equal to
// (p_num x + (q_den - p_num) y) / q_den. Trivial pairs (t = i, t = j) are
// omitted.
struct Coefficient {
    std::int64_t p_num;
    std::int64_t q_den;
    friend auto operator<=>(const Coefficient&, const Coefficient&) = default;
};
std::vector<Coefficient> required_coefficients(int k);

struct ClosureViolation {
    std::int64_t u; // coordinate values sharing a label
    std::int64_t v;
    Coefficient coefficient;
    std::string describe() const;
};

// Exact per-coordinate closure check for aux_color under p. The label is a
// product of per-coordinate labels, so a d-dimensional violation exists iff
// some coordinate pair violates. Within one label the combination is affine
// in each argument, so the extreme members of the label decide range
// membership and the shared residue decides integrality.
std::optional<ClosureViolation> find_closure_violation(const Params& p);

// Throws closure_refusal naming the offending pair.
void require_closure(const Params& p);

} // namespace rainbow
