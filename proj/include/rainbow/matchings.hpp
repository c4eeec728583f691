#pragma once

// Graph on m blocks V_1..V_m of m vertices each. For i < j, x in V_i and
// y in V_j are adjacent iff x + y lies in a rainbow-colored set A ⊆ [2m];
// the edge gets key (i, j, x - y, c(x + y)). Every key class is an induced
// matching.

#include "rainbow/params.hpp"
#include "rainbow/rainbow.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rainbow {

// Vertices are (block, index) pairs, never flattened.
struct MatchingEdge {
    std::uint32_t i = 0; // block of the first endpoint, i < j
    std::uint32_t x = 0;
    std::uint32_t j = 0;
    std::uint32_t y = 0;

    friend bool operator==(const MatchingEdge&, const MatchingEdge&) = default;
    friend auto operator<=>(const MatchingEdge&, const MatchingEdge&) = default;
};

class MatchingDecomposition {
public:
    MatchingDecomposition() = default;

    // Normalizes (edge, class) pairs into class-major order. Class ids must
    // be dense in [0, #classes). `sums` is the membership of A on [2m].
    MatchingDecomposition(std::uint32_t m, MembershipSet sums, std::vector<MatchingEdge> edges,
                          std::span<const std::uint32_t> class_of_edge);

    std::uint32_t m() const { return m_; }
    const MembershipSet& sums() const { return sums_; }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t class_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }

    // All edges, grouped by class in increasing class id.
    std::span<const MatchingEdge> edges() const { return edges_; }
    std::span<const MatchingEdge> class_edges(std::size_t c) const {
        return std::span(edges_).subspan(offsets_[c], offsets_[c + 1] - offsets_[c]);
    }

    bool has_edge(std::uint32_t x, std::uint32_t y) const { return sums_.contains(std::uint64_t{x} + y); }

private:
    std::uint32_t m_ = 0;
    MembershipSet sums_;
    std::vector<MatchingEdge> edges_;
    std::vector<std::size_t> offsets_;
};

// Builds the decomposition from a coloring on the ground set [2m].
// Throws invalid_input when the coloring's ground set is not [2m].
MatchingDecomposition build_matchings(std::uint32_t m, const Coloring& inner);

// Runs the rainbow construction for `inner` (which must have n = 2m) first.
MatchingDecomposition build_matchings(std::uint32_t m, const Params& inner, const BuildOptions& opts = {});

struct InducedViolation {
    std::size_t class_index = 0;
    MatchingEdge first;
    MatchingEdge second;
    std::string reason;
};

struct InducedReport {
    std::uint64_t classes_checked = 0;
    std::uint64_t pairs_checked = 0;
    std::uint64_t violation_count = 0;
    std::vector<InducedViolation> violations; // capped

    bool ok() const { return violation_count == 0; }
};

// For every class: no two edges share a block-qualified vertex, no cross
// pair (x, v) or (u, y) is an edge of the graph at all, every edge joins the
// same block pair and satisfies x + y in A, and no edge occurs twice.
InducedReport verify_induced(const MatchingDecomposition& md, unsigned threads = 0, std::size_t cap = 100);

// binom(m, 2) (m^2 - m * missing); may be negative.
std::int64_t edge_count_bound(std::int64_t m, std::int64_t missing);

// binom(m, 2) (2m - 1) * inner_colors.
std::uint64_t class_count_bound(std::uint64_t m, std::uint64_t inner_colors);

// The looser 4 n^{3/2 + beta/2} with n = m^2.
double class_count_bound_loose(std::uint64_t m, double beta);

} // namespace rainbow
