#pragma once

// Conflict graphs inside one f-class and their greedy Delta+1 coloring.
//
// Two members conflict when some progression of length 3..k lying entirely
// in A contains both. The predicate works on integers in [n]; the grid is
// only consulted for the distance-based prune.

#include "rainbow/params.hpp"
#include "rainbow/shell.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace rainbow {

// Requires a != b. Members of A are not re-checked: the caller passes
// values already in A.
bool conflict_pair(std::uint64_t a, std::uint64_t b, const MembershipSet& A, int k);

// Grid-space distance bound between two members of one progression inside
// the shell: 4 sqrt(eps) r for k = 3, 10 sqrt(eps) r for k >= 4.
double pruning_radius(const Params& p);

// floor(pruning_radius^2), computed exactly. Squared grid distances are
// integers, so dist^2 <= this value iff dist <= pruning_radius.
std::int64_t pruning_radius_sq_floor(const Params& p);

struct ClassGraph {
    std::vector<std::uint64_t> members;               // ascending
    std::vector<std::vector<std::uint32_t>> adjacency; // indices into members, ascending
    std::uint32_t max_degree = 0;

    // Largest squared grid distance across an edge and how many edges exceed
    // pruning_radius. Only filled by build_class_graph.
    std::int64_t max_edge_dist_sq = 0;
    std::uint64_t radius_violations = 0;
    std::uint64_t pairs_evaluated = 0;

    std::uint64_t edge_count() const;
    friend bool operator==(const ClassGraph& a, const ClassGraph& b) {
        return a.members == b.members && a.adjacency == b.adjacency;
    }
};

// Conflict graph on `members` (one f-class of A). With prune set, pairs
// farther apart in the grid than pruning_radius are skipped without
// evaluation; this is sound whenever the closure property holds.
ClassGraph build_class_graph(std::span<const std::uint64_t> members, const MembershipSet& A, const Params& p,
                             bool prune = true);

// Plain all-pairs conflict graph with no grid information.
ClassGraph build_conflict_graph(std::span<const std::uint64_t> members, const MembershipSet& A, int k);

// Smallest-free-color greedy in ascending member order. Result is indexed
// like g.members.
std::vector<std::uint32_t> greedy_color(const ClassGraph& g);

// ln of the degree bound 2^d C^{16 eps d C^2}.
double degree_log_bound(const Params& p);

} // namespace rainbow
