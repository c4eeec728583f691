#pragma once

/**
 * End-to-end construction of a large set A ⊆ [n] with a coloring under which
 * every progression of length 3..k inside A is rainbow, plus the independent
 * integer-domain verifier and the full-[n] lower-bound certificate.
 *
 * Final colors are pairs (f-class, greedy index). For output they are
 * flattened to dense 0-based indices in order of first occurrence over
 * ascending values.
 */

#include "rainbow/conflict.hpp"
#include "rainbow/params.hpp"
#include "rainbow/shell.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rainbow {

struct ColorPair {
    std::uint32_t fclass = 0; // ordinal of the f-class, ordered by smallest member
    std::uint32_t greedy = 0;
    friend bool operator==(const ColorPair&, const ColorPair&) = default;
};

struct BuildOptions {
    bool prune = true;
    unsigned threads = 0;
    std::uint64_t max_bitmap_bytes = std::uint64_t{1} << 30;
    bool keep_graphs = false;
};

struct BuildStats {
    std::uint64_t size_A = 0;
    std::uint64_t num_colors = 0;
    std::uint64_t num_fclasses = 0;
    std::uint32_t max_degree = 0;
    std::uint64_t conflict_edges = 0;
    std::uint64_t pairs_evaluated = 0;
    std::int64_t max_edge_dist_sq = 0;
    std::uint64_t radius_violations = 0; // edges longer than pruning_radius
    double build_millis = 0;
};

// log_n(n - |A|), undefined when A = [n].
std::optional<double> measured_alpha(std::uint64_t n, std::uint64_t size_A);
// log_n(#colors), undefined without colors.
std::optional<double> measured_beta(std::uint64_t n, std::uint64_t num_colors);

// The exported view of a coloring: ascending members with dense colors.
// This is what the file format carries and what the verifier consumes.
struct Coloring {
    Params params;
    MembershipSet members;
    std::vector<std::uint64_t> values; // ascending, equals members.values()
    std::vector<std::uint32_t> colors; // parallel to values

    std::uint64_t num_colors() const;
    friend bool operator==(const Coloring&, const Coloring&) = default;
};

class ColoredSet {
public:
    Params params;
    MembershipSet A;
    std::vector<std::uint64_t> members;     // ascending
    std::vector<ColorPair> color_of;        // parallel to members
    std::vector<std::uint32_t> dense;       // parallel to members
    std::vector<ClassGraph> graphs;         // per f-class, only with keep_graphs
    BuildStats stats;

    // nullopt for non-members.
    std::optional<ColorPair> color(std::uint64_t v) const;

    std::optional<double> measured_alpha() const { return rainbow::measured_alpha(params.n, members.size()); }
    std::optional<double> measured_beta() const { return rainbow::measured_beta(params.n, stats.num_colors); }

    Coloring dense_coloring() const;
};

// Members of A grouped by f-class; groups ordered by smallest member,
// members ascending inside each group.
std::vector<std::vector<std::uint64_t>> partition_by_fclass(const MembershipSet& A, const Params& p);

// Throws invalid_input, resource_error or closure_refusal.
ColoredSet build(const Params& p, const BuildOptions& opts = {});

enum class VerifyMode { exhaustive, sampled };

std::string to_string(VerifyMode mode);

inline constexpr std::uint64_t default_verify_seed = 0x5eed'2024'0001ULL;

struct VerifyOptions {
    VerifyMode mode = VerifyMode::exhaustive;
    std::uint64_t sample_budget = 1'000'000;
    std::uint64_t seed = default_verify_seed;
    unsigned threads = 0;
    std::size_t violation_cap = 100;
};

struct Violation {
    std::vector<std::uint64_t> members; // the progression
    std::vector<std::uint32_t> colors;
};

struct VerifyReport {
    VerifyMode mode = VerifyMode::exhaustive;
    std::uint64_t aps_checked = 0;      // progressions lying entirely in A
    std::uint64_t samples = 0;          // sampled mode only
    std::uint64_t seed = 0;             // sampled mode only
    std::uint64_t violation_count = 0;  // total, not capped
    std::vector<Violation> violations;  // first violation_cap, ordered by (length, step, start)
    double elapsed_millis = 0;

    bool ok() const { return violation_count == 0; }
};

// Checks every progression of length 3..k whose members all lie in A. Only
// the membership bitmap and the per-value colors are consulted.
VerifyReport verify_rainbow(const MembershipSet& A, std::span<const std::uint32_t> color_by_value, int k,
                            const VerifyOptions& opts = {});
VerifyReport verify_rainbow(const Coloring& c, const VerifyOptions& opts = {});
VerifyReport verify_rainbow(const ColoredSet& cs, const VerifyOptions& opts = {});

// Size of the clique {1, ..., ceil(n/2)} in the conflict graph of all of [n],
// after checking every pair of it. Throws resource_error for n > 5000.
std::uint64_t full_n_lower_bound(std::uint64_t n);

// Colors used by the greedy coloring of the full-[n] conflict graph.
std::uint64_t full_n_greedy_colors(std::uint64_t n);

} // namespace rainbow
