#include "rainbow/rainbow.hpp"

#include "rainbow/auxcolor.hpp"
#include "rainbow/error.hpp"
#include "rainbow/grid.hpp"
#include "rainbow/parallel.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <tuple>

namespace rainbow {

namespace {

using clock_type = std::chrono::steady_clock;

double millis_since(clock_type::time_point start) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

constexpr std::uint32_t no_color = std::numeric_limits<std::uint32_t>::max();

} // namespace

std::optional<double> measured_alpha(std::uint64_t n, std::uint64_t size_A) {
    if (size_A >= n || n < 2) return std::nullopt;
    return std::log(static_cast<double>(n - size_A)) / std::log(static_cast<double>(n));
}

std::optional<double> measured_beta(std::uint64_t n, std::uint64_t num_colors) {
    if (num_colors == 0 || n < 2) return std::nullopt;
    return std::log(static_cast<double>(num_colors)) / std::log(static_cast<double>(n));
}

std::uint64_t Coloring::num_colors() const {
    if (colors.empty()) return 0;
    std::vector<std::uint32_t> sorted(colors);
    std::sort(sorted.begin(), sorted.end());
    return static_cast<std::uint64_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

std::optional<ColorPair> ColoredSet::color(std::uint64_t v) const {
    const auto it = std::lower_bound(members.begin(), members.end(), v);
    if (it == members.end() || *it != v) return std::nullopt;
    return color_of[static_cast<std::size_t>(it - members.begin())];
}

Coloring ColoredSet::dense_coloring() const {
    return Coloring{params, A, members, dense};
}

std::vector<std::vector<std::uint64_t>> partition_by_fclass(const MembershipSet& A, const Params& p) {
    const FClassifier fc(p);
    const auto values = A.values();
    std::vector<std::int64_t> x(static_cast<std::size_t>(p.d));

    std::vector<std::vector<std::uint64_t>> groups;
    if (fc.key_fits_u64()) {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> keyed;
        keyed.reserve(values.size());
        for (auto v : values) {
            phi_inv_into(v, p, x);
            keyed.emplace_back(fc.key(x), v);
        }
        std::sort(keyed.begin(), keyed.end());
        for (std::size_t i = 0; i < keyed.size(); ++i) {
            if (i == 0 || keyed[i].first != keyed[i - 1].first) groups.emplace_back();
            groups.back().push_back(keyed[i].second);
        }
    } else {
        std::vector<std::pair<std::string, std::uint64_t>> keyed;
        keyed.reserve(values.size());
        for (auto v : values) {
            phi_inv_into(v, p, x);
            keyed.emplace_back(fc.key_bytes(x), v);
        }
        std::sort(keyed.begin(), keyed.end());
        for (std::size_t i = 0; i < keyed.size(); ++i) {
            if (i == 0 || keyed[i].first != keyed[i - 1].first) groups.emplace_back();
            groups.back().push_back(keyed[i].second);
        }
    }
    std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return groups;
}

ColoredSet build(const Params& p, const BuildOptions& opts) {
    const auto start = clock_type::now();
    const std::uint64_t bytes = (p.n + 63) / 64 * 8;
    if (bytes > opts.max_bitmap_bytes)
        throw resource_error("membership bitmap for n=" + std::to_string(p.n) + " exceeds the memory budget");
    require_closure(p);

    ColoredSet cs;
    cs.params = p;
    cs.A = build_A(p, {opts.threads, opts.max_bitmap_bytes});
    cs.members = cs.A.values();

    const auto classes = partition_by_fclass(cs.A, p);
    std::vector<ClassGraph> graphs(classes.size());
    std::vector<std::vector<std::uint32_t>> greedy(classes.size());
    parallel_for(classes.size(), opts.threads, [&](std::size_t c) {
        graphs[c] = build_class_graph(classes[c], cs.A, p, opts.prune);
        greedy[c] = greedy_color(graphs[c]);
    });

    cs.color_of.resize(cs.members.size());
    BuildStats& st = cs.stats;
    std::vector<std::uint32_t> palette_size(classes.size(), 0);
    for (std::size_t c = 0; c < classes.size(); ++c) {
        const auto& g = graphs[c];
        for (std::size_t i = 0; i < g.members.size(); ++i) {
            const auto pos = std::lower_bound(cs.members.begin(), cs.members.end(), g.members[i]) - cs.members.begin();
            cs.color_of[static_cast<std::size_t>(pos)] = {static_cast<std::uint32_t>(c), greedy[c][i]};
            palette_size[c] = std::max(palette_size[c], greedy[c][i] + 1);
        }
        st.num_colors += palette_size[c];
        st.max_degree = std::max(st.max_degree, g.max_degree);
        st.conflict_edges += g.edge_count();
        st.pairs_evaluated += g.pairs_evaluated;
        st.max_edge_dist_sq = std::max(st.max_edge_dist_sq, g.max_edge_dist_sq);
        st.radius_violations += g.radius_violations;
    }

    // Dense ids by first occurrence over ascending values.
    std::vector<std::vector<std::uint32_t>> dense_id(classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) dense_id[c].assign(palette_size[c], no_color);
    std::uint32_t next = 0;
    cs.dense.resize(cs.members.size());
    for (std::size_t i = 0; i < cs.members.size(); ++i) {
        auto& slot = dense_id[cs.color_of[i].fclass][cs.color_of[i].greedy];
        if (slot == no_color) slot = next++;
        cs.dense[i] = slot;
    }

    st.size_A = cs.members.size();
    st.num_fclasses = classes.size();
    if (opts.keep_graphs) cs.graphs = std::move(graphs);
    st.build_millis = millis_since(start);
    return cs;
}

std::string to_string(VerifyMode mode) {
    return mode == VerifyMode::exhaustive ? "exhaustive" : "sampled";
}

namespace {

struct LocalReport {
    std::uint64_t aps = 0;
    std::uint64_t violations = 0;
    std::vector<Violation> witnesses;
};

// Records a violation if two members of the progression share a color.
void check_progression(std::uint64_t first, std::uint64_t step, int len, std::span<const std::uint32_t> color,
                       std::size_t cap, LocalReport& out) {
    std::uint32_t seen[32];
    bool clash = false;
    for (int t = 0; t < len && !clash; ++t) {
        seen[t] = color[first + static_cast<std::uint64_t>(t) * step];
        for (int s = 0; s < t; ++s)
            if (seen[s] == seen[t]) {
                clash = true;
                break;
            }
    }
    ++out.aps;
    if (!clash) return;
    ++out.violations;
    if (out.witnesses.size() < cap) {
        Violation v;
        for (int t = 0; t < len; ++t) {
            const auto m = first + static_cast<std::uint64_t>(t) * step;
            v.members.push_back(m);
            v.colors.push_back(color[m]);
        }
        out.witnesses.push_back(std::move(v));
    }
}

} // namespace

VerifyReport verify_rainbow(const MembershipSet& A, std::span<const std::uint32_t> color_by_value, int k,
                            const VerifyOptions& opts) {
    if (k < 3 || k > 32) throw invalid_input("verify_rainbow needs 3 <= k <= 32");
    if (color_by_value.size() != A.n() + 1) throw invalid_input("color table must be indexed by value 0..n");
    const auto start = clock_type::now();
    const std::uint64_t n = A.n();

    VerifyReport report;
    report.mode = opts.mode;

    if (opts.mode == VerifyMode::sampled) {
        report.seed = opts.seed;
        LocalReport local;
        std::mt19937_64 rng(opts.seed);
        for (std::uint64_t s = 0; s < opts.sample_budget; ++s) {
            const int len = std::uniform_int_distribution<int>(3, k)(rng);
            ++report.samples;
            if (n < static_cast<std::uint64_t>(len)) continue;
            const std::uint64_t max_step = (n - 1) / static_cast<std::uint64_t>(len - 1);
            const std::uint64_t step = std::uniform_int_distribution<std::uint64_t>(1, max_step)(rng);
            const std::uint64_t last_start = n - static_cast<std::uint64_t>(len - 1) * step;
            const std::uint64_t first = std::uniform_int_distribution<std::uint64_t>(1, last_start)(rng);
            bool all_in = true;
            for (int t = 0; t < len && all_in; ++t) all_in = A.contains(first + static_cast<std::uint64_t>(t) * step);
            if (all_in) check_progression(first, step, len, color_by_value, opts.violation_cap, local);
        }
        report.aps_checked = local.aps;
        report.violation_count = local.violations;
        report.violations = std::move(local.witnesses);
        report.elapsed_millis = millis_since(start);
        return report;
    }

    // Exhaustive: for each length and step, AND shifted 64-bit membership
    // windows so that each set bit marks a start whose whole progression is in A.
    struct Task {
        int len;
        std::uint64_t step_lo, step_hi;
    };
    std::vector<Task> tasks;
    for (int len = 3; len <= k; ++len) {
        if (n < static_cast<std::uint64_t>(len)) continue;
        const std::uint64_t max_step = (n - 1) / static_cast<std::uint64_t>(len - 1);
        const std::uint64_t block = std::max<std::uint64_t>(1, max_step / 256);
        for (std::uint64_t lo = 1; lo <= max_step; lo += block)
            tasks.push_back({len, lo, std::min(max_step, lo + block - 1)});
    }
    std::vector<LocalReport> locals(tasks.size());
    parallel_for(tasks.size(), opts.threads, [&](std::size_t ti) {
        const Task& task = tasks[ti];
        LocalReport& out = locals[ti];
        for (std::uint64_t step = task.step_lo; step <= task.step_hi; ++step) {
            const std::uint64_t span_len = static_cast<std::uint64_t>(task.len - 1) * step;
            const std::uint64_t last_start = n - span_len;
            for (std::uint64_t base = 1; base <= last_start; base += 64) {
                std::uint64_t w = A.window(base);
                for (int t = 1; t < task.len && w; ++t) w &= A.window(base + static_cast<std::uint64_t>(t) * step);
                if (last_start - base < 63) w &= (std::uint64_t{1} << (last_start - base + 1)) - 1;
                for (; w; w &= w - 1) {
                    const std::uint64_t first = base + static_cast<std::uint64_t>(std::countr_zero(w));
                    check_progression(first, step, task.len, color_by_value, opts.violation_cap, out);
                }
            }
        }
    });
    for (auto& local : locals) {
        report.aps_checked += local.aps;
        report.violation_count += local.violations;
        for (auto& v : local.witnesses) {
            if (report.violations.size() >= opts.violation_cap) break;
            report.violations.push_back(std::move(v));
        }
    }
    report.elapsed_millis = millis_since(start);
    return report;
}

VerifyReport verify_rainbow(const Coloring& c, const VerifyOptions& opts) {
    const std::uint64_t n = c.members.n();
    if (n + 1 > (std::uint64_t{1} << 28))
        throw resource_error("color table for n=" + std::to_string(n) + " exceeds the verifier budget");
    std::vector<std::uint32_t> table(n + 1, no_color);
    for (std::size_t i = 0; i < c.values.size(); ++i) table[c.values[i]] = c.colors[i];
    return verify_rainbow(c.members, table, c.params.k, opts);
}

VerifyReport verify_rainbow(const ColoredSet& cs, const VerifyOptions& opts) {
    return verify_rainbow(cs.dense_coloring(), opts);
}

namespace {

ClassGraph full_conflict_graph(std::uint64_t n) {
    if (n > 5000) throw resource_error("full-[n] conflict graph limited to n <= 5000");
    if (n == 0) throw invalid_input("n must be positive");
    const auto all = MembershipSet::full(n);
    const auto values = all.values();
    return build_conflict_graph(values, all, 3);
}

} // namespace

std::uint64_t full_n_lower_bound(std::uint64_t n) {
    const ClassGraph g = full_conflict_graph(n);
    const std::uint64_t half = (n + 1) / 2;
    // Largest prefix {1..h} that is a clique; for h <= ceil(n/2) the point
    // 2b-a <= n witnesses every pair, so this reaches ceil(n/2).
    std::uint64_t h = 1;
    while (h < half) {
        const auto& nb = g.adjacency[h]; // vertex h+1
        bool joined = true;
        for (std::uint32_t a = 0; a < h && joined; ++a) joined = std::binary_search(nb.begin(), nb.end(), a);
        if (!joined) break;
        ++h;
    }
    return h;
}

std::uint64_t full_n_greedy_colors(std::uint64_t n) {
    const ClassGraph g = full_conflict_graph(n);
    const auto colors = greedy_color(g);
    return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + std::uint64_t{1};
}

} // namespace rainbow
