#include "rainbow/conflict.hpp"

#include "rainbow/error.hpp"
#include "rainbow/grid.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

namespace rainbow {

bool conflict_pair(std::uint64_t a, std::uint64_t b, const MembershipSet& A, int k) {
    const auto n = static_cast<std::int64_t>(A.n());
    const auto sa = static_cast<std::int64_t>(a);
    const auto diff = static_cast<std::int64_t>(b) - sa;
    for (int len = 3; len <= k; ++len) {
        for (int i = 0; i < len; ++i) {
            for (int j = i + 1; j < len; ++j) {
                if (diff % (j - i) != 0) continue;
                const std::int64_t step = diff / (j - i);
                const std::int64_t first = sa - i * step;
                const std::int64_t last = first + (len - 1) * step;
                if (std::min(first, last) < 1 || std::max(first, last) > n) continue;
                bool all_in = true;
                for (int t = 0; t < len && all_in; ++t) {
                    if (t == i || t == j) continue;
                    all_in = A.contains(static_cast<std::uint64_t>(first + t * step));
                }
                if (all_in) return true;
            }
        }
    }
    return false;
}

namespace {

std::int64_t radius_factor(const Params& p) { return p.k == 3 ? 16 : 100; }

} // namespace

double pruning_radius(const Params& p) {
    return std::sqrt(static_cast<double>(radius_factor(p)) * p.epsilon.to_double() * p.r_squared.to_double());
}

std::int64_t pruning_radius_sq_floor(const Params& p) {
    using boost::multiprecision::cpp_int;
    const cpp_int num = cpp_int(radius_factor(p)) * p.epsilon.num * p.r_squared.num;
    const cpp_int den = cpp_int(p.epsilon.den) * p.r_squared.den;
    const cpp_int q = num / den;
    if (q > cpp_int(INT64_MAX)) return INT64_MAX;
    return static_cast<std::int64_t>(q);
}

std::uint64_t ClassGraph::edge_count() const {
    std::uint64_t deg = 0;
    for (const auto& nb : adjacency) deg += nb.size();
    return deg / 2;
}

namespace {

void finish(ClassGraph& g) {
    for (auto& nb : g.adjacency) {
        std::sort(nb.begin(), nb.end());
        g.max_degree = std::max<std::uint32_t>(g.max_degree, static_cast<std::uint32_t>(nb.size()));
    }
}

std::vector<std::uint64_t> sorted_copy(std::span<const std::uint64_t> members) {
    std::vector<std::uint64_t> out(members.begin(), members.end());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

ClassGraph build_class_graph(std::span<const std::uint64_t> members, const MembershipSet& A, const Params& p,
                             bool prune) {
    ClassGraph g;
    g.members = sorted_copy(members);
    const std::size_t m = g.members.size();
    g.adjacency.resize(m);

    const auto d = static_cast<std::size_t>(p.d);
    std::vector<std::int64_t> coords(m * d);
    for (std::size_t i = 0; i < m; ++i)
        phi_inv_into(g.members[i], p, std::span(coords).subspan(i * d, d));
    const std::int64_t limit = pruning_radius_sq_floor(p);

    for (std::size_t i = 0; i < m; ++i) {
        const std::span<const std::int64_t> xi(coords.data() + i * d, d);
        for (std::size_t j = i + 1; j < m; ++j) {
            const std::int64_t dist = squared_distance(xi, std::span<const std::int64_t>(coords.data() + j * d, d));
            if (prune && dist > limit) continue;
            ++g.pairs_evaluated;
            if (!conflict_pair(g.members[i], g.members[j], A, p.k)) continue;
            g.adjacency[i].push_back(static_cast<std::uint32_t>(j));
            g.adjacency[j].push_back(static_cast<std::uint32_t>(i));
            g.max_edge_dist_sq = std::max(g.max_edge_dist_sq, dist);
            if (dist > limit) ++g.radius_violations;
        }
    }
    finish(g);
    return g;
}

ClassGraph build_conflict_graph(std::span<const std::uint64_t> members, const MembershipSet& A, int k) {
    ClassGraph g;
    g.members = sorted_copy(members);
    const std::size_t m = g.members.size();
    g.adjacency.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            ++g.pairs_evaluated;
            if (!conflict_pair(g.members[i], g.members[j], A, k)) continue;
            g.adjacency[i].push_back(static_cast<std::uint32_t>(j));
            g.adjacency[j].push_back(static_cast<std::uint32_t>(i));
        }
    }
    finish(g);
    return g;
}

std::vector<std::uint32_t> greedy_color(const ClassGraph& g) {
    const std::size_t m = g.members.size();
    std::vector<std::uint32_t> color(m, 0);
    // stamp[c] == i + 1 marks color c as taken by a neighbor of vertex i.
    std::vector<std::size_t> stamp(static_cast<std::size_t>(g.max_degree) + 2, 0);
    for (std::size_t i = 0; i < m; ++i) {
        for (auto j : g.adjacency[i])
            if (j < i && color[j] < stamp.size()) stamp[color[j]] = i + 1;
        std::uint32_t c = 0;
        while (stamp[c] == i + 1) ++c;
        color[i] = c;
    }
    return color;
}

double degree_log_bound(const Params& p) {
    const double eps = p.epsilon.to_double();
    const double C = static_cast<double>(p.C);
    return p.d * std::log(2.0) + 16.0 * eps * p.d * C * C * std::log(C);
}

} // namespace rainbow
