#include "rainbow/matchings.hpp"

#include "rainbow/error.hpp"
#include "rainbow/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace rainbow {

MatchingDecomposition::MatchingDecomposition(std::uint32_t m, MembershipSet sums, std::vector<MatchingEdge> edges,
                                             std::span<const std::uint32_t> class_of_edge)
    : m_(m), sums_(std::move(sums)) {
    if (class_of_edge.size() != edges.size()) throw invalid_input("one class id per edge required");
    std::size_t classes = 0;
    for (auto c : class_of_edge) classes = std::max<std::size_t>(classes, std::size_t{c} + 1);
    offsets_.assign(classes + 1, 0);
    for (auto c : class_of_edge) ++offsets_[std::size_t{c} + 1];
    for (std::size_t c = 0; c < classes; ++c) {
        if (offsets_[c + 1] == 0) throw invalid_input("class ids must be dense; class " + std::to_string(c) + " is empty");
        offsets_[c + 1] += offsets_[c];
    }
    edges_.resize(edges.size());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t e = 0; e < edges.size(); ++e) edges_[cursor[class_of_edge[e]]++] = edges[e];
}

MatchingDecomposition build_matchings(std::uint32_t m, const Coloring& inner) {
    if (m == 0) throw invalid_input("m must be positive");
    if (inner.members.n() != 2 * std::uint64_t{m})
        throw invalid_input("inner coloring has ground set [" + std::to_string(inner.members.n()) + "], expected [" +
                            std::to_string(2 * std::uint64_t{m}) + "]");
    if (m > 65535) throw resource_error("m too large for the edge list");

    std::vector<std::uint32_t> color(2 * std::size_t{m} + 1, std::numeric_limits<std::uint32_t>::max());
    for (std::size_t t = 0; t < inner.values.size(); ++t) color[inner.values[t]] = inner.colors[t];

    // One block pair's worth of edges: local class = first occurrence of (x - y, c(x + y)).
    struct Local {
        std::uint32_t x, y, cls;
    };
    std::vector<Local> pattern;
    std::map<std::pair<std::int64_t, std::uint32_t>, std::uint32_t> local_id;
    for (std::uint32_t x = 1; x <= m; ++x)
        for (std::uint32_t y = 1; y <= m; ++y) {
            if (!inner.members.contains(std::uint64_t{x} + y)) continue;
            const auto key = std::make_pair(std::int64_t{x} - std::int64_t{y}, color[x + y]);
            const auto [it, inserted] = local_id.try_emplace(key, static_cast<std::uint32_t>(local_id.size()));
            pattern.push_back({x, y, it->second});
        }
    const auto per_pair = static_cast<std::uint32_t>(local_id.size());

    std::vector<MatchingEdge> edges;
    std::vector<std::uint32_t> classes;
    const std::size_t pairs = std::size_t{m} * (m - 1) / 2;
    edges.reserve(pairs * pattern.size());
    classes.reserve(pairs * pattern.size());
    std::uint64_t block_pair = 0;
    for (std::uint32_t i = 1; i <= m; ++i)
        for (std::uint32_t j = i + 1; j <= m; ++j, ++block_pair) {
            const std::uint64_t base = block_pair * per_pair;
            if (base + per_pair > std::numeric_limits<std::uint32_t>::max())
                throw resource_error("class count exceeds 32-bit ids");
            for (const auto& e : pattern) {
                edges.push_back({i, e.x, j, e.y});
                classes.push_back(static_cast<std::uint32_t>(base + e.cls));
            }
        }
    return MatchingDecomposition(m, inner.members, std::move(edges), classes);
}

MatchingDecomposition build_matchings(std::uint32_t m, const Params& inner, const BuildOptions& opts) {
    if (inner.n != 2 * std::uint64_t{m})
        throw invalid_input("inner configuration has n=" + std::to_string(inner.n) + ", expected 2m=" +
                            std::to_string(2 * std::uint64_t{m}));
    return build_matchings(m, build(inner, opts).dense_coloring());
}

InducedReport verify_induced(const MatchingDecomposition& md, unsigned threads, std::size_t cap) {
    struct Local {
        std::uint64_t classes = 0, pairs = 0, violations = 0;
        std::vector<InducedViolation> witnesses;
        void add(std::size_t c, const MatchingEdge& a, const MatchingEdge& b, const char* why, std::size_t cap) {
            ++violations;
            if (witnesses.size() < cap) witnesses.push_back({c, a, b, why});
        }
    };

    const std::size_t classes = md.class_count();
    const std::size_t chunk = 4096;
    const std::size_t tasks = (classes + chunk - 1) / chunk;
    std::vector<Local> locals(tasks);
    const std::uint32_t m = md.m();

    parallel_for(tasks, threads, [&](std::size_t t) {
        Local& out = locals[t];
        for (std::size_t c = t * chunk; c < std::min(classes, (t + 1) * chunk); ++c) {
            const auto edges = md.class_edges(c);
            ++out.classes;
            for (std::size_t a = 0; a < edges.size(); ++a) {
                const auto& e = edges[a];
                if (e.i >= e.j || e.i < 1 || e.j > m || e.x < 1 || e.x > m || e.y < 1 || e.y > m)
                    out.add(c, e, e, "edge outside the block structure", cap);
                else if (!md.has_edge(e.x, e.y))
                    out.add(c, e, e, "x + y not in A", cap);
                for (std::size_t b = a + 1; b < edges.size(); ++b) {
                    const auto& f = edges[b];
                    ++out.pairs;
                    if (e.i != f.i || e.j != f.j) {
                        out.add(c, e, f, "edges join different block pairs", cap);
                        continue;
                    }
                    if (e.x == f.x || e.y == f.y) out.add(c, e, f, "edges share a vertex", cap);
                    else if (md.has_edge(e.x, f.y)) out.add(c, e, f, "cross edge (x, v) present", cap);
                    else if (md.has_edge(f.x, e.y)) out.add(c, e, f, "cross edge (u, y) present", cap);
                }
            }
        }
    });

    InducedReport report;
    for (auto& l : locals) {
        report.classes_checked += l.classes;
        report.pairs_checked += l.pairs;
        report.violation_count += l.violations;
        for (auto& w : l.witnesses)
            if (report.violations.size() < cap) report.violations.push_back(std::move(w));
    }

    // Partition: an edge listed in two classes (or twice in one).
    std::vector<std::pair<MatchingEdge, std::size_t>> all;
    all.reserve(md.edge_count());
    for (std::size_t c = 0; c < classes; ++c)
        for (const auto& e : md.class_edges(c)) all.emplace_back(e, c);
    std::sort(all.begin(), all.end());
    for (std::size_t t = 1; t < all.size(); ++t) {
        if (all[t].first != all[t - 1].first) continue;
        ++report.violation_count;
        if (report.violations.size() < cap)
            report.violations.push_back({all[t].second, all[t].first, all[t - 1].first, "edge listed more than once"});
    }
    return report;
}

std::int64_t edge_count_bound(std::int64_t m, std::int64_t missing) {
    return m * (m - 1) / 2 * (m * m - m * missing);
}

std::uint64_t class_count_bound(std::uint64_t m, std::uint64_t inner_colors) {
    return m * (m - 1) / 2 * (2 * m - 1) * inner_colors;
}

double class_count_bound_loose(std::uint64_t m, double beta) {
    const double n = static_cast<double>(m) * static_cast<double>(m);
    return 4.0 * std::pow(n, 1.5 + beta / 2.0);
}

} // namespace rainbow
