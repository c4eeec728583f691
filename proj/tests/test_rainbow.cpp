#include "rainbow/auxcolor.hpp"
#include "rainbow/error.hpp"
#include "rainbow/rainbow.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

using namespace rainbow;

namespace {
std::vector<std::uint32_t> table(std::uint64_t n, const std::vector<std::uint64_t>& vals,
                                 const std::vector<std::uint32_t>& cols) {
    std::vector<std::uint32_t> t(n + 1, 0);
    for (std::size_t i = 0; i < vals.size(); ++i) t[vals[i]] = cols[i];
    return t;
}

std::uint64_t oracle_violations(const Coloring& c) {
    const auto t = table(c.params.n, c.values, c.colors);
    return oracle::count_violations(
        c.params.n, c.params.k, [&](std::uint64_t v) { return c.members.contains(v); },
        [&](std::uint64_t v) { return t[v]; });
}
} // namespace

TEST_CASE("micro instance end to end") {
    const auto cs = build(Params::make(3, 2, Rational(3, 10)));
    CHECK(cs.members == std::vector<std::uint64_t>{3, 5, 6, 7, 8});
    CHECK(cs.stats.size_A == 5);
    const auto r = verify_rainbow(cs);
    CHECK(r.ok());
    CHECK(r.aps_checked == 3); // (3,5,7) (5,6,7) (6,7,8)
    CHECK_FALSE(cs.color(4));
    CHECK(cs.color(5));
    const auto dc = cs.dense_coloring();
    CHECK(dc.values == cs.members);
    CHECK(dc.colors.front() == 0);
}

TEST_CASE("verifier hand cases") {
    {
        const std::uint64_t n = 30;
        const auto A = MembershipSet::full(n);
        std::vector<std::uint32_t> col(n + 1);
        for (std::uint64_t v = 0; v <= n; ++v) col[v] = static_cast<std::uint32_t>(v);
        const auto r = verify_rainbow(A, col, 3);
        CHECK(r.ok());
        std::uint64_t expect = 0;
        for (std::uint64_t s = 1; 2 * s < n; ++s) expect += n - 2 * s;
        CHECK(r.aps_checked == expect);
    }
    {
        const std::vector<std::uint64_t> v{1, 2, 3};
        const auto A = MembershipSet::from_values(5, v);
        const std::vector<std::uint32_t> col{0, 7, 8, 7, 0, 0};
        const auto r = verify_rainbow(A, col, 3);
        CHECK(r.violation_count == 1);
        REQUIRE(r.violations.size() == 1);
        CHECK(r.violations[0].members == std::vector<std::uint64_t>{1, 2, 3});
        CHECK(r.violations[0].colors == std::vector<std::uint32_t>{7, 8, 7});
    }
    {
        const std::vector<std::uint64_t> v{1, 2, 4};
        const auto A = MembershipSet::from_values(5, v);
        const std::vector<std::uint32_t> col(6, 0);
        const auto r = verify_rainbow(A, col, 3);
        CHECK(r.ok());
        CHECK(r.aps_checked == 0);
    }
}

TEST_CASE("verifier agrees with the triple loop on random colorings") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 60; ++trial) {
        const std::uint64_t n = 10 + rng() % 300;
        const int k = 3 + static_cast<int>(rng() % 3);
        MembershipSet A(n);
        for (std::uint64_t v = 1; v <= n; ++v)
            if (rng() % 4) A.insert(v);
        std::vector<std::uint32_t> col(n + 1);
        const auto palette = 2 + rng() % 40;
        for (auto& c : col) c = static_cast<std::uint32_t>(rng() % palette);
        const auto expect = oracle::count_violations(
            n, k, [&](std::uint64_t v) { return A.contains(v); }, [&](std::uint64_t v) { return col[v]; });
        const auto all = oracle::progressions(n, k, [&](std::uint64_t v) { return A.contains(v); });
        for (unsigned threads : {1u, 3u}) {
            const auto r = verify_rainbow(A, col, k, {.threads = threads, .violation_cap = 5});
            REQUIRE(r.violation_count == expect);
            REQUIRE(r.aps_checked == all.size());
            REQUIRE(r.violations.size() == std::min<std::uint64_t>(5, expect));
            for (const auto& w : r.violations) {
                std::set<std::uint32_t> distinct(w.colors.begin(), w.colors.end());
                REQUIRE(distinct.size() < w.members.size());
                for (std::size_t t = 0; t < w.members.size(); ++t) REQUIRE(col[w.members[t]] == w.colors[t]);
            }
        }
    }
}

TEST_CASE("sampled verification is reproducible") {
    std::mt19937_64 rng(2);
    const std::uint64_t n = 2000;
    MembershipSet A(n);
    for (std::uint64_t v = 1; v <= n; ++v)
        if (rng() % 2) A.insert(v);
    std::vector<std::uint32_t> col(n + 1);
    for (auto& c : col) c = static_cast<std::uint32_t>(rng() % 50);
    const VerifyOptions o{.mode = VerifyMode::sampled, .sample_budget = 20000};
    const auto a = verify_rainbow(A, col, 3, o);
    const auto b = verify_rainbow(A, col, 3, o);
    CHECK(a.samples == 20000);
    CHECK(a.seed == default_verify_seed);
    CHECK(a.violation_count == b.violation_count);
    CHECK(a.aps_checked == b.aps_checked);
    CHECK(a.violation_count > 0);
    CHECK(to_string(VerifyMode::sampled) == "sampled");
}

TEST_CASE("built colorings are rainbow and respect the product bound") {
    for (auto [C, d, k, num, den] : {std::tuple{10, 3, 3, 1, 20}, {16, 3, 3, 1, 50}, {10, 4, 3, 1, 10},
                                     {12, 3, 4, 1, 20}, {16, 3, 5, 1, 30}, {6, 4, 4, 1, 10}, {5, 5, 3, 1, 4}}) {
        const auto p = Params::make(C, d, Rational(num, den), k);
        CAPTURE(p.describe());
        const auto cs = build(p, {.keep_graphs = true});
        const auto r = verify_rainbow(cs);
        CHECK(r.ok());
        CHECK(oracle_violations(cs.dense_coloring()) == 0);
        CHECK(cs.stats.num_colors <= (std::uint64_t{cs.stats.max_degree} + 1) * cs.stats.num_fclasses);
        std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
        for (const auto& c : cs.color_of) pairs.emplace(c.fclass, c.greedy);
        CHECK(pairs.size() == cs.stats.num_colors);
        CHECK(cs.dense_coloring().num_colors() == cs.stats.num_colors);
        if (cs.stats.max_degree > 0) CHECK(std::log(double(cs.stats.max_degree)) < degree_log_bound(p));
        CHECK(std::log(double(cs.stats.num_colors)) <=
              degree_log_bound(p) + count_f_colors(p) + std::log1p(double(cs.stats.num_colors)));
        CHECK(cs.stats.radius_violations == 0);
        CHECK(cs.graphs.size() == cs.stats.num_fclasses);
    }
}

TEST_CASE("f-class partition is by aux color and ordered by smallest member") {
    const auto p = Params::make(10, 3, Rational(1, 10));
    const auto A = build_A(p);
    const auto parts = partition_by_fclass(A, p);
    std::uint64_t total = 0, prev = 0;
    std::set<AuxColor> labels;
    for (const auto& cls : parts) {
        REQUIRE(!cls.empty());
        REQUIRE(std::is_sorted(cls.begin(), cls.end()));
        REQUIRE(cls.front() > prev);
        prev = cls.front();
        const auto a = aux_color(phi_inv(cls.front(), p), p);
        for (auto v : cls) REQUIRE(aux_color(phi_inv(v, p), p) == a);
        REQUIRE(labels.insert(a).second);
        total += cls.size();
    }
    CHECK(total == A.count());
}

TEST_CASE("builds are deterministic across thread counts") {
    const auto p = Params::make(10, 4, Rational(1, 20));
    const auto a = build(p, {.threads = 1});
    const auto b = build(p, {.threads = 4});
    CHECK(a.color_of == b.color_of);
    CHECK(a.dense == b.dense);
    CHECK(a.dense_coloring() == b.dense_coloring());
    CHECK(build(p, {.prune = false}).dense == a.dense);
}

TEST_CASE("deleting members keeps the coloring rainbow") {
    const auto cs = build(Params::make(10, 4, Rational(1, 20)));
    auto c = cs.dense_coloring();
    std::mt19937_64 rng(9);
    for (int round = 0; round < 5; ++round) {
        Coloring sub = c;
        sub.values.clear();
        sub.colors.clear();
        sub.members = MembershipSet(c.params.n);
        for (std::size_t t = 0; t < c.values.size(); ++t)
            if (rng() % 4) {
                sub.values.push_back(c.values[t]);
                sub.colors.push_back(c.colors[t]);
                sub.members.insert(c.values[t]);
            }
        CHECK(verify_rainbow(sub).ok());
    }
}

TEST_CASE("measured exponents") {
    CHECK_FALSE(measured_alpha(100, 100));
    CHECK(*measured_alpha(100, 90) == doctest::Approx(0.5));
    CHECK_FALSE(measured_beta(100, 0));
    CHECK(*measured_beta(100, 10) == doctest::Approx(0.5));
}

TEST_CASE("full-[n] lower bound") {
    CHECK(full_n_lower_bound(10) == 5);
    CHECK(full_n_lower_bound(2) == 1);
    CHECK(full_n_lower_bound(3) == 2);
    CHECK(full_n_lower_bound(1) == 1);
    for (std::uint64_t n : {2, 3, 4, 7, 10, 33, 100}) {
        CHECK(full_n_greedy_colors(n) >= full_n_lower_bound(n));
        // Independent clique check of {1..ceil(n/2)}.
        const auto pairs = oracle::conflict_pairs(n, 3, [](std::uint64_t) { return true; });
        const auto h = (n + 1) / 2;
        for (std::uint64_t a = 1; a <= h; ++a)
            for (std::uint64_t b = a + 1; b <= h; ++b) REQUIRE(pairs.count({a, b}) == 1);
    }
    CHECK_THROWS_AS(full_n_lower_bound(5001), resource_error);
}

TEST_CASE("build refuses oversized bitmaps") {
    CHECK_THROWS_AS(build(Params::make(10, 6, Rational(1, 20)), {.max_bitmap_bytes = 100}), resource_error);
}
