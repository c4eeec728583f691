#include "rainbow/error.hpp"
#include "rainbow/shell.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace rainbow;

TEST_CASE("membership set basics") {
    MembershipSet s(130);
    CHECK(s.count() == 0);
    s.insert(1);
    s.insert(64);
    s.insert(65);
    s.insert(130);
    s.insert(65);
    CHECK(s.count() == 4);
    CHECK(s.contains(65));
    CHECK_FALSE(s.contains(0));
    CHECK_FALSE(s.contains(131));
    s.erase(64);
    CHECK(s.values() == std::vector<std::uint64_t>{1, 65, 130});
    CHECK(MembershipSet::full(130).count() == 130);
    const std::vector<std::uint64_t> bad{0};
    CHECK_THROWS_AS(MembershipSet::from_values(10, bad), invalid_input);
    const auto w = MembershipSet::from_words(10, {~std::uint64_t{0}});
    CHECK(w.count() == 10);
    CHECK(w == MembershipSet::full(10));
}

TEST_CASE("membership windows agree with point queries") {
    std::mt19937_64 rng(3);
    for (std::uint64_t n : {1, 63, 64, 65, 200, 1000}) {
        MembershipSet s(n);
        for (std::uint64_t v = 1; v <= n; ++v)
            if (rng() % 3 == 0) s.insert(v);
        for (std::uint64_t v = 1; v <= n + 70; ++v) {
            const auto w = s.window(v);
            for (std::uint64_t t = 0; t < 64; ++t) REQUIRE(((w >> t) & 1u) == (s.contains(v + t) ? 1u : 0u));
        }
    }
}

TEST_CASE("in_shell examples") {
    const auto p = Params::make(10, 3, Rational(1, 20));
    CHECK(in_shell({5, 6, 5}, p));
    CHECK_FALSE(in_shell({5, 5, 5}, p));
    CHECK_FALSE(in_shell({0, 0, 0}, p));
    const auto w = shell_window(p);
    CHECK(w.lo == 78); // ceil(77.16...)
    CHECK(w.hi == 94); // floor(94.26...)
}

TEST_CASE("build_A micro instance") {
    const auto p = Params::make(3, 2, Rational(3, 10));
    const auto A = build_A(p);
    CHECK(A.count() == 5);
    // (1,1) (2,0) (0,2) (2,1) (1,2)
    CHECK(A.values() == std::vector<std::uint64_t>{3, 5, 6, 7, 8});
    CHECK(build_A(Params::make(3, 2, Rational(1, 1000000000))).count() == 0);
    CHECK(static_cast<double>(p.n - A.count()) <= shortfall_bound(p));
    CHECK(shortfall_bound(p) == doctest::Approx(18 * std::exp(-0.01)));
}

TEST_CASE("build_A matches exhaustive enumeration") {
    for (auto [C, d] : {std::pair<std::int64_t, int>{3, 2}, {10, 3}, {16, 3}, {5, 5}, {2, 12}, {31, 2}})
        for (auto eps : {Rational(1, 100), Rational(1, 20), Rational(3, 10), Rational(99, 100)}) {
            const auto p = Params::make(C, d, eps);
            const auto expect = oracle::shell_values(C, d, eps.num, eps.den);
            const auto got = build_A(p).values();
            REQUIRE(std::vector<std::uint64_t>(expect.begin(), expect.end()) == got);
            for (std::uint64_t v = 1; v <= p.n; ++v) REQUIRE(in_shell(phi_inv(v, p), p) == (expect.count(v) == 1));
        }
}

TEST_CASE("build_A is independent of the thread count") {
    const auto p = Params::make(7, 6, Rational(1, 20));
    const auto a = build_A(p, {.threads = 1});
    CHECK(a == build_A(p, {.threads = 4}));
    CHECK(a == build_A(p, {.threads = 3}));
}

TEST_CASE("shell grows with epsilon") {
    const std::vector<Rational> eps{Rational(1, 1000), Rational(1, 100), Rational(1, 20), Rational(1, 10),
                                    Rational(3, 10), Rational(1, 2), Rational(99, 100)};
    for (auto [C, d] : {std::pair<std::int64_t, int>{10, 4}, {4, 6}}) {
        MembershipSet prev(checked_power(C, d));
        for (const auto& e : eps) {
            const auto A = build_A(Params::make(C, d, e));
            for (auto v : prev.values()) REQUIRE(A.contains(v));
            prev = A;
        }
    }
}

TEST_CASE("exact shell agrees with extended precision away from ties") {
    for (auto [C, d] : {std::pair<std::int64_t, int>{10, 3}, {13, 3}, {6, 5}})
        for (auto eps : {Rational(1, 20), Rational(1, 7), Rational(2, 5)}) {
            const auto p = Params::make(C, d, eps);
            const long double r = std::sqrt(static_cast<long double>(p.r_squared.num) / p.r_squared.den);
            const long double e = static_cast<long double>(eps.num) / eps.den;
            for (const auto& xs : oracle::all_points(C, d)) {
                const GridPoint x(xs);
                const long double norm = std::sqrt(static_cast<long double>(squared_norm(x)));
                const long double lo = r * (1 - e), hi = r * (1 + e);
                if (std::fabs(norm - lo) < 1e-12L || std::fabs(norm - hi) < 1e-12L) continue;
                REQUIRE(in_shell(x, p) == (lo <= norm && norm <= hi));
            }
        }
}

TEST_CASE("shortfall bound forms agree and hold") {
    for (auto [C, d] : {std::pair<std::int64_t, int>{10, 3}, {16, 4}, {4, 8}}) {
        const auto p = Params::make(C, d, Rational(1, 20));
        CHECK(shortfall_bound(p) == doctest::Approx(shortfall_bound_power_form(p)).epsilon(1e-9));
        CHECK(static_cast<double>(p.n - build_A(p).count()) <= shortfall_bound(p));
    }
    const auto p1 = Params::make(10, 1, Rational(1, 2));
    CHECK(shortfall_bound(p1) == doctest::Approx(20 * std::exp(-0.25 / 18)));
}

TEST_CASE("bitmap budget is enforced") {
    const auto p = Params::make(10, 6, Rational(1, 20));
    CHECK_THROWS_AS(build_A(p, {.threads = 1, .max_bitmap_bytes = 1000}), resource_error);
}
