#include "rainbow/shell.hpp"

#include "rainbow/error.hpp"
#include "rainbow/parallel.hpp"

#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <string>

namespace rainbow {

using boost::multiprecision::cpp_int;

MembershipSet::MembershipSet(std::uint64_t n) : n_(n), words_((n + 63) / 64, 0) {}

MembershipSet MembershipSet::full(std::uint64_t n) {
    MembershipSet s(n);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    if (n % 64 != 0 && !s.words_.empty()) s.words_.back() = (std::uint64_t{1} << (n % 64)) - 1;
    s.count_ = n;
    return s;
}

MembershipSet MembershipSet::from_values(std::uint64_t n, std::span<const std::uint64_t> values) {
    MembershipSet s(n);
    for (auto v : values) {
        if (v < 1 || v > n)
            throw invalid_input("value " + std::to_string(v) + " outside [1, " + std::to_string(n) + "]");
        s.insert(v);
    }
    return s;
}

MembershipSet MembershipSet::from_words(std::uint64_t n, std::vector<std::uint64_t> words) {
    MembershipSet s;
    s.n_ = n;
    words.resize((n + 63) / 64, 0);
    if (n % 64 != 0 && !words.empty()) words.back() &= (std::uint64_t{1} << (n % 64)) - 1;
    s.words_ = std::move(words);
    for (auto w : s.words_) s.count_ += static_cast<std::uint64_t>(std::popcount(w));
    return s;
}

void MembershipSet::insert(std::uint64_t v) {
    if (v < 1 || v > n_) throw invalid_input("value " + std::to_string(v) + " outside the ground set");
    const auto i = v - 1;
    auto& w = words_[i >> 6];
    const auto bit = std::uint64_t{1} << (i & 63);
    if (!(w & bit)) {
        w |= bit;
        ++count_;
    }
}

void MembershipSet::erase(std::uint64_t v) {
    if (v < 1 || v > n_) return;
    const auto i = v - 1;
    auto& w = words_[i >> 6];
    const auto bit = std::uint64_t{1} << (i & 63);
    if (w & bit) {
        w &= ~bit;
        --count_;
    }
}

std::vector<std::uint64_t> MembershipSet::values() const {
    std::vector<std::uint64_t> out;
    out.reserve(count_);
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
        for (auto w = words_[wi]; w != 0; w &= w - 1)
            out.push_back(wi * 64 + static_cast<std::uint64_t>(std::countr_zero(w)) + 1);
    }
    return out;
}

namespace {

std::int64_t clamp_to_int64(const cpp_int& v) {
    if (v > cpp_int(INT64_MAX)) return INT64_MAX;
    if (v < cpp_int(INT64_MIN)) return INT64_MIN;
    return static_cast<std::int64_t>(v);
}

} // namespace

ShellWindow shell_window(const Params& p) {
    // r^2 (1 -+ eps)^2 = rn (ed -+ en)^2 / (rd ed^2)
    const cpp_int rn = p.r_squared.num, rd = p.r_squared.den;
    const cpp_int en = p.epsilon.num, ed = p.epsilon.den;
    const cpp_int denom = rd * ed * ed;
    const cpp_int lower_num = rn * (ed - en) * (ed - en);
    const cpp_int upper_num = rn * (ed + en) * (ed + en);

    cpp_int lo = lower_num / denom; // non-negative, so truncation is floor
    if (lo * denom < lower_num) lo += 1;
    const cpp_int hi = upper_num / denom;
    return {clamp_to_int64(lo), clamp_to_int64(hi)};
}

bool in_shell(const GridPoint& x, const Params& p) {
    return shell_window(p).contains(squared_norm(x));
}

MembershipSet build_A(const Params& p, const ShellBuildOptions& opts) {
    const std::uint64_t bytes = (p.n + 63) / 64 * 8;
    if (bytes > opts.max_bitmap_bytes)
        throw resource_error("membership bitmap for n=" + std::to_string(p.n) + " needs " + std::to_string(bytes) +
                             " bytes, budget is " + std::to_string(opts.max_bitmap_bytes));

    const ShellWindow win = shell_window(p);
    std::vector<std::uint64_t> words((p.n + 63) / 64, 0);

    // Chunks are whole words so workers never share a word.
    constexpr std::uint64_t chunk_words = 1024;
    const std::uint64_t chunks = (words.size() + chunk_words - 1) / chunk_words;
    parallel_for(chunks, opts.threads, [&](std::size_t c) {
        const std::uint64_t first = c * chunk_words * 64 + 1;
        const std::uint64_t last = std::min<std::uint64_t>(p.n, (c + 1) * chunk_words * 64);
        std::vector<std::int64_t> x(static_cast<std::size_t>(p.d));
        phi_inv_into(first, p, x);
        std::int64_t norm = 0;
        for (auto xi : x) norm += xi * xi;
        // Odometer walk over the grid keeps |x|^2 updated incrementally.
        for (std::uint64_t v = first;; ++v) {
            if (win.contains(norm)) words[(v - 1) >> 6] |= std::uint64_t{1} << ((v - 1) & 63);
            if (v == last) break;
            for (std::size_t i = 0;; ++i) {
                if (x[i] + 1 < p.C) {
                    norm += 2 * x[i] + 1;
                    ++x[i];
                    break;
                }
                norm -= x[i] * x[i];
                x[i] = 0;
            }
        }
    });
    return MembershipSet::from_words(p.n, std::move(words));
}

double shortfall_bound(const Params& p) {
    const double eps = p.epsilon.to_double();
    return 2.0 * static_cast<double>(p.n) * std::exp(-static_cast<double>(p.d) * eps * eps / 18.0);
}

double shortfall_bound_power_form(const Params& p) {
    const double eps = p.epsilon.to_double();
    const double n = static_cast<double>(p.n);
    return 2.0 * std::pow(n, 1.0 - eps * eps / (18.0 * std::log(static_cast<double>(p.C))));
}

} // namespace rainbow
