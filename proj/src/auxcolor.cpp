#include "rainbow/auxcolor.hpp"

#include "rainbow/error.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace rainbow {

using boost::multiprecision::cpp_int;

namespace {

std::vector<std::int64_t> window_thresholds(std::int64_t C, std::int64_t num, std::int64_t den) {
    // ceil((num/den)^{j-1}) for j = 1, 2, ... until it passes C.
    std::vector<std::int64_t> out;
    cpp_int pn = 1, pd = 1;
    while (true) {
        cpp_int t = pn / pd;
        if (t * pd < pn) t += 1;
        if (t > cpp_int(C)) break;
        // Equal consecutive ceilings are kept: they denote an empty window.
        out.push_back(static_cast<std::int64_t>(t));
        pn *= num;
        pd *= den;
    }
    return out;
}

} // namespace

FClassifier::FClassifier(const Params& p) : FClassifier(p, p.k == 3 ? Variant::ratio_two : Variant::ratio_k) {}

FClassifier::FClassifier(const Params& p, Variant variant) : C_(p.C), d_(p.d) {
    if (variant == Variant::ratio_two) {
        parity_modulus_ = 2;
        thresholds_ = window_thresholds(C_, 2, 1);
    } else {
        parity_modulus_ = static_cast<std::int64_t>(factorial(p.k));
        thresholds_ = window_thresholds(C_, p.k, p.k - 1);
    }
    max_bucket_ = window_index(C_ / 2);

    parity_radix_ = static_cast<std::uint64_t>(std::min(parity_modulus_, C_));
    bucket_radix_ = static_cast<std::uint64_t>(2 * max_bucket_);
    unsigned __int128 span = 1;
    key_fits_ = true;
    for (int i = 0; i < d_ && key_fits_; ++i) {
        span *= parity_radix_;
        if (span > UINT64_MAX) key_fits_ = false;
    }
    for (int i = 0; i < d_ && key_fits_; ++i) {
        span *= bucket_radix_;
        // span is the count of distinct keys; the largest key is span - 1.
        if (span - 1 > UINT64_MAX) key_fits_ = false;
    }
}

int FClassifier::window_index(std::int64_t v) const {
    return static_cast<int>(std::upper_bound(thresholds_.begin(), thresholds_.end(), v + 1) - thresholds_.begin());
}

std::int64_t FClassifier::bucket(std::int64_t x) const {
    if (2 * x <= C_) return window_index(x);
    return -window_index(C_ - 1 - x);
}

AuxColor FClassifier::color(std::span<const std::int64_t> x) const {
    AuxColor c;
    c.parities.reserve(x.size());
    c.buckets.reserve(x.size());
    for (auto xi : x) {
        c.parities.push_back(parity(xi));
        c.buckets.push_back(bucket(xi));
    }
    return c;
}

std::int64_t FClassifier::bucket_digit(std::int64_t b) const {
    return b > 0 ? b - 1 : max_bucket_ + (-b) - 1;
}

std::uint64_t FClassifier::key(std::span<const std::int64_t> x) const {
    if (!key_fits_)
        throw encoding_error("packed f-class key exceeds 64 bits for C=" + std::to_string(C_) +
                             " d=" + std::to_string(d_));
    std::uint64_t key = 0;
    for (std::size_t i = x.size(); i-- > 0;) key = key * bucket_radix_ + static_cast<std::uint64_t>(bucket_digit(bucket(x[i])));
    for (std::size_t i = x.size(); i-- > 0;) key = key * parity_radix_ + static_cast<std::uint64_t>(parity(x[i]));
    return key;
}

std::string FClassifier::key_bytes(std::span<const std::int64_t> x) const {
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(parity(x[i]));
    }
    out += '|';
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(bucket(x[i]));
    }
    return out;
}

AuxColor f3(const GridPoint& x, const Params& p) {
    return FClassifier(p, FClassifier::Variant::ratio_two).color(x.coords);
}

AuxColor fk(const GridPoint& x, const Params& p) {
    return FClassifier(p, FClassifier::Variant::ratio_k).color(x.coords);
}

AuxColor aux_color(const GridPoint& x, const Params& p) {
    return FClassifier(p).color(x.coords);
}

std::uint64_t fclass_key(const GridPoint& x, const Params& p) {
    return FClassifier(p).key(x.coords);
}

std::string fclass_key_bytes(const GridPoint& x, const Params& p) {
    return FClassifier(p).key_bytes(x.coords);
}

double count_f_colors(const Params& p) {
    const double C = static_cast<double>(p.C);
    if (p.k == 3) return p.d * std::log(2.0 * 2.0 * std::log2(C));
    const double ratio = static_cast<double>(p.k) / static_cast<double>(p.k - 1);
    const double windows = std::ceil(std::log(C) / std::log(ratio));
    return p.d * std::log(static_cast<double>(factorial(p.k)) * 2.0 * windows);
}

std::vector<Coefficient> required_coefficients(int k) {
    std::set<Coefficient> found;
    for (int len = 3; len <= k; ++len)
        for (int i = 0; i < len; ++i)
            for (int j = i + 1; j < len; ++j)
                for (int t = 0; t < len; ++t) {
                    if (t == i || t == j) continue;
                    std::int64_t pn = j - t, q = j - i;
                    const auto g = std::gcd(pn, q);
                    found.insert({pn / g, q / g});
                }
    return {found.begin(), found.end()};
}

std::string ClosureViolation::describe() const {
    std::ostringstream os;
    os << "coordinates " << u << " and " << v << " share an f-label but (" << coefficient.p_num << "*" << u << " + "
       << (coefficient.q_den - coefficient.p_num) << "*" << v << ")/" << coefficient.q_den << " leaves the grid";
    return os.str();
}

std::optional<ClosureViolation> find_closure_violation(const Params& p) {
    const FClassifier fc(p);
    const auto coefficients = required_coefficients(p.k);
    const std::int64_t C = p.C;
    const std::int64_t P = fc.parity_modulus();

    auto check_pair = [&](std::int64_t u, std::int64_t v) -> std::optional<ClosureViolation> {
        for (const auto& c : coefficients) {
            const __int128 s = static_cast<__int128>(c.p_num) * u + static_cast<__int128>(c.q_den - c.p_num) * v;
            if (s % c.q_den != 0 || s / c.q_den < 0 || s / c.q_den >= C) return ClosureViolation{u, v, c};
        }
        return std::nullopt;
    };

    // Each label is a (window, residue) cell; x ranges over [lo, hi] on its side.
    auto scan = [&](std::int64_t lo, std::int64_t hi) -> std::optional<ClosureViolation> {
        if (hi - lo + 1 <= 1) return std::nullopt;
        const std::int64_t residues = std::min<std::int64_t>(P, hi - lo + 1);
        for (std::int64_t off = 0; off < residues; ++off) {
            const std::int64_t first = lo + off;
            const std::int64_t last = first + (hi - first) / P * P;
            if (first == last) continue;
            if (auto v = check_pair(first, last)) return v;
            if (auto v = check_pair(last, first)) return v;
        }
        return std::nullopt;
    };

    const std::int64_t half = C / 2; // low side is 2x <= C
    const std::int64_t vmax = C - 2 - half; // high side: v = C-1-x for x in [half+1, C-1]
    const auto thr = fc.thresholds();
    for (std::size_t j = 0; j < thr.size(); ++j) {
        const std::int64_t vlo = thr[j] - 1;
        const std::int64_t vhi = j + 1 < thr.size() ? thr[j + 1] - 2 : C;
        if (vlo <= half)
            if (auto viol = scan(vlo, std::min(vhi, half))) return viol;
        if (vlo <= vmax)
            if (auto viol = scan(C - 1 - std::min(vhi, vmax), C - 1 - vlo)) return viol;
    }
    return std::nullopt;
}

void require_closure(const Params& p) {
    if (auto v = find_closure_violation(p))
        throw closure_refusal("configuration " + p.describe() + " refused: " + v->describe());
}

} // namespace rainbow
