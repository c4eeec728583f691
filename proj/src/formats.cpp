#include "rainbow/formats.hpp"

#include "rainbow/conflict.hpp"
#include "rainbow/error.hpp"
#include "rainbow/shell.hpp"

#include <charconv>
#include <iomanip>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string_view>

namespace rainbow {

namespace {

// Splits the whole stream into lines, insisting on a trailing newline so a
// file cut mid-line is rejected.
std::vector<std::string> read_lines(std::istream& is, std::string_view what) {
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    if (text.empty()) throw format_error(std::string(what) + ": empty input");
    if (text.back() != '\n') throw format_error(std::string(what) + ": truncated (no trailing newline)");
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        lines.emplace_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

template <class T>
T parse_field(std::string_view s, std::size_t line_no, std::string_view what) {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw format_error(std::string(what) + " line " + std::to_string(line_no) + ": bad number '" + std::string(s) +
                           "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto at = s.find(sep, pos);
        out.push_back(s.substr(pos, at == std::string_view::npos ? std::string_view::npos : at - pos));
        if (at == std::string_view::npos) break;
        pos = at + 1;
    }
    return out;
}

std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

} // namespace

void write_coloring(std::ostream& os, const Coloring& c) {
    os << "#format rainbow-v1\n";
    os << "#params C=" << c.params.C << " d=" << c.params.d << " epsilon=" << c.params.epsilon.str()
       << " k=" << c.params.k << "\n";
    for (std::size_t i = 0; i < c.values.size(); ++i) os << c.values[i] << '\t' << c.colors[i] << '\n';
}

Coloring read_coloring(std::istream& is) {
    constexpr std::string_view what = "coloring";
    const auto lines = read_lines(is, what);
    if (lines.size() < 2 || lines[0] != "#format rainbow-v1")
        throw format_error("coloring: missing '#format rainbow-v1' header");
    if (lines[1].rfind("#params ", 0) != 0) throw format_error("coloring: missing '#params' header");

    std::optional<std::int64_t> C;
    std::optional<int> d, k;
    std::optional<Rational> eps;
    for (auto tok : split(std::string_view(lines[1]).substr(8), ' ')) {
        const auto eq = tok.find('=');
        if (eq == std::string_view::npos) throw format_error("coloring: bad params token '" + std::string(tok) + "'");
        const auto key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "C") C = parse_field<std::int64_t>(val, 2, what);
        else if (key == "d") d = parse_field<int>(val, 2, what);
        else if (key == "k") k = parse_field<int>(val, 2, what);
        else if (key == "epsilon") {
            try {
                eps = parse_rational(val);
            } catch (const invalid_input& e) {
                throw format_error(std::string("coloring: ") + e.what());
            }
        } else throw format_error("coloring: unknown params key '" + std::string(key) + "'");
    }
    if (!C || !d || !k || !eps) throw format_error("coloring: '#params' needs C, d, epsilon and k");

    Coloring c;
    try {
        c.params = Params::make(*C, *d, *eps, *k);
    } catch (const invalid_input& e) {
        throw format_error(std::string("coloring: invalid params: ") + e.what());
    }
    const std::uint64_t n = c.params.n;
    if (n + 1 > (std::uint64_t{1} << 32)) throw resource_error("coloring: ground set too large to load");
    c.members = MembershipSet(n);
    for (std::size_t ln = 2; ln < lines.size(); ++ln) {
        const auto fields = split(lines[ln], '\t');
        if (fields.size() != 2) throw format_error("coloring line " + std::to_string(ln + 1) + ": expected value<TAB>color");
        const auto v = parse_field<std::uint64_t>(fields[0], ln + 1, what);
        const auto col = parse_field<std::uint32_t>(fields[1], ln + 1, what);
        if (v < 1 || v > n)
            throw format_error("coloring line " + std::to_string(ln + 1) + ": value outside [1, " + std::to_string(n) + "]");
        if (!c.values.empty() && v <= c.values.back())
            throw format_error("coloring line " + std::to_string(ln + 1) + ": values must be strictly ascending");
        c.values.push_back(v);
        c.colors.push_back(col);
        c.members.insert(v);
    }
    return c;
}

void write_decomposition(std::ostream& os, const MatchingDecomposition& md) {
    os << "#format matchings-v1\n";
    os << "#m " << md.m() << "\n";
    for (std::size_t c = 0; c < md.class_count(); ++c)
        for (const auto& e : md.class_edges(c)) os << e.i << ' ' << e.x << ' ' << e.j << ' ' << e.y << ' ' << c << '\n';
}

MatchingDecomposition read_decomposition(std::istream& is) {
    constexpr std::string_view what = "decomposition";
    const auto lines = read_lines(is, what);
    if (lines.size() < 2 || lines[0] != "#format matchings-v1")
        throw format_error("decomposition: missing '#format matchings-v1' header");
    if (lines[1].rfind("#m ", 0) != 0) throw format_error("decomposition: missing '#m' header");
    const auto m = parse_field<std::uint32_t>(std::string_view(lines[1]).substr(3), 2, what);
    if (m == 0) throw format_error("decomposition: m must be positive");

    // A on [2m] is recovered from the edge sums; every s in A with s >= 2
    // occurs as x + y between blocks 1 and 2 whenever m >= 2.
    MembershipSet sums(2 * std::uint64_t{m});
    std::vector<MatchingEdge> edges;
    std::vector<std::uint32_t> classes;
    for (std::size_t ln = 2; ln < lines.size(); ++ln) {
        const auto f = split(lines[ln], ' ');
        if (f.size() != 5) throw format_error("decomposition line " + std::to_string(ln + 1) + ": expected 'i x j y class'");
        MatchingEdge e{parse_field<std::uint32_t>(f[0], ln + 1, what), parse_field<std::uint32_t>(f[1], ln + 1, what),
                       parse_field<std::uint32_t>(f[2], ln + 1, what), parse_field<std::uint32_t>(f[3], ln + 1, what)};
        if (e.x < 1 || e.x > m || e.y < 1 || e.y > m || e.i < 1 || e.j > m || e.i >= e.j)
            throw format_error("decomposition line " + std::to_string(ln + 1) + ": vertex outside the block structure");
        edges.push_back(e);
        classes.push_back(parse_field<std::uint32_t>(f[4], ln + 1, what));
        sums.insert(std::uint64_t{e.x} + e.y);
    }
    try {
        return MatchingDecomposition(m, std::move(sums), std::move(edges), classes);
    } catch (const invalid_input& e) {
        throw format_error(std::string("decomposition: ") + e.what());
    }
}

const std::vector<std::string>& stats_columns() {
    static const std::vector<std::string> cols = {
        "C",          "d",           "epsilon",          "k",          "n",              "size_A",
        "shortfall",  "claim1_bound", "num_fclasses",    "max_degree", "claim3_log_bound", "num_colors",
        "measured_alpha", "measured_beta", "verify_mode", "violations", "build_ms",       "verify_ms"};
    return cols;
}

StatsRow make_stats_row(const ColoredSet& cs, const std::optional<VerifyReport>& report, bool record_timings) {
    StatsRow row;
    const Params& p = cs.params;
    row.C = p.C;
    row.d = p.d;
    row.epsilon = p.epsilon;
    row.k = p.k;
    row.n = p.n;
    row.size_A = cs.stats.size_A;
    row.shortfall = p.n - cs.stats.size_A;
    row.shortfall_bound = shortfall_bound(p);
    row.num_fclasses = cs.stats.num_fclasses;
    row.max_degree = cs.stats.max_degree;
    row.degree_log_bound = degree_log_bound(p);
    row.num_colors = cs.stats.num_colors;
    row.measured_alpha = cs.measured_alpha();
    row.measured_beta = cs.measured_beta();
    if (report) {
        row.verify_mode = to_string(report->mode);
        row.violations = report->violation_count;
        if (record_timings) row.verify_ms = report->elapsed_millis;
    }
    if (record_timings) row.build_ms = cs.stats.build_millis;
    return row;
}

nlohmann::ordered_json stats_json(const StatsRow& r) {
    auto opt = [](const auto& o) -> nlohmann::ordered_json {
        if (!o) return nullptr;
        return *o;
    };
    nlohmann::ordered_json j;
    j["C"] = r.C;
    j["d"] = r.d;
    j["epsilon"] = r.epsilon.str();
    j["k"] = r.k;
    j["n"] = r.n;
    j["size_A"] = r.size_A;
    j["shortfall"] = r.shortfall;
    j["claim1_bound"] = r.shortfall_bound;
    j["num_fclasses"] = r.num_fclasses;
    j["max_degree"] = r.max_degree;
    j["claim3_log_bound"] = r.degree_log_bound;
    j["num_colors"] = r.num_colors;
    j["measured_alpha"] = opt(r.measured_alpha);
    j["measured_beta"] = opt(r.measured_beta);
    j["verify_mode"] = r.verify_mode;
    j["violations"] = opt(r.violations);
    j["build_ms"] = opt(r.build_ms);
    j["verify_ms"] = opt(r.verify_ms);
    return j;
}

std::string csv_header() {
    std::string out;
    for (const auto& c : stats_columns()) out += c + ",";
    return out + "status";
}

std::string csv_row(const StatsRow& r) {
    auto opt_d = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    std::ostringstream os;
    os << r.C << ',' << r.d << ',' << r.epsilon.str() << ',' << r.k << ',' << r.n << ',';
    if (r.status == "ok") {
        os << r.size_A << ',' << r.shortfall << ',' << format_double(r.shortfall_bound) << ',' << r.num_fclasses << ','
           << r.max_degree << ',' << format_double(r.degree_log_bound) << ',' << r.num_colors << ','
           << opt_d(r.measured_alpha) << ',' << opt_d(r.measured_beta) << ',' << r.verify_mode << ','
           << (r.violations ? std::to_string(*r.violations) : std::string()) << ',' << opt_d(r.build_ms) << ','
           << opt_d(r.verify_ms) << ',';
    } else {
        os << ",,,,,,,,,,,,,";
    }
    // Status text must not break the CSV.
    std::string status = r.status;
    for (auto& ch : status)
        if (ch == ',' || ch == '\n' || ch == '"') ch = ';';
    os << status;
    return os.str();
}

nlohmann::ordered_json report_json(const VerifyReport& r) {
    nlohmann::ordered_json j;
    j["mode"] = to_string(r.mode);
    j["aps_checked"] = r.aps_checked;
    if (r.mode == VerifyMode::sampled) {
        j["samples"] = r.samples;
        j["seed"] = r.seed;
    }
    j["violation_count"] = r.violation_count;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& v : r.violations) arr.push_back({{"members", v.members}, {"colors", v.colors}});
    j["violations"] = arr;
    j["elapsed_millis"] = r.elapsed_millis;
    return j;
}

nlohmann::ordered_json report_json(const InducedReport& r) {
    nlohmann::ordered_json j;
    j["classes_checked"] = r.classes_checked;
    j["pairs_checked"] = r.pairs_checked;
    j["violation_count"] = r.violation_count;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& v : r.violations)
        arr.push_back({{"class", v.class_index},
                       {"first", {v.first.i, v.first.x, v.first.j, v.first.y}},
                       {"second", {v.second.i, v.second.x, v.second.j, v.second.y}},
                       {"reason", v.reason}});
    j["violations"] = arr;
    return j;
}

} // namespace rainbow
