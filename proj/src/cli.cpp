// Command-line front end: build, verify, sweep, matchings, lowerbound.
//
//   rainbowap build --C 10 --d 3 --epsilon 1/20 --k 3 --out-dir out/
//   rainbowap verify --coloring out/coloring.tsv
//   rainbowap sweep --C 8,10 --d 2,3 --epsilon 1/20,1/10 --out sweep.csv
//   rainbowap matchings --m 32 --epsilon 1/10 --out matchings.txt
//   rainbowap lowerbound --n 100

#include "rainbow/cli.hpp"

#include "rainbow/auxcolor.hpp"
#include "rainbow/error.hpp"
#include "rainbow/formats.hpp"
#include "rainbow/matchings.hpp"
#include "rainbow/rainbow.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace rainbow::cli {

namespace {

namespace fs = std::filesystem;

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) out.push_back(item);
    return out;
}

template <class T>
T parse_number(const std::string& s, const char* what) {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw invalid_input(std::string("cannot parse ") + what + " '" + s + "'");
    return v;
}

std::int64_t integer_root(std::uint64_t n, int d) {
    const auto guess = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / d)));
    for (std::int64_t c = std::max<std::int64_t>(1, guess - 1); c <= guess + 1; ++c)
        if (checked_power(c, d) == n) return c;
    return 0;
}

std::string nearby_powers(std::uint64_t n) {
    std::ostringstream os;
    for (int d = 2; d <= 6; ++d) {
        const auto root = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(n), 1.0 / d)));
        for (std::int64_t c = std::max<std::int64_t>(2, root); c <= root + 1; ++c)
            if (auto v = checked_power(c, d)) os << "  C=" << c << " d=" << d << " (n=" << v << ")\n";
    }
    return os.str();
}

// Resolves (C, d) from either --C/--d or --n [--d]. d < 0 means not given.
std::pair<std::int64_t, int> resolve_grid(std::int64_t C, int d, std::uint64_t n, int k) {
    if (n == 0) {
        if (C == 0 || d < 0) throw invalid_input("give --C and --d, or --n");
        return {C, d};
    }
    if (C != 0) throw invalid_input("--n and --C are mutually exclusive");
    if (d == 0) throw invalid_input("d must be at least 1");
    if (d > 0) {
        if (const auto c = integer_root(n, d)) return {c, d};
        throw invalid_input("n=" + std::to_string(n) + " is not a " + std::to_string(d) + "-th power; nearby choices:\n" +
                            nearby_powers(n));
    }
    const std::int64_t min_side = k == 3 ? 2 : 2 * (k - 1);
    for (int dd = 48; dd >= 2; --dd)
        if (const auto c = integer_root(n, dd); c >= min_side) return {c, dd};
    throw invalid_input("n=" + std::to_string(n) + " is not of the form C^d with d >= 2; nearby choices:\n" +
                        nearby_powers(n) + "(pass --d 1 to use the one-dimensional grid)");
}

Rational resolve_epsilon(const std::string& text, std::int64_t C) {
    return text.empty() ? Params::default_epsilon(C) : parse_rational(text);
}

std::optional<VerifyOptions> verify_choice(const std::string& mode, std::uint64_t n, std::uint64_t samples,
                                           std::uint64_t seed, unsigned threads) {
    VerifyOptions v;
    v.sample_budget = samples;
    v.seed = seed;
    v.threads = threads;
    if (mode == "none") return std::nullopt;
    if (mode == "exhaustive") v.mode = VerifyMode::exhaustive;
    else if (mode == "sampled") v.mode = VerifyMode::sampled;
    else if (mode == "auto") v.mode = n <= 250'000 ? VerifyMode::exhaustive : VerifyMode::sampled;
    else throw invalid_input("unknown verify mode '" + mode + "'");
    return v;
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw invalid_input("cannot open '" + path.string() + "' for writing");
    f << content;
    if (!f) throw invalid_input("failed writing '" + path.string() + "'");
}

std::ifstream open_input(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw format_error("cannot open '" + path + "'");
    return f;
}

void print_violations(std::ostream& out, const VerifyReport& r) {
    for (const auto& v : r.violations) {
        out << "violation:";
        for (std::size_t t = 0; t < v.members.size(); ++t) out << ' ' << v.members[t] << "(color " << v.colors[t] << ")";
        out << '\n';
    }
}

struct BuildArgs {
    std::int64_t C = 0;
    int d = -1;
    std::uint64_t n = 0;
    std::string epsilon;
    int k = 3;
    std::string out_dir = ".";
    std::string coloring_path, stats_path;
    bool no_prune = false;
    std::string verify = "auto";
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = default_verify_seed;
    unsigned threads = 0;
    bool record_timings = false;
    std::uint64_t max_memory_mb = 1024;
};

int cmd_build(const BuildArgs& a, std::ostream& out, std::ostream& err) {
    const auto [C, d] = resolve_grid(a.C, a.d, a.n, a.k);
    const Params p = Params::make(C, d, resolve_epsilon(a.epsilon, C), a.k);

    BuildOptions bo;
    bo.prune = !a.no_prune;
    bo.threads = a.threads;
    bo.max_bitmap_bytes = a.max_memory_mb << 20;
    const ColoredSet cs = build(p, bo);

    std::optional<VerifyReport> report;
    if (auto vo = verify_choice(a.verify, p.n, a.samples, a.seed, a.threads)) report = verify_rainbow(cs, *vo);

    const fs::path dir(a.out_dir);
    const fs::path coloring = a.coloring_path.empty() ? dir / "coloring.tsv" : fs::path(a.coloring_path);
    const fs::path stats = a.stats_path.empty() ? dir / "stats.json" : fs::path(a.stats_path);

    std::ostringstream cbuf;
    write_coloring(cbuf, cs.dense_coloring());
    write_file(coloring, cbuf.str());
    write_file(stats, stats_json(make_stats_row(cs, report, a.record_timings)).dump(2) + "\n");

    out << "built " << p.describe() << ": n=" << p.n << " |A|=" << cs.stats.size_A
        << " colors=" << cs.stats.num_colors << " f-classes=" << cs.stats.num_fclasses
        << " max_degree=" << cs.stats.max_degree << "\n";
    out << "wrote " << coloring.string() << " and " << stats.string() << "\n";
    if (report) {
        out << to_string(report->mode) << " verification: " << report->aps_checked << " progressions, "
            << report->violation_count << " violations\n";
        if (!report->ok()) {
            print_violations(err, *report);
            return verification_failed;
        }
    }
    return ok;
}

struct VerifyArgs {
    std::string coloring, matchings, mode = "exhaustive", report;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = default_verify_seed;
    unsigned threads = 0;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream&) {
    if (a.coloring.empty() == a.matchings.empty())
        throw invalid_input("give exactly one of --coloring or --matchings");

    if (!a.coloring.empty()) {
        auto in = open_input(a.coloring);
        const Coloring c = read_coloring(in);
        const auto vo = verify_choice(a.mode, c.params.n, a.samples, a.seed, a.threads);
        if (!vo) throw invalid_input("verify needs a mode other than 'none'");
        const VerifyReport r = verify_rainbow(c, *vo);
        if (!a.report.empty()) write_file(a.report, report_json(r).dump(2) + "\n");
        out << to_string(r.mode) << " verification of " << a.coloring << ": " << r.aps_checked << " progressions, "
            << r.violation_count << " violations\n";
        print_violations(out, r);
        return r.ok() ? ok : verification_failed;
    }

    auto in = open_input(a.matchings);
    const MatchingDecomposition md = read_decomposition(in);
    const InducedReport r = verify_induced(md, a.threads);
    if (!a.report.empty()) write_file(a.report, report_json(r).dump(2) + "\n");
    out << "induced-matching verification of " << a.matchings << ": " << r.classes_checked << " classes, "
        << md.edge_count() << " edges, " << r.violation_count << " violations\n";
    for (const auto& v : r.violations)
        out << "violation: class " << v.class_index << " edges (" << v.first.i << ':' << v.first.x << ", " << v.first.j
            << ':' << v.first.y << ") and (" << v.second.i << ':' << v.second.x << ", " << v.second.j << ':'
            << v.second.y << "): " << v.reason << '\n';
    return r.ok() ? ok : verification_failed;
}

struct SweepArgs {
    std::string C, d, epsilon, k = "3";
    std::string verify = "auto";
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = default_verify_seed;
    unsigned threads = 0;
    std::string out;
    bool no_timings = false;
    bool no_prune = false;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
    const auto Cs = split_list(a.C), ds = split_list(a.d), epss = split_list(a.epsilon), ks = split_list(a.k);
    if (Cs.empty() || ds.empty() || ks.empty()) throw invalid_input("sweep needs --C, --d and --k lists");

    std::ostringstream csv;
    csv << csv_header() << '\n';
    bool any_violation = false;
    std::size_t rows = 0;
    for (const auto& Cstr : Cs)
        for (const auto& dstr : ds)
            for (const auto& estr : (epss.empty() ? std::vector<std::string>{""} : epss))
                for (const auto& kstr : ks) {
                    StatsRow row;
                    try {
                        row.C = parse_number<std::int64_t>(Cstr, "C");
                        row.d = parse_number<int>(dstr, "d");
                        row.k = parse_number<int>(kstr, "k");
                        row.epsilon = resolve_epsilon(estr, row.C);
                        row.n = checked_power(row.C, row.d);
                        const Params p = Params::make(row.C, row.d, row.epsilon, row.k);
                        BuildOptions bo;
                        bo.prune = !a.no_prune;
                        bo.threads = a.threads;
                        const ColoredSet cs = build(p, bo);
                        std::optional<VerifyReport> report;
                        if (auto vo = verify_choice(a.verify, p.n, a.samples, a.seed, a.threads))
                            report = verify_rainbow(cs, *vo);
                        row = make_stats_row(cs, report, !a.no_timings);
                        if (row.violations && *row.violations > 0) any_violation = true;
                    } catch (const std::exception& e) {
                        row.status = std::string("error: ") + e.what();
                        err << "sweep row C=" << Cstr << " d=" << dstr << " epsilon=" << estr << " k=" << kstr
                            << ": " << e.what() << '\n';
                    }
                    csv << csv_row(row) << '\n';
                    ++rows;
                }

    if (a.out.empty()) out << csv.str();
    else {
        write_file(a.out, csv.str());
        out << "wrote " << rows << " rows to " << a.out << '\n';
    }
    return any_violation ? verification_failed : ok;
}

struct MatchingsArgs {
    std::uint32_t m = 0;
    std::int64_t C = 0;
    int d = 0;
    std::string epsilon = "1/10";
    int k = 3;
    std::string coloring;
    std::string out = "matchings.txt";
    std::string stats;
    bool no_verify = false;
    unsigned threads = 0;
};

int cmd_matchings(const MatchingsArgs& a, std::ostream& out, std::ostream& err) {
    if (a.m == 0) throw invalid_input("--m must be positive");
    Coloring inner;
    if (!a.coloring.empty()) {
        auto in = open_input(a.coloring);
        inner = read_coloring(in);
    } else {
        const std::uint64_t ground = 2 * std::uint64_t{a.m};
        std::int64_t C = a.C;
        int d = a.d;
        if (C == 0 && d == 0) {
            // Prefer a genuine grid (d >= 2); every ground set is C^1 otherwise.
            std::tie(C, d) = std::pair<std::int64_t, int>{static_cast<std::int64_t>(ground), 1};
            for (int dd = 2; dd <= 48; ++dd)
                if (const auto c = integer_root(ground, dd); c >= (a.k == 3 ? 2 : 2 * (a.k - 1))) {
                    C = c;
                    d = dd;
                    break;
                }
        } else if (C == 0 || d == 0) {
            throw invalid_input("give both --C and --d for the inner construction, or neither");
        }
        if (checked_power(C, d) != ground)
            throw invalid_input("inner ground set C^d = " + std::to_string(checked_power(C, d)) + " must equal 2m = " +
                                std::to_string(ground) + "; nearby choices:\n" + nearby_powers(ground));
        BuildOptions bo;
        bo.threads = a.threads;
        inner = build(Params::make(C, d, parse_rational(a.epsilon), a.k), bo).dense_coloring();
    }

    const MatchingDecomposition md = build_matchings(a.m, inner);
    std::ostringstream buf;
    write_decomposition(buf, md);
    write_file(a.out, buf.str());

    const std::uint64_t missing = 2 * std::uint64_t{a.m} - inner.members.count();
    const std::uint64_t inner_colors = inner.num_colors();
    nlohmann::ordered_json s;
    s["m"] = a.m;
    s["n"] = std::uint64_t{a.m} * a.m;
    s["inner"] = inner.params.describe();
    s["inner_size_A"] = inner.members.count();
    s["missing"] = missing;
    s["inner_colors"] = inner_colors;
    s["edges"] = md.edge_count();
    s["edge_count_bound"] = edge_count_bound(a.m, static_cast<std::int64_t>(missing));
    s["classes"] = md.class_count();
    s["class_count_bound"] = class_count_bound(a.m, inner_colors);
    if (auto beta = measured_beta(inner.params.n, inner_colors)) s["class_count_bound_loose"] = class_count_bound_loose(a.m, *beta);
    int code = ok;
    if (!a.no_verify) {
        const InducedReport r = verify_induced(md, a.threads);
        s["violations"] = r.violation_count;
        if (!r.ok()) {
            code = verification_failed;
            for (const auto& v : r.violations) err << "violation in class " << v.class_index << ": " << v.reason << '\n';
        }
    }
    if (!a.stats.empty()) write_file(a.stats, s.dump(2) + "\n");
    out << s.dump(2) << '\n';
    return code;
}

int cmd_lowerbound(std::uint64_t n, std::ostream& out) {
    nlohmann::ordered_json s;
    s["n"] = n;
    s["half"] = (n + 1) / 2;
    s["clique_lower_bound"] = full_n_lower_bound(n);
    s["greedy_colors"] = full_n_greedy_colors(n);
    out << s.dump(2) << '\n';
    return ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rainbow arithmetic-progression colorings and induced-matching decompositions", "rainbowap"};
    app.require_subcommand(1);

    BuildArgs ba;
    auto* build_cmd = app.add_subcommand("build", "Construct A and its rainbow coloring; write coloring and stats");
    build_cmd->add_option("--C", ba.C, "Grid side");
    build_cmd->add_option("--d", ba.d, "Grid dimension");
    build_cmd->add_option("--n", ba.n, "Ground set size (must be C^d)");
    build_cmd->add_option("--epsilon", ba.epsilon, "Shell half-width, p/q or decimal (default 1/C^3)");
    build_cmd->add_option("--k", ba.k, "Longest progression that must be rainbow")->capture_default_str();
    build_cmd->add_option("--out-dir", ba.out_dir, "Directory for coloring.tsv and stats.json")->capture_default_str();
    build_cmd->add_option("--coloring", ba.coloring_path, "Coloring output path");
    build_cmd->add_option("--stats", ba.stats_path, "Stats output path");
    build_cmd->add_flag("--no-prune", ba.no_prune, "Evaluate every same-class pair");
    build_cmd->add_option("--verify", ba.verify, "auto|none|exhaustive|sampled")->capture_default_str();
    build_cmd->add_option("--samples", ba.samples, "Sample budget for sampled verification")->capture_default_str();
    build_cmd->add_option("--seed", ba.seed, "Seed for sampled verification")->capture_default_str();
    build_cmd->add_option("--threads", ba.threads, "Worker threads (0 = all cores)");
    build_cmd->add_flag("--record-timings", ba.record_timings, "Write build_ms/verify_ms into stats");
    build_cmd->add_option("--max-memory-mb", ba.max_memory_mb, "Bitmap memory budget")->capture_default_str();

    VerifyArgs va;
    auto* verify_cmd = app.add_subcommand("verify", "Verify a coloring or a matching decomposition file");
    verify_cmd->add_option("--coloring", va.coloring, "rainbow-v1 coloring file");
    verify_cmd->add_option("--matchings", va.matchings, "matchings-v1 decomposition file");
    verify_cmd->add_option("--mode", va.mode, "exhaustive|sampled")->capture_default_str();
    verify_cmd->add_option("--samples", va.samples, "Sample budget")->capture_default_str();
    verify_cmd->add_option("--seed", va.seed, "Sampling seed")->capture_default_str();
    verify_cmd->add_option("--threads", va.threads, "Worker threads (0 = all cores)");
    verify_cmd->add_option("--report", va.report, "Write a JSON report here");

    SweepArgs sa;
    auto* sweep_cmd = app.add_subcommand("sweep", "Build and verify a grid of configurations; emit CSV");
    sweep_cmd->add_option("--C", sa.C, "Comma-separated grid sides")->required();
    sweep_cmd->add_option("--d", sa.d, "Comma-separated dimensions")->required();
    sweep_cmd->add_option("--epsilon", sa.epsilon, "Comma-separated epsilons (default 1/C^3)");
    sweep_cmd->add_option("--k", sa.k, "Comma-separated k values")->capture_default_str();
    sweep_cmd->add_option("--verify", sa.verify, "auto|none|exhaustive|sampled")->capture_default_str();
    sweep_cmd->add_option("--samples", sa.samples, "Sample budget")->capture_default_str();
    sweep_cmd->add_option("--seed", sa.seed, "Sampling seed")->capture_default_str();
    sweep_cmd->add_option("--threads", sa.threads, "Worker threads (0 = all cores)");
    sweep_cmd->add_option("--out", sa.out, "CSV path (default stdout)");
    sweep_cmd->add_flag("--no-timings", sa.no_timings, "Leave build_ms/verify_ms empty");
    sweep_cmd->add_flag("--no-prune", sa.no_prune, "Evaluate every same-class pair");

    MatchingsArgs ma;
    auto* match_cmd = app.add_subcommand("matchings", "Build the induced-matching decomposition on m^2 vertices");
    match_cmd->add_option("--m", ma.m, "Block count and block size")->required();
    match_cmd->add_option("--C", ma.C, "Inner grid side (C^d = 2m)");
    match_cmd->add_option("--d", ma.d, "Inner grid dimension");
    match_cmd->add_option("--epsilon", ma.epsilon, "Inner shell half-width")->capture_default_str();
    match_cmd->add_option("--k", ma.k, "Inner progression length")->capture_default_str();
    match_cmd->add_option("--coloring", ma.coloring, "Use this rainbow-v1 coloring on [2m] instead of building one");
    match_cmd->add_option("--out", ma.out, "Decomposition output path")->capture_default_str();
    match_cmd->add_option("--stats", ma.stats, "Write the JSON summary here too");
    match_cmd->add_flag("--no-verify", ma.no_verify, "Skip the induced-matching check");
    match_cmd->add_option("--threads", ma.threads, "Worker threads (0 = all cores)");

    std::uint64_t lb_n = 0;
    auto* lb_cmd = app.add_subcommand("lowerbound", "Clique certificate for coloring all of [n]");
    lb_cmd->add_option("--n", lb_n, "Ground set size (<= 5000)")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return usage_error;
    }

    try {
        if (build_cmd->parsed()) return cmd_build(ba, out, err);
        if (verify_cmd->parsed()) return cmd_verify(va, out, err);
        if (sweep_cmd->parsed()) return cmd_sweep(sa, out, err);
        if (match_cmd->parsed()) return cmd_matchings(ma, out, err);
        if (lb_cmd->parsed()) return cmd_lowerbound(lb_n, out);
    } catch (const invalid_input& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const format_error& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const resource_error& e) {
        err << "refused: " << e.what() << '\n';
        return refused;
    } catch (const closure_refusal& e) {
        err << "refused: " << e.what() << '\n';
        return refused;
    }
    return usage_error;
}

} // namespace rainbow::cli
