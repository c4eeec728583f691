#pragma once

// On-disk formats.
//
// Coloring (rainbow-v1):
//   #format rainbow-v1
//   #params C=<C> d=<d> epsilon=<p/q> k=<k>
//   <value>\t<color>        one line per member, values ascending
//
// Decomposition (matchings-v1):
//   #format matchings-v1
//   #m <m>
//   <i> <x> <j> <y> <class>  one line per edge, grouped by class
//
// Stats: one JSON object whose keys are exactly stats_columns(); the sweep
// CSV uses the same columns followed by a status column.

#include "rainbow/matchings.hpp"
#include "rainbow/rainbow.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace rainbow {

void write_coloring(std::ostream& os, const Coloring& c);
// Throws format_error on malformed or truncated input.
Coloring read_coloring(std::istream& is);

void write_decomposition(std::ostream& os, const MatchingDecomposition& md);
MatchingDecomposition read_decomposition(std::istream& is);

struct StatsRow {
    std::int64_t C = 0;
    int d = 0;
    Rational epsilon;
    int k = 3;
    std::uint64_t n = 0;
    std::uint64_t size_A = 0;
    std::uint64_t shortfall = 0;
    double shortfall_bound = 0;
    std::uint64_t num_fclasses = 0;
    std::uint32_t max_degree = 0;
    double degree_log_bound = 0;
    std::uint64_t num_colors = 0;
    std::optional<double> measured_alpha;
    std::optional<double> measured_beta;
    std::string verify_mode = "none";
    std::optional<std::uint64_t> violations;
    std::optional<double> build_ms;
    std::optional<double> verify_ms;
    std::string status = "ok";
};

const std::vector<std::string>& stats_columns();

// Timings are left empty unless record_timings is set, so repeated runs
// produce identical files.
StatsRow make_stats_row(const ColoredSet& cs, const std::optional<VerifyReport>& report, bool record_timings);

nlohmann::ordered_json stats_json(const StatsRow& row);
std::string csv_header();
std::string csv_row(const StatsRow& row);

nlohmann::ordered_json report_json(const VerifyReport& r);
nlohmann::ordered_json report_json(const InducedReport& r);

} // namespace rainbow
