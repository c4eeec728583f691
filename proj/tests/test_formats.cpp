#include "rainbow/error.hpp"
#include "rainbow/formats.hpp"

#include <doctest.h>

#include <sstream>

using namespace rainbow;

TEST_CASE("coloring round trip") {
    const auto cs = build(Params::make(10, 3, Rational(1, 20)));
    const auto c = cs.dense_coloring();
    std::ostringstream os;
    write_coloring(os, c);
    const auto text = os.str();
    CHECK(text.rfind("#format rainbow-v1\n#params C=10 d=3 epsilon=1/20 k=3\n", 0) == 0);
    std::istringstream is(text);
    const auto back = read_coloring(is);
    CHECK(back == c);
    std::ostringstream again;
    write_coloring(again, back);
    CHECK(again.str() == text);
}

TEST_CASE("malformed colorings are rejected") {
    const std::string head = "#format rainbow-v1\n#params C=3 d=2 epsilon=3/10 k=3\n";
    const auto bad = [](const std::string& s) {
        std::istringstream is(s);
        return read_coloring(is);
    };
    CHECK_NOTHROW(bad(head + "3\t0\n5\t1\n"));
    CHECK_THROWS_AS(bad(head + "3\t0\n5\t1"), format_error);        // truncated line
    CHECK_THROWS_AS(bad(head + "5\t0\n3\t1\n"), format_error);      // not ascending
    CHECK_THROWS_AS(bad(head + "3\t0\n3\t1\n"), format_error);      // duplicate
    CHECK_THROWS_AS(bad(head + "10\t0\n"), format_error);           // outside [n]
    CHECK_THROWS_AS(bad(head + "3 0\n"), format_error);             // wrong separator
    CHECK_THROWS_AS(bad(head + "3\tx\n"), format_error);
    CHECK_THROWS_AS(bad("#format rainbow-v2\n"), format_error);
    CHECK_THROWS_AS(bad("#format rainbow-v1\n#params C=3 d=2\n"), format_error);
    CHECK_THROWS_AS(bad(""), format_error);
}

TEST_CASE("decomposition round trip") {
    const auto md = build_matchings(8, Params::make(2, 4, Rational(1, 10)));
    std::ostringstream os;
    write_decomposition(os, md);
    std::istringstream is(os.str());
    const auto back = read_decomposition(is);
    CHECK(back.m() == md.m());
    CHECK(back.class_count() == md.class_count());
    CHECK(std::equal(back.edges().begin(), back.edges().end(), md.edges().begin(), md.edges().end()));
    CHECK(verify_induced(back).ok());
    std::istringstream cut(os.str().substr(0, os.str().size() - 3));
    CHECK_THROWS_AS(read_decomposition(cut), format_error);
}

TEST_CASE("stats rows") {
    const auto cs = build(Params::make(10, 3, Rational(1, 20)));
    const auto rep = verify_rainbow(cs);
    const auto row = make_stats_row(cs, rep, false);
    const auto j = stats_json(row);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == stats_columns());
    CHECK(keys.size() == 18);
    CHECK(j["build_ms"].is_null());
    CHECK(j["verify_ms"].is_null());
    CHECK(j["violations"] == 0);
    CHECK(j["verify_mode"] == "exhaustive");
    CHECK(j["size_A"] == 144);
    CHECK(j["shortfall"] == 856);
    CHECK(j["epsilon"] == "1/20");
    CHECK(stats_json(make_stats_row(cs, rep, true))["build_ms"].is_number());
    CHECK(csv_header().rfind("C,d,epsilon,k,n,size_A", 0) == 0);
    const auto line = csv_row(row);
    const auto header = csv_header();
    CHECK(std::count(line.begin(), line.end(), ',') == std::count(header.begin(), header.end(), ','));
    const auto none = stats_json(make_stats_row(cs, std::nullopt, false));
    CHECK(none["violations"].is_null());
    CHECK(none["verify_mode"] == "none");
}
