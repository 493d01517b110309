#include <cmath>
#include <cstdio>
#include <limits>

#include "doctest.h"

#include "gaffine/io.hpp"
#include "gaffine/numeric.hpp"

using namespace gaffine;

TEST_CASE("numbers survive a text round trip") {
    for (double v : {0.1, -1.0 / 3.0, 6.02214076e23, 5e-324, -0.0}) CHECK(std::strtod(format_number(v).c_str(), nullptr) == v);
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_number(-INFINITY) == "-inf");
}

TEST_CASE("csv parse") {
    const auto t = parse_csv("# comment\nt, x1 ,x2\n\n0,1,2\n0.5, 3 ,4\n");
    REQUIRE(t.header.size() == 3);
    CHECK(t.header[1] == "x1");
    CHECK(t.columns[1][1] == 3.0);
    CHECK(t.columns[2][0] == 2.0);
}

TEST_CASE("csv errors carry the byte offset") {
    try {
        parse_csv("t,x1\n0,1\n1,abc\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 11);
    }
    CHECK_THROWS_AS(parse_csv("t,x1\n0,1,2\n"), ParseError);
    CHECK_THROWS_AS(parse_csv("# only a comment\n"), ParseError);
    CHECK_THROWS_AS(samples_from_csv("t,y\n0,1\n"), ParseError);
}

TEST_CASE("curve csv round trip") {
    const auto t = linspace(0, 1, 7);
    std::vector<std::vector<double>> x(2);
    for (double s : t) {
        x[0].push_back(std::cos(s) / 3);
        x[1].push_back(std::exp(s) * 1e-7);
    }
    const auto back = samples_from_csv(curve_csv(t, x));
    CHECK(back.t == t);
    CHECK(back.coords == x);
}

TEST_CASE("files") {
    const std::string path = "gaffine_io_test.txt";
    write_text_file(path, "abc\n");
    CHECK(read_text_file(path) == "abc\n");
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_text_file("/nonexistent/dir/file"), IoError);
}

TEST_CASE("records to json and csv") {
    PlaneInvariantRecord r;
    r.t = 0.5;
    r.eps = 1;
    r.k = -1.5;
    r.flags = {"sextactic"};
    const Json j = to_json(r);
    CHECK(j["k"].get<double>() == -1.5);
    CHECK(j["P"].is_null());
    CHECK(j["flags"][0] == "sextactic");
    const std::string csv = plane_records_csv({r});
    const auto table = parse_csv(csv.substr(0, csv.find('\n') + 1) + "0,0,0,0,0,0,0,0,0,0,0,0\n");
    CHECK(table.header.back() == "flags");
}

TEST_CASE("error json") {
    const Json j = error_json(ParseError("bad", 7), 2);
    CHECK(j["error"] == "parse");
    CHECK(j["position"] == 7);
    CHECK(j["exit_code"] == 2);
    const Json a = error_json(AbelBreakdownError("s blows up", 1.25), 3);
    CHECK(a["x"].get<double>() == 1.25);
}

TEST_CASE("svg output") {
    std::vector<std::vector<double>> pts;
    for (double t : linspace(0, 1, 11)) pts.push_back({t, t * t});
    std::vector<bool> dotted(10, false);
    for (int i = 3; i < 6; ++i) dotted[i] = true;
    SvgOptions o;
    o.title = "a < b & c";
    const std::string svg = emit_svg(pts, dotted, {{{0.5, 0.25}, "vertex"}}, o);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("a &lt; b &amp; c") != std::string::npos);
    CHECK(svg.find("class=\"dotted\"") != std::string::npos);
    CHECK(svg.find("class=\"vertex\"") != std::string::npos);
    std::size_t lines = 0;
    for (std::size_t p = svg.find("<polyline"); p != std::string::npos; p = svg.find("<polyline", p + 1)) ++lines;
    CHECK(lines == 3);
    CHECK_THROWS_AS(emit_svg({}, {}, {}), DomainError);
    const std::string s3 = emit_svg({{0, 0, 0}, {1, 1, 1}}, {}, {});
    CHECK(s3.find("<polyline") != std::string::npos);
}
