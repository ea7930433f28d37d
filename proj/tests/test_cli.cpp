#include "perigrowth/cli.hpp"
#include "perigrowth/periodic_graph.hpp"
#include "perigrowth/vab.hpp"

#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace perigrowth;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    for (auto& a : args)
        if (a.ends_with(".pg") || a.ends_with(".vag") || a.ends_with(".eqn") || a.ends_with(".set"))
            if (!a.starts_with("/")) a = testsupport::corpus(a);
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

std::filesystem::path scratch(const std::string& name, const std::string& content) {
    auto p = std::filesystem::temp_directory_path() / ("perigrowth_test_" + name);
    std::ofstream(p) << content;
    return p;
}

} // namespace

TEST_CASE("pg growth") {
    auto r = run({"pg", "growth", "square.pg", "--base", "v", "--upto", "5"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == "perigrowth-format 1\n1,4,8,12,16,20\n");
    CHECK(run({"pg", "growth", "square.pg", "--upto", "5"}).out == r.out);
    CHECK(run({"pg", "growth", "square.pg", "--base", "v:3,-2", "--upto", "5"}).out == r.out);
    CHECK(run({"pg", "growth", "square.pg", "--base", "w", "--upto", "5"}).code == cli::kInputError);
}

TEST_CASE("pg series") {
    auto r = run({"pg", "series", "z_oneway.pg", "--upto", "20", "--margin", "10"});
    CHECK(r.code == cli::kOk);
    auto l = lines(r.out);
    REQUIRE(!l.empty());
    CHECK(l.front() == "perigrowth-format 1");
    CHECK(r.out.find("series d=1\nnum 0 1\nden 1 ^1\nverified 20\n") != std::string::npos);
    CHECK(l.back() == "closed-form (1) / ((1 - t))");

    auto sq = run({"pg", "series", "square.pg", "--upto", "50", "--canonical"});
    CHECK(sq.code == cli::kOk);
    CHECK(sq.out.find("closed-form (1 + 2t + t^2) / ((1 - t)^2)") != std::string::npos);
    CHECK(sq.out.find("canonical true") != std::string::npos);
    CHECK(sq.out.find("verified 50") != std::string::npos);

    CHECK(run({"pg", "series", "square.pg", "--upto", "8"}).code == cli::kInputError);

    // A cubic lattice cannot be fitted once exponents are capped at 1.
    auto cubic = scratch("cubic.pg", "dim 3\nvertex v\nedge v v 1 0 0 1\nedge v v -1 0 0 1\nedge v v 0 1 0 1\n"
                                     "edge v v 0 -1 0 1\nedge v v 0 0 1 1\nedge v v 0 0 -1 1\n");
    auto no_fit = run({"--max-exponent", "1", "pg", "series", cubic.string(), "--upto", "30"});
    CHECK(no_fit.code == cli::kMathFailure);
    CHECK(no_fit.err.find("no fit") != std::string::npos);
    CHECK(run({"pg", "series", cubic.string(), "--upto", "30"}).code == cli::kOk);
}

TEST_CASE("pg decompose") {
    auto r = run({"pg", "decompose", "z_pm.pg", "--upto", "15"});
    CHECK(r.code == cli::kOk);
    auto l = lines(r.out);
    REQUIRE(l.size() >= 3);
    CHECK(l[1] == "decompose radius=15 base=v (0) mode=minimal");
    CHECK(l[l.size() - 2] == "cover PASS slice=256 union=256");
    CHECK(l.back() == "module-action PASS");
    CHECK(r.out.find("  monoid (1 | (-1))\n  monoid (1 | (0))\n  monoid (1 | (1))\n  module (0 | v (0))\n") != std::string::npos);

    auto ex = run({"pg", "decompose", "honeycomb.pg", "--upto", "10", "--exhaustive"});
    CHECK(ex.code == cli::kOk);
    CHECK(ex.out.find("mode=exhaustive") != std::string::npos);
    CHECK(run({"--max-orbits", "1", "pg", "decompose", "honeycomb.pg", "--upto", "5"}).code == cli::kInputError);
}

TEST_CASE("pg validate and input errors") {
    CHECK(run({"pg", "validate", "honeycomb.pg"}).out == "perigrowth-format 1\nvalid dim=2 orbits=2 edges=6\n");
    auto bad = scratch("bad.pg", "dim 1\nvertex v\nedge v v 1 0\n");
    auto r = run({"pg", "validate", bad.string()});
    CHECK(r.code == cli::kInputError);
    CHECK(r.err == "error: " + bad.string() + ": line 3: non-positive weight 0\n");

    auto broken = scratch("broken.pg", "dim 1\nvertex v\nedge v w 1 1\n");
    auto p = run({"pg", "growth", broken.string(), "--upto", "3"});
    CHECK(p.code == cli::kInputError);
    CHECK(p.err.find("line 3") != std::string::npos);

    CHECK(run({"pg", "growth", "missing.pg", "--upto", "3"}).code == cli::kInputError);
    CHECK(run({"pg", "growth", "square.pg"}).code == cli::kInputError);
    CHECK(run({"pg", "frobnicate", "square.pg"}).code == cli::kInputError);
    CHECK(run({"--threads", "0", "pg", "growth", "square.pg", "--upto", "3"}).code == cli::kInputError);
    CHECK(run({"--max-vertices", "5", "pg", "growth", "square.pg", "--upto", "3"}).code == cli::kInputError);
}

TEST_CASE("vag cayley round trip") {
    auto r = run({"vag", "cayley", "dinf.vag"});
    CHECK(r.code == cli::kOk);
    auto l = lines(r.out);
    CHECK(l.front() == "# perigrowth-format 1");
    CHECK(std::count_if(l.begin(), l.end(), [](auto& s) { return s.starts_with("vertex "); }) == 2);
    CHECK(std::count_if(l.begin(), l.end(), [](auto& s) { return s.starts_with("edge "); }) == 6);

    for (const char* name : {"dinf.vag", "dinf_refl.vag", "klein.vag", "z.vag"}) {
        auto c = run({"vag", "cayley", name});
        auto pg = scratch(std::string(name) + ".pg", c.out);
        auto direct = run({"vag", "growth", name, "--upto", "12"});
        auto via_pg = run({"pg", "growth", pg.string(), "--base", "f0", "--upto", "12"});
        CHECK(direct.code == cli::kOk);
        CHECK(direct.out == via_pg.out);
    }
}

TEST_CASE("vag solve") {
    auto r = run({"vag", "solve", "dinf.vag", "involution.eqn", "--box", "3"});
    CHECK(r.code == cli::kOk);
    auto l = lines(r.out);
    REQUIRE(l.size() == 10);
    CHECK(l[1] == "solutions 8 box=3");
    CHECK(l[2] == "[-3;1]");
    CHECK(r.out == run({"--threads", "8", "vag", "solve", "dinf.vag", "involution.eqn", "--box", "3"}).out);
}

TEST_CASE("vag relative") {
    auto r = run({"vag", "relative", "dinf.vag", "invol.set", "--upto", "10", "--margin", "5"});
    CHECK(r.code == cli::kOk);
    auto l = lines(r.out);
    CHECK(std::find(l.begin(), l.end(), "closed-form (1 + t^2) / ((1 - t))") != l.end());
    CHECK(std::find(l.begin(), l.end(), "s-from-b PASS") != l.end());
    CHECK(std::find(l.begin(), l.end(), "specialization PASS") != l.end());
    CHECK(std::find(l.begin(), l.end(), "verified 10") != l.end());
    CHECK(run({"vag", "relative", "dinf.vag", "--set", "invol.set", "--upto", "10", "--margin", "5"}).out == r.out);

    auto e = run({"vag", "relative", "dinf.vag", "--eqn", "involution.eqn", "--box", "10", "--upto", "10"});
    CHECK(e.code == cli::kOk);
    CHECK(e.out.find("closed-form (1 + t^2) / ((1 - t))") != std::string::npos);

    auto d = run({"vag", "relative", "z.vag", "diag.set", "--upto", "12,12"});
    CHECK(d.code == cli::kOk);
    CHECK(d.out.find("series d=2\nnum 0 0 1\nnum 1 1 1\nden 1 1 ^1\nverified 12 12\n") != std::string::npos);

    CHECK(run({"vag", "relative", "dinf.vag", "--upto", "10"}).code == cli::kInputError);
    CHECK(run({"vag", "relative", "dinf.vag", "square.pg", "--upto", "10"}).code == cli::kInputError);
    CHECK(run({"vag", "relative", "dinf.vag", "invol.set", "--upto", "3"}).code == cli::kInputError);
}

TEST_CASE("vag validate, series and --output") {
    CHECK(run({"vag", "validate", "klein.vag"}).code == cli::kOk);
    auto s = run({"vag", "series", "dinf_refl.vag", "--upto", "30", "--canonical"});
    CHECK(s.out.find("closed-form (1 + t) / ((1 - t))") != std::string::npos);

    auto target = std::filesystem::temp_directory_path() / "perigrowth_test_out.txt";
    std::filesystem::remove(target);
    auto r = run({"--output", target.string(), "pg", "growth", "square.pg", "--upto", "3"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.empty());
    std::ifstream f(target);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == "perigrowth-format 1\n1,4,8,12\n");
}
