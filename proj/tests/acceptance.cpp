// One PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

#include "perigrowth/cli.hpp"
#include "perigrowth/decomposition.hpp"
#include "perigrowth/error.hpp"
#include "perigrowth/series_fit.hpp"
#include "perigrowth/vab.hpp"

#include "support.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <queue>
#include <sstream>

using namespace perigrowth;

std::uint64_t& testsupport::seed() {
    static std::uint64_t s = 20240611;
    return s;
}

namespace {

struct Checks {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

QuotientGraph load(const std::string& name) { return load_periodic_graph(testsupport::corpus(name)); }
GroupSpec group(const std::string& name) { return load_vag(testsupport::corpus(name)); }

std::vector<BigInt> big(const std::vector<std::int64_t>& v) { return {v.begin(), v.end()}; }

std::vector<std::int64_t> growth(const QuotientGraph& g, const PeriodicVertex& x0, std::int64_t radius) {
    return growth_sequence(g, x0, radius).terms;
}

// Plain BFS over an explicitly materialized patch [-half, half]^n (unit weights).
std::vector<std::int64_t> patch_bfs(const QuotientGraph& g, std::int64_t half, std::int64_t radius) {
    std::map<PeriodicVertex, std::int64_t> dist{{g.origin(), 0}};
    std::queue<PeriodicVertex> q;
    q.push(g.origin());
    while (!q.empty()) {
        auto v = q.front();
        q.pop();
        const auto d = dist.at(v);
        if (d == radius) continue;
        for (const auto& e : g.edges()) {
            if (e.src != v.orbit) continue;
            PeriodicVertex w{e.dst, add(v.coord, e.shift)};
            if (std::any_of(w.coord.begin(), w.coord.end(), [&](auto x) { return x < -half || x > half; })) continue;
            if (dist.emplace(w, d + 1).second) q.push(w);
        }
    }
    std::vector<std::int64_t> f(static_cast<std::size_t>(radius) + 1, 0);
    for (const auto& [v, d] : dist) ++f[static_cast<std::size_t>(d)];
    return f;
}

std::vector<std::int64_t> word_growth(const GroupSpec& s, std::int64_t bound) {
    std::vector<std::int64_t> f(static_cast<std::size_t>(bound) + 1, 0);
    for (const auto& [x, w] : testsupport::word_weights(s.group, s.generators, bound)) ++f[static_cast<std::size_t>(w)];
    return f;
}

std::string cli_out(std::vector<std::string> args, int* code = nullptr) {
    std::ostringstream out, err;
    const int rc = cli::run(std::move(args), out, err);
    if (code) *code = rc;
    return out.str();
}

void criterion1(Checks& c) {
    const auto t0 = std::chrono::steady_clock::now();
    auto sq = load("square.pg");
    auto f = growth(sq, sq.origin(), 50);
    for (std::int64_t i = 0; i <= 50; ++i) {
        std::int64_t count = 0;
        for (std::int64_t x = -i; x <= i; ++x)
            for (std::int64_t y = -i; y <= i; ++y)
                if (std::abs(x) + std::abs(y) == i) ++count;
        c.expect(f[static_cast<std::size_t>(i)] == count, "square f(" + std::to_string(i) + ")");
        c.expect(count == (i == 0 ? 1 : 4 * i), "lattice count oracle");
    }
    int code = -1;
    auto out = cli_out({"pg", "series", testsupport::corpus("square.pg"), "--upto", "50", "--canonical"}, &code);
    c.expect(code == cli::kOk, "pg series exit code");
    c.expect(out.find("series d=1\nnum 0 1\nnum 1 2\nnum 2 1\nden 1 ^2\nverified 50\n") != std::string::npos,
             "pg series --canonical block");
    auto fit = fit_with_escalation(f, default_denominator(sq), {std::nullopt, 10, true}).series;
    c.expect(fit.numerator == to_int_poly({1, 2, 1}) && fit.denominator == FactorMultiset{{1, 2}},
             "numerator (1+t)^2, denominator (1-t)^2");
    c.expect(fit.verified_through >= 50, "verified_through >= 50");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(secs < 5.0, "runtime " + std::to_string(secs) + " s");
}

void criterion2(Checks& c) {
    auto h = load("honeycomb.pg");
    auto f = growth(h, h.origin(), 60);
    auto oracle = patch_bfs(h, 70, 60);
    c.expect(f == oracle, "honeycomb ball vs materialized patch BFS");
    for (std::int64_t i = 0; i <= 50; ++i)
        c.expect(f[static_cast<std::size_t>(i)] == (i == 0 ? 1 : 3 * i), "honeycomb f(" + std::to_string(i) + ")");
    auto fit = fit_with_escalation(f, default_denominator(h), {std::nullopt, 10, true}).series;
    c.expect(fit.verified_through >= 60, "verified through 60");
    c.expect(expand_series(fit, 61) == big(oracle), "expansion vs 61 BFS terms");
    auto q = quasi_polynomial(fit);
    c.expect(q.period == 1, "period 1");
    c.expect(q.polynomials.size() == 1 && q.polynomials[0] == RatPoly{0, 3}, "linear form 3i");
    c.expect(q.threshold == 1 && q.exceptions == std::vector<BigInt>{1}, "exception at 0");
}

void criterion3(Checks& c) {
    auto z = load("z_oneway.pg");
    auto fit = fit_with_escalation(growth(z, z.origin(), 30), default_denominator(z)).series;
    c.expect(fit.numerator == to_int_poly({1}), "numerator 1");
    c.expect(fit.denominator == FactorMultiset{{1, 1}}, "denominator (1-t)");
    c.expect(cli_out({"pg", "series", testsupport::corpus("z_oneway.pg"), "--upto", "20", "--margin", "10"})
                     .find("closed-form (1) / ((1 - t))") != std::string::npos,
             "CLI closed form");
}

void criterion4(Checks& c) {
    auto refl = group("dinf_refl.vag");
    auto cay = build_cayley(refl.group, refl.generators);
    auto f = growth(cay.graph, cay.base, 12);
    c.expect(f == word_growth(refl, 12), "growth vs word enumeration to length 12");
    std::vector<std::int64_t> expected(13, 2);
    expected[0] = 1;
    c.expect(f == expected, "growth 1,2,2,...");
    auto fit = fit_with_escalation(growth(cay.graph, cay.base, 30), default_denominator(cay.graph),
                                   {std::nullopt, 10, true})
                   .series;
    c.expect(fit.numerator == to_int_poly({1, 1}) && fit.denominator == FactorMultiset{{1, 1}} && fit.canonical,
             "canonical (1+t)/(1-t)");

    auto d = group("dinf.vag");
    auto dc = build_cayley(d.group, d.generators);
    auto dm = distances_upto(dc.graph, dc.base, 9);
    auto words = testsupport::word_weights(d.group, d.generators, 9);
    for (std::int64_t k = -8; k <= 8; ++k) {
        GroupElement x{{k}, 1};
        c.expect(dm.distance(to_vertex(x)) == std::abs(k) + 1, "omega((k,1)) = |k|+1 for k=" + std::to_string(k));
        c.expect(words.contains(x) && words.at(x) == std::abs(k) + 1, "word enumeration omega((k,1))");
    }
}

void criterion5(Checks& c) {
    auto k = group("klein.vag");
    c.expect(validate_group(k.group).ok(), "validate_group");
    auto cay = build_cayley(k.group, k.generators);
    const std::int64_t window = 40, extra = 15;
    auto terms = growth(cay.graph, cay.base, window);
    auto fit = fit_with_escalation(terms, default_denominator(cay.graph)).series;
    auto independent = word_growth(k, window + extra);
    auto expansion = expand_series(fit, static_cast<std::size_t>(window + extra) + 1);
    for (std::int64_t i = window + 1; i <= window + extra; ++i)
        c.expect(expansion[static_cast<std::size_t>(i)] == independent[static_cast<std::size_t>(i)],
                 "Klein term " + std::to_string(i));
    c.expect(std::equal(terms.begin(), terms.end(), independent.begin()), "Klein fitting window vs words");
}

void criterion6(Checks& c) {
    for (const char* name : {"z_pm.pg", "square.pg", "honeycomb.pg"}) {
        auto g = load(name);
        auto rep = verify_cover(g, g.origin(), 15);
        c.expect(rep.cover_ok(), std::string(name) + " cover");
        c.expect(rep.module_action_ok(), std::string(name) + " module action");
        for (const auto& b : rep.blocks)
            c.expect(verify_module_action(g, g.origin(), b.support, 15).ok, std::string(name) + " module action per S");
    }
    auto z = load("z_pm.pg");
    auto bogus = build_ms(z, SupportSet({0}));
    bogus.generators.push_back({1, {5}});
    auto res = verify_module_action(z, z.origin(), SupportSet({0}), 15, bogus);
    c.expect(!res.ok && res.witness.has_value(), "corrupted monoid fails with a witness");
}

void criterion7(Checks& c) {
    auto z = group("z.vag");
    auto cay = build_cayley(z.group, z.generators);
    auto dm = distances_upto(cay.graph, cay.base, 12);
    auto u = load_monoid_module_set(testsupport::corpus("diag.set"), z.group);
    std::vector<std::int64_t> box{12, 12};
    auto t = relative_growth_terms(z.group, z.generators, enumerate_monoid_module_set(z.group, u, dm, box), box);
    auto ansatz = default_relative_ansatz(cay, 2, &u, dm);
    auto s = reduce(fit_multivariate_with_escalation(t.index, t.counts_s, ansatz).series);
    c.expect(s.numerator == MultiPoly{{{0, 0}, 1}, {{1, 1}, 1}} && s.denominator == std::vector<MultiFactor>{{{1, 1}, 1}},
             "S = (1+z1z2)/(1-z1z2)");
    auto bansatz = ansatz;
    bansatz.push_back({{1, 0}, 1});
    bansatz.push_back({{0, 1}, 1});
    auto b = reduce(fit_multivariate_with_escalation(t.index, t.counts_b, normalize_factors(bansatz)).series);
    c.expect(expand_multivariate(s_from_b(b), t.index) == expand_multivariate(s, t.index), "s_from_b(B) = S on box");
    for (std::int64_t a1 = 0; a1 <= 12; ++a1)
        for (std::int64_t a2 = 0; a2 <= 12; ++a2) {
            auto B = [&](std::int64_t x, std::int64_t y) -> std::int64_t {
                return x < 0 || y < 0 ? 0 : t.b(std::vector<std::int64_t>{x, y});
            };
            c.expect(t.s(std::vector<std::int64_t>{a1, a2}) == B(a1, a2) - B(a1 - 1, a2) - B(a1, a2 - 1) + B(a1 - 1, a2 - 1),
                     "finite difference");
        }
}

void criterion8(Checks& c) {
    auto d = group("dinf.vag");
    auto cay = build_cayley(d.group, d.generators);
    const std::int64_t top = 10;
    auto dm = distances_upto(cay.graph, cay.base, top);
    std::vector<std::int64_t> box{top};
    auto u = load_monoid_module_set(testsupport::corpus("invol.set"), d.group);
    auto from_set = enumerate_monoid_module_set(d.group, u, dm, box);
    auto sys = load_equations(testsupport::corpus("involution.eqn"), d.group);
    std::vector<GroupTuple> from_eqn;
    for (const auto& x : solve_box(d.group, sys, top))
        if (dm.distance(to_vertex(x[0]))) from_eqn.push_back(x);
    c.expect(from_set == from_eqn, ".set and .eqn enumerations agree");

    auto t = relative_growth_terms(d.group, d.generators, from_set, box);
    for (std::int64_t a = 0; a <= top; ++a)
        c.expect(t.counts_s[static_cast<std::size_t>(a)] == (a <= 1 ? 1 : 2), "closed-form summation 1 + t + 2t^2/(1-t)");
    auto ansatz = default_relative_ansatz(cay, 1, &u, dm);
    MultiFitOptions mo;
    mo.margin = {5};
    auto m = reduce(fit_multivariate_with_escalation(t.index, t.counts_s, ansatz, mo).series);
    auto spec_u = specialize_to_univariate(m);
    FactorMultiset uni;
    for (const auto& f : ansatz) uni.push_back({f.w[0], f.exponent});
    auto direct = fit_with_escalation(univariate_terms(t), uni, {std::nullopt, 5, true}).series;
    c.expect(direct.numerator == to_int_poly({1, 0, 1}) && direct.denominator == FactorMultiset{{1, 1}},
             "univariate (1+t^2)/(1-t)");
    c.expect(spec_u.numerator == direct.numerator && spec_u.denominator == direct.denominator,
             "specialization equals direct univariate fit");
}

void criterion9(Checks& c) {
    const std::int64_t window = 40, K = 10;
    auto honest = [&](const std::string& what, const QuotientGraph& g, const PeriodicVertex& x0) {
        auto fit = fit_with_escalation(growth(g, x0, window), default_denominator(g)).series;
        auto beyond = growth(g, x0, window + K);
        for (std::int64_t i = window + 1; i <= window + K; ++i)
            c.expect(evaluate_series(fit, i) == beyond[static_cast<std::size_t>(i)], what + " term " + std::to_string(i));
    };
    for (const char* name : {"square.pg", "honeycomb.pg", "z_pm.pg", "z_oneway.pg"}) {
        auto g = load(name);
        for (OrbitId o = 0; o < g.orbit_count(); ++o) honest(name, g, g.origin(o));
    }
    for (const char* name : {"dinf.vag", "dinf_refl.vag", "klein.vag", "z.vag"}) {
        auto s = group(name);
        auto cay = build_cayley(s.group, s.generators);
        honest(name, cay.graph, cay.base);
    }

    // Relative series: fit on the window, compare against a larger table.
    auto d = group("dinf.vag");
    auto dcay = build_cayley(d.group, d.generators);
    auto invol = load_monoid_module_set(testsupport::corpus("invol.set"), d.group);
    auto rel_terms = [&](std::int64_t top) {
        auto dm = distances_upto(dcay.graph, dcay.base, top);
        std::vector<std::int64_t> box{top};
        return relative_growth_terms(d.group, d.generators, enumerate_monoid_module_set(d.group, invol, dm, box), box);
    };
    auto small = rel_terms(window);
    auto ifit = fit_with_escalation(small.counts_s, FactorMultiset{{1, 1}, {2, 1}}).series;
    auto large = rel_terms(window + K);
    for (std::int64_t i = window + 1; i <= window + K; ++i)
        c.expect(evaluate_series(ifit, i) == large.counts_s[static_cast<std::size_t>(i)], "invol.set term " + std::to_string(i));

    auto z = group("z.vag");
    auto zcay = build_cayley(z.group, z.generators);
    auto diag = load_monoid_module_set(testsupport::corpus("diag.set"), z.group);
    auto diag_table = [&](std::int64_t top) {
        auto dm = distances_upto(zcay.graph, zcay.base, top);
        std::vector<std::int64_t> box{top, top};
        return relative_growth_terms(z.group, z.generators, enumerate_monoid_module_set(z.group, diag, dm, box), box);
    };
    auto dsmall = diag_table(12);
    auto dfit = fit_multivariate_with_escalation(dsmall.index, dsmall.counts_s,
                                                 default_relative_ansatz(zcay, 2, &diag,
                                                                         distances_upto(zcay.graph, zcay.base, 12)))
                    .series;
    auto dlarge = diag_table(12 + K);
    auto e = expand_multivariate(dfit, dlarge.index);
    c.expect(e == std::vector<BigInt>(dlarge.counts_s.begin(), dlarge.counts_s.end()), "diag.set beyond the box");
}

std::string capture(const std::string& cmd, int& status) {
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) {
        status = -1;
        return out;
    }
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    status = pclose(p);
    return out;
}

void criterion10(Checks& c) {
    const std::string corpus = PERIGROWTH_CORPUS_DIR;
    const std::vector<std::string> commands{
        "pg validate square.pg",
        "pg growth square.pg --upto 30",
        "pg series square.pg --upto 50 --canonical",
        "pg decompose square.pg --upto 12",
        "pg growth honeycomb.pg --upto 30",
        "pg series honeycomb.pg --upto 60 --canonical",
        "pg decompose honeycomb.pg --upto 12 --exhaustive",
        "pg series z_pm.pg --upto 30",
        "pg decompose z_pm.pg --upto 15",
        "pg series z_oneway.pg --upto 20 --margin 10",
        "pg decompose z_oneway.pg --upto 10",
        "vag validate dinf.vag",
        "vag cayley dinf.vag",
        "vag growth dinf.vag --upto 20",
        "vag series dinf_refl.vag --upto 30 --canonical",
        "vag series klein.vag --upto 40",
        "vag cayley klein.vag",
        "vag solve dinf.vag involution.eqn --box 6",
        "vag relative dinf.vag invol.set --upto 10 --margin 5",
        "vag relative dinf.vag --eqn involution.eqn --box 12 --upto 12",
        "vag relative z.vag diag.set --upto 12,12",
    };
    for (const auto& cmd : commands) {
        std::string outs[2];
        int status[2];
        const char* threads[2] = {"1", "8"};
        for (int k = 0; k < 2; ++k)
            outs[k] = capture("cd '" + corpus + "' && '" + std::string(PERIGROWTH_CLI) + "' --threads " + threads[k] +
                                  " " + cmd,
                              status[k]);
        c.expect(status[0] == 0 && status[1] == 0, "exit status: " + cmd);
        c.expect(outs[0].starts_with(cli::kFormatHeader) || outs[0].starts_with(std::string("# ") + cli::kFormatHeader),
                 "format header: " + cmd);
        c.expect(outs[0] == outs[1], "byte-identical: " + cmd);
    }
}

} // namespace

int main() {
    const std::vector<std::function<void(Checks&)>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                             criterion5, criterion6, criterion7, criterion8,
                                                             criterion9, criterion10};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Checks c;
        try {
            criteria[i](c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        std::cout << "criterion " << i + 1 << ": " << (c.failures.empty() ? "PASS" : "FAIL") << '\n';
        for (std::size_t k = 0; k < c.failures.size() && k < 5; ++k) std::cout << "  " << c.failures[k] << '\n';
        if (!c.failures.empty()) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
