#include "perigrowth/polynomial.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace perigrowth;

namespace {

IntPoly P(std::vector<std::int64_t> c) { return to_int_poly(c); }

IntPoly random_poly(std::mt19937_64& r, std::int64_t max_deg) {
    std::vector<std::int64_t> c;
    const auto d = testsupport::uniform(r, 0, max_deg);
    for (std::int64_t i = 0; i <= d; ++i) c.push_back(testsupport::uniform(r, -4, 4));
    return P(c);
}

MultiPoly random_multi(std::mt19937_64& r, std::size_t n) {
    MultiPoly p;
    const auto terms = testsupport::uniform(r, 1, 5);
    for (std::int64_t i = 0; i < terms; ++i) {
        Exponent a;
        for (std::size_t k = 0; k < n; ++k) a.push_back(testsupport::uniform(r, 0, 3));
        add_term(p, a, testsupport::uniform(r, -3, 3));
    }
    return p;
}

MultiPoly substitute(const IntPoly& f, const Exponent& w) {
    MultiPoly out;
    for (std::size_t j = 0; j < f.size(); ++j) {
        Exponent a;
        for (auto x : w) a.push_back(x * static_cast<std::int64_t>(j));
        add_term(out, a, f[j]);
    }
    return out;
}

} // namespace

TEST_CASE("basic arithmetic") {
    CHECK(trim(P({1, 2, 0, 0})) == P({1, 2}));
    CHECK(degree(IntPoly{}) == -1);
    CHECK(mul(P({1, 1}), P({1, -1})) == P({1, 0, -1}));
    CHECK(add(P({1, 1}), P({-1, -1})).empty());
    CHECK(mul_truncated(P({1, 1}), P({1, 1}), 1) == P({1, 2}));
    CHECK(one_minus_t_pow(3) == P({1, 0, 0, -1}));
    CHECK(pow(P({1, 1}), 3) == P({1, 3, 3, 1}));
    CHECK(pow(P({1, 1}), 0) == P({1}));
}

TEST_CASE("cyclotomic factors") {
    CHECK(unit_cyclotomic(1) == P({1, -1}));
    CHECK(unit_cyclotomic(2) == P({1, 1}));
    CHECK(unit_cyclotomic(3) == P({1, 1, 1}));
    CHECK(unit_cyclotomic(4) == P({1, 0, 1}));
    CHECK(unit_cyclotomic(6) == P({1, -1, 1}));
    CHECK(divisors(12) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});
    for (std::int64_t w = 1; w <= 24; ++w) {
        IntPoly prod = P({1});
        for (auto d : divisors(w)) prod = mul(prod, unit_cyclotomic(d));
        CHECK(prod == one_minus_t_pow(w));
    }
}

TEST_CASE("divide_exact and gcd") {
    CHECK(divide_exact(P({1, 0, -1}), P({1, -1})) == P({1, 1}));
    CHECK_FALSE(divide_exact(P({1, 0, 1}), P({1, -1})).has_value());
    CHECK_FALSE(divide_exact(P({1, 1}), P({2})).has_value());
    CHECK(gcd(P({1, 0, -1}), P({1, 2, 1})) == P({1, 1}));
    CHECK(gcd(P({2, 2}), P({3, 3})) == P({1, 1}));
    CHECK(gcd(IntPoly{}, IntPoly{}).empty());
    CHECK(gcd(P({-1, 1}), P({1, -1})) == P({1, -1}));
}

TEST_CASE("property: divide_exact inverts mul, gcd divides both") {
    auto r = testsupport::rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        auto a = random_poly(r, 5), b = random_poly(r, 4), c = random_poly(r, 3);
        if (b.empty() || c.empty()) continue;
        CHECK(divide_exact(mul(a, b), b) == a);
        auto g = gcd(mul(a, c), mul(b, c));
        CHECK(divide_exact(mul(a, c), g).has_value());
        CHECK(divide_exact(mul(b, c), g).has_value());
        CHECK(degree(g) >= degree(c));
    }
}

TEST_CASE("multivariate division") {
    CHECK(one_minus_monomial({1, 2}) == MultiPoly{{{0, 0}, 1}, {{1, 2}, -1}});
    auto p = mul(one_minus_monomial({1, 1}), MultiPoly{{{0, 0}, 1}, {{2, 0}, 3}});
    CHECK(divide_by_binomial(p, {1, 1}) == MultiPoly{{{0, 0}, 1}, {{2, 0}, 3}});
    CHECK_FALSE(divide_by_binomial(MultiPoly{{{0, 0}, 1}, {{1, 0}, 1}}, {1, 1}).has_value());
    // 1 - z1^2 z2^2 = (1 - z1 z2)(1 + z1 z2)
    auto q = one_minus_monomial({2, 2});
    CHECK(divide_in_monomial(q, {1, 1}, unit_cyclotomic(2)) == one_minus_monomial({1, 1}));
}

TEST_CASE("property: multivariate divisions invert products") {
    auto r = testsupport::rng(22);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = static_cast<std::size_t>(testsupport::uniform(r, 1, 3));
        auto a = random_multi(r, n);
        if (a.empty()) continue;
        Exponent w;
        for (std::size_t k = 0; k < n; ++k) w.push_back(testsupport::uniform(r, 0, 2));
        if (std::all_of(w.begin(), w.end(), [](auto x) { return x == 0; })) w[0] = 1;
        CHECK(divide_by_binomial(mul(a, one_minus_monomial(w)), w) == a);
        const auto k = testsupport::uniform(r, 1, 6);
        auto f = unit_cyclotomic(k);
        CHECK(divide_in_monomial(mul(a, substitute(f, w)), w, f) == a);
    }
}
