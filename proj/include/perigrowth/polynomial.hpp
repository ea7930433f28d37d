#pragma once

// Exact univariate polynomial arithmetic over Z and Q, plus the sparse
// multivariate integer polynomials used by multivariate series fitting.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace perigrowth {

using BigInt = mpz_class;
using Rational = mpq_class;

// Coefficient k multiplies t^k. Trimmed: no trailing zeros; zero is {}.
using IntPoly = std::vector<BigInt>;
using RatPoly = std::vector<Rational>;

IntPoly trim(IntPoly p);
RatPoly trim(RatPoly p);
std::int64_t degree(const IntPoly& p);  // -1 for zero

IntPoly mul(const IntPoly& a, const IntPoly& b);
IntPoly add(const IntPoly& a, const IntPoly& b);
IntPoly mul_truncated(const IntPoly& a, const IntPoly& b, std::size_t max_degree);

// 1 - t^w
IntPoly one_minus_t_pow(std::int64_t w);
IntPoly pow(const IntPoly& p, std::int64_t e);

// The n-th cyclotomic factor normalized to constant term +1: 1 - t for
// n = 1, Phi_n otherwise. 1 - t^w is the product over d | w.
IntPoly unit_cyclotomic(std::int64_t n);

// a / b when b divides a over Z, otherwise nullopt.
std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b);

// Primitive gcd over Q, sign chosen so the lowest nonzero coefficient is
// positive. gcd(0, 0) = 0.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

IntPoly to_int_poly(const std::vector<std::int64_t>& c);

std::vector<std::int64_t> divisors(std::int64_t n);

// Sparse multivariate polynomial: exponent vector -> nonzero coefficient.
using Exponent = std::vector<std::int64_t>;
using MultiPoly = std::map<Exponent, BigInt>;

MultiPoly mul(const MultiPoly& a, const MultiPoly& b);
MultiPoly one_minus_monomial(const Exponent& w);
void add_term(MultiPoly& p, const Exponent& a, const BigInt& c);

// Quotient of p by (1 - z^w) when exact, otherwise nullopt.
std::optional<MultiPoly> divide_by_binomial(const MultiPoly& p, const Exponent& w);

// Quotient of p by f(z^w) when exact, otherwise nullopt.
std::optional<MultiPoly> divide_in_monomial(const MultiPoly& p, const Exponent& w, const IntPoly& f);

} // namespace perigrowth
