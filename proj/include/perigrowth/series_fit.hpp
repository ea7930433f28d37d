#pragma once

// Certified rational closed forms from exact term data.
//
// A fit multiplies the supplied terms by a product of (1 - t^w) factors and
// accepts iff the truncated product is a polynomial with enough vanishing
// coefficients left over as a margin. The result is a certificate over the
// verified range only; nothing is claimed beyond it.

#include "perigrowth/ball.hpp"
#include "perigrowth/polynomial.hpp"
#include "perigrowth/quotient_walks.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace perigrowth {

struct DenominatorFactor {
    std::int64_t period = 1;
    std::int64_t exponent = 1;

    bool operator==(const DenominatorFactor&) const = default;
};

// Sorted by period with exponents merged.
using FactorMultiset = std::vector<DenominatorFactor>;

FactorMultiset normalize_factors(FactorMultiset f);
FactorMultiset squared(const FactorMultiset& f);
IntPoly expand(const FactorMultiset& f);
std::int64_t degree(const FactorMultiset& f);

struct RationalSeries {
    IntPoly numerator;
    FactorMultiset denominator;
    std::int64_t verified_through = -1;
    // True iff numerator and expanded denominator are coprime.
    bool canonical = false;

    IntPoly expanded_denominator() const { return expand(denominator); }
};

// (1 - t) times one (1 - t^{w(q)}) per quotient cycle q; repeated weights
// become exponents, each capped at max_exponent when that is positive.
FactorMultiset default_denominator(const QuotientGraph& g, const CycleOptions& opts = {},
                                   std::int64_t max_exponent = 0);

struct FitOptions {
    std::optional<std::int64_t> numerator_degree;  // default: degree of the ansatz
    std::int64_t margin = 10;
    bool canonical = false;
};

// Single fit at a fixed ansatz. Throws InputError("insufficient terms") and
// MathError("no fit at this ansatz").
RationalSeries fit_univariate(std::span<const BigInt> terms, const FactorMultiset& ansatz, const FitOptions& opts = {});
RationalSeries fit_univariate(std::span<const std::int64_t> terms, const FactorMultiset& ansatz,
                              const FitOptions& opts = {});

struct LadderResult {
    RationalSeries series;
    std::string step;  // which rung succeeded
};

// Default ansatz, then every factor squared, each with the numerator bound
// raised up to what the data allows. MathError with diagnostics otherwise.
LadderResult fit_with_escalation(std::span<const BigInt> terms, const FactorMultiset& ansatz,
                                 const FitOptions& opts = {});
LadderResult fit_with_escalation(std::span<const std::int64_t> terms, const FactorMultiset& ansatz,
                                 const FitOptions& opts = {});

// Cancels the common factor of numerator and denominator and re-expresses the
// denominator through (1 - t^w) factors. If that is impossible without a
// leftover, the missing cyclotomic factors go back into the numerator and the
// result is flagged non-canonical.
RationalSeries canonicalize(const RationalSeries& rs);

BigInt evaluate_series(const RationalSeries& rs, std::int64_t i);
// Coefficients 0..count-1.
std::vector<BigInt> expand_series(const RationalSeries& rs, std::size_t count);

struct QuasiPolynomial {
    std::int64_t period = 1;
    std::int64_t threshold = 0;
    std::vector<RatPoly> polynomials;  // per residue class mod period, in i
    std::vector<BigInt> exceptions;    // values for i < threshold

    BigInt evaluate(std::int64_t i) const;
};

QuasiPolynomial quasi_polynomial(const RationalSeries& rs);

// ---------------------------------------------------------------------------
// Multivariate.

struct MultiFactor {
    Exponent w;
    std::int64_t exponent = 1;

    bool operator==(const MultiFactor&) const = default;
};

// Sorted by (|w|_1, w) with exponents merged; rejects w = 0.
std::vector<MultiFactor> normalize_factors(std::vector<MultiFactor> f);

struct MultivariateRationalSeries {
    std::size_t arity = 1;
    MultiPoly numerator;
    std::vector<MultiFactor> denominator;
    std::vector<std::int64_t> verified_box;

    MultiPoly expanded_denominator() const;
};

struct MultiFitOptions {
    std::optional<std::vector<std::int64_t>> numerator_box;  // default: largest the margin allows
    std::vector<std::int64_t> margin;                          // default: 5 per axis
};

MultivariateRationalSeries fit_multivariate(const BoxIndex& index, std::span<const std::int64_t> table,
                                            const std::vector<MultiFactor>& ansatz, const MultiFitOptions& opts = {});

struct MultiLadderResult {
    MultivariateRationalSeries series;
    std::string step;
};

MultiLadderResult fit_multivariate_with_escalation(const BoxIndex& index, std::span<const std::int64_t> table,
                                                   const std::vector<MultiFactor>& ansatz,
                                                   const MultiFitOptions& opts = {});

// Cancels denominator binomials that divide the numerator exactly.
MultivariateRationalSeries reduce(const MultivariateRationalSeries& s);

// Dense coefficients over the box.
std::vector<BigInt> expand_multivariate(const MultivariateRationalSeries& s, const BoxIndex& index);

// Multiplies by (1 - z_1)...(1 - z_d), cancelling against denominator
// factors (1 - z_i) where present.
MultivariateRationalSeries s_from_b(const MultivariateRationalSeries& b);

// z_i := t for every i, then canonicalized.
RationalSeries specialize_to_univariate(const MultivariateRationalSeries& m);

// Univariate series in the d=1 multivariate layout.
MultivariateRationalSeries as_multivariate(const RationalSeries& rs);

// The `series d=...` text block.
std::string format_series(const MultivariateRationalSeries& s);
std::string format_series(const RationalSeries& rs);

// Human-readable, e.g. "(1 + 2t + t^2) / ((1 - t)^2)".
std::string pretty(const RationalSeries& rs);

} // namespace perigrowth
