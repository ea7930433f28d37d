#include "perigrowth/series_fit.hpp"

#include "perigrowth/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace perigrowth {

FactorMultiset normalize_factors(FactorMultiset f) {
    std::map<std::int64_t, std::int64_t> merged;
    for (const auto& x : f) {
        if (x.period < 1 || x.exponent < 0) throw InputError("invalid denominator factor");
        if (x.exponent > 0) merged[x.period] += x.exponent;
    }
    FactorMultiset out;
    for (const auto& [w, e] : merged) out.push_back({w, e});
    return out;
}

FactorMultiset squared(const FactorMultiset& f) {
    FactorMultiset out = f;
    for (auto& x : out) x.exponent *= 2;
    return out;
}

IntPoly expand(const FactorMultiset& f) {
    IntPoly p{1};
    for (const auto& x : f) p = mul(p, pow(one_minus_t_pow(x.period), x.exponent));
    return p;
}

std::int64_t degree(const FactorMultiset& f) {
    std::int64_t d = 0;
    for (const auto& x : f) d += x.period * x.exponent;
    return d;
}

FactorMultiset default_denominator(const QuotientGraph& g, const CycleOptions& opts, std::int64_t max_exponent) {
    FactorMultiset f{{1, 1}};
    for (const auto& c : enumerate_cycles(g, opts)) f.push_back({walk_weight(g, c.edges), 1});
    f = normalize_factors(std::move(f));
    if (max_exponent > 0)
        for (auto& x : f) x.exponent = std::min(x.exponent, max_exponent);
    return f;
}

namespace {

std::vector<BigInt> to_big(std::span<const std::int64_t> terms) {
    std::vector<BigInt> out;
    out.reserve(terms.size());
    for (auto t : terms) out.emplace_back(static_cast<long>(t));
    return out;
}

// Numerator degree plus denominator degree after cancelling the gcd.
std::int64_t reduced_degree(const IntPoly& n, const IntPoly& d) {
    if (n.empty()) return 0;
    const std::int64_t g = degree(gcd(n, d));
    return degree(n) + degree(d) - 2 * g;
}

// Divides out whole (1 - t^w) factors of the denominator that divide the
// numerator, keeping the factored shape.
RationalSeries cancel_binomials(RationalSeries rs) {
    for (auto& f : rs.denominator) {
        if (rs.numerator.empty()) break;
        while (f.exponent > 0) {
            auto q = divide_exact(rs.numerator, one_minus_t_pow(f.period));
            if (!q) break;
            rs.numerator = std::move(*q);
            --f.exponent;
        }
    }
    if (rs.numerator.empty()) rs.denominator.clear();
    rs.denominator = normalize_factors(std::move(rs.denominator));
    return rs;
}

} // namespace

RationalSeries fit_univariate(std::span<const BigInt> terms, const FactorMultiset& ansatz, const FitOptions& opts) {
    if (terms.empty()) throw InputError("insufficient terms: no data");
    const auto T = static_cast<std::int64_t>(terms.size()) - 1;
    const auto den = normalize_factors(ansatz);
    const IntPoly d = expand(den);
    const std::int64_t dd = degree(den);
    const std::int64_t m = opts.numerator_degree.value_or(dd);
    if (T < m + opts.margin)
        throw InputError("insufficient terms: have 0.." + std::to_string(T) + ", need at least " +
                         std::to_string(m + opts.margin));

    IntPoly n = mul_truncated(d, IntPoly(terms.begin(), terms.end()), static_cast<std::size_t>(T));
    for (std::int64_t k = m + 1; k <= T; ++k)
        if (n[static_cast<std::size_t>(k)] != 0)
            throw MathError("no fit at this ansatz: numerator coefficient of t^" + std::to_string(k) +
                            " is nonzero (bound " + std::to_string(m) + ")");
    n = trim(std::move(n));
    const std::int64_t reduced = reduced_degree(n, d);
    if (reduced + opts.margin > T)
        throw InputError("insufficient terms: verification margin needs terms through " +
                         std::to_string(reduced + opts.margin));

    RationalSeries rs{std::move(n), den, T, false};
    if (opts.canonical) return canonicalize(rs);
    rs = cancel_binomials(rs);
    rs.canonical =
        rs.numerator.empty() ? rs.denominator.empty() : degree(gcd(rs.numerator, rs.expanded_denominator())) == 0;
    return rs;
}

RationalSeries fit_univariate(std::span<const std::int64_t> terms, const FactorMultiset& ansatz,
                              const FitOptions& opts) {
    auto big = to_big(terms);
    return fit_univariate(std::span<const BigInt>(big), ansatz, opts);
}

LadderResult fit_with_escalation(std::span<const BigInt> terms, const FactorMultiset& ansatz, const FitOptions& opts) {
    if (terms.empty()) throw InputError("insufficient terms: no data");
    const auto T = static_cast<std::int64_t>(terms.size()) - 1;
    std::ostringstream diag;
    const std::pair<FactorMultiset, const char*> rungs[] = {{normalize_factors(ansatz), "default ansatz"},
                                                            {squared(normalize_factors(ansatz)), "squared ansatz"}};
    bool any_attempt = false;
    for (const auto& [den, label] : rungs) {
        const std::int64_t dd = degree(den);
        const std::int64_t m0 = opts.numerator_degree.value_or(dd);
        if (T < m0 + opts.margin) {
            diag << "; " << label << ": needs terms through " << m0 + opts.margin;
            continue;
        }
        any_attempt = true;
        const IntPoly d = expand(den);
        IntPoly n = trim(mul_truncated(d, IntPoly(terms.begin(), terms.end()), static_cast<std::size_t>(T)));
        const std::int64_t nd = std::max<std::int64_t>(degree(n), 0);
        if (nd + opts.margin > T) {
            diag << "; " << label << " (degree " << dd << "): numerator does not terminate before t^"
                 << T - opts.margin + 1;
            continue;
        }
        if (reduced_degree(n, d) + opts.margin > T) {
            diag << "; " << label << ": reduced form needs terms through " << reduced_degree(n, d) + opts.margin;
            continue;
        }
        FitOptions o = opts;
        o.numerator_degree = std::max(m0, nd);
        std::string step = std::string(label) + ", numerator degree bound " + std::to_string(m0);
        if (nd > m0) step = std::string(label) + ", numerator bound raised to " + std::to_string(nd);
        return {fit_univariate(terms, den, o), step};
    }
    if (!any_attempt) throw InputError("insufficient terms for any ansatz" + diag.str());
    throw MathError("no fit on the escalation ladder with terms 0.." + std::to_string(T) + diag.str());
}

LadderResult fit_with_escalation(std::span<const std::int64_t> terms, const FactorMultiset& ansatz,
                                 const FitOptions& opts) {
    auto big = to_big(terms);
    return fit_with_escalation(std::span<const BigInt>(big), ansatz, opts);
}

RationalSeries canonicalize(const RationalSeries& rs) {
    RationalSeries out = rs;
    if (rs.numerator.empty()) {
        out.denominator.clear();
        out.canonical = true;
        return out;
    }
    const IntPoly den = rs.expanded_denominator();
    IntPoly g = gcd(rs.numerator, den);
    if (g.empty() || g[0] == 0) throw std::logic_error("gcd with a (1 - t^w) product has zero constant term");
    if (g[0] < 0)
        for (auto& c : g) c = -c;
    auto n = divide_exact(rs.numerator, g);
    auto d = divide_exact(den, g);
    if (!n || !d) throw std::logic_error("gcd does not divide");

    // Cyclotomic multiplicities of the reduced denominator.
    std::int64_t max_period = 0;
    for (const auto& f : rs.denominator) max_period = std::max(max_period, f.period);
    std::map<std::int64_t, std::int64_t> mult;
    IntPoly rest = *d;
    for (std::int64_t k = max_period; k >= 1; --k) {
        bool relevant = std::any_of(rs.denominator.begin(), rs.denominator.end(),
                                    [k](const DenominatorFactor& f) { return f.period % k == 0; });
        if (!relevant) continue;
        const IntPoly phi = unit_cyclotomic(k);
        while (auto q = divide_exact(rest, phi)) {
            rest = std::move(*q);
            ++mult[k];
        }
    }
    if (rest != IntPoly{1}) throw std::logic_error("reduced denominator is not a cyclotomic product");

    // Cover by (1 - t^k) from the largest k down; any divisor a factor
    // needs beyond what remains is multiplied back into the numerator.
    FactorMultiset factors;
    std::map<std::int64_t, std::int64_t> extra;
    for (auto it = mult.rbegin(); it != mult.rend(); ++it) {
        const auto [k, e] = *it;
        if (e <= 0) continue;
        factors.push_back({k, e});
        for (auto dv : divisors(k)) {
            auto& r = mult[dv];
            if (r >= e) {
                r -= e;
            } else {
                extra[dv] += e - r;
                r = 0;
            }
        }
    }
    IntPoly num = *n;
    for (const auto& [k, e] : extra) num = mul(num, pow(unit_cyclotomic(k), e));
    out.numerator = num;
    out.denominator = normalize_factors(std::move(factors));
    out.canonical = extra.empty();
    return out;
}

std::vector<BigInt> expand_series(const RationalSeries& rs, std::size_t count) {
    const IntPoly d = rs.expanded_denominator();
    std::vector<BigInt> f(count, 0);
    for (std::size_t i = 0; i < count; ++i) {
        BigInt v = i < rs.numerator.size() ? rs.numerator[i] : BigInt(0);
        for (std::size_t j = 1; j < d.size() && j <= i; ++j) v -= d[j] * f[i - j];
        f[i] = v;  // d[0] == 1
    }
    return f;
}

BigInt evaluate_series(const RationalSeries& rs, std::int64_t i) {
    if (i < 0) throw InputError("coefficient index must be nonnegative");
    return expand_series(rs, static_cast<std::size_t>(i) + 1).back();
}

BigInt QuasiPolynomial::evaluate(std::int64_t i) const {
    if (i < threshold) return exceptions.at(static_cast<std::size_t>(i));
    const auto& p = polynomials.at(static_cast<std::size_t>(i % period));
    Rational v = 0;
    for (std::size_t k = p.size(); k-- > 0;) v = v * i + p[k];
    if (v.get_den() != 1) throw std::logic_error("quasi-polynomial value is not an integer");
    return v.get_num();
}

namespace {

// Coefficients (in x) of the interpolating polynomial through the points.
RatPoly interpolate(const std::vector<std::int64_t>& xs, const std::vector<BigInt>& ys) {
    const std::size_t n = xs.size();
    RatPoly result(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        RatPoly basis{1};
        Rational denom = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            RatPoly next(basis.size() + 1, 0);
            for (std::size_t k = 0; k < basis.size(); ++k) {
                next[k + 1] += basis[k];
                next[k] -= basis[k] * xs[j];
            }
            basis = std::move(next);
            denom *= xs[i] - xs[j];
        }
        Rational scale = Rational(ys[i]) / denom;
        for (std::size_t k = 0; k < basis.size(); ++k) result[k] += basis[k] * scale;
    }
    for (auto& c : result) c.canonicalize();
    return trim(std::move(result));
}

} // namespace

QuasiPolynomial quasi_polynomial(const RationalSeries& rs) {
    QuasiPolynomial qp;
    std::int64_t pole_order = 0;
    for (const auto& f : rs.denominator) {
        qp.period = std::lcm(qp.period, f.period);
        pole_order += f.exponent;
    }
    const std::int64_t nd = degree(rs.numerator);
    const std::int64_t dd = degree(rs.denominator);
    qp.threshold = std::max<std::int64_t>(0, nd - dd + 1);
    const std::int64_t poly_degree = std::max<std::int64_t>(pole_order - 1, 0);

    const std::int64_t last_node = qp.threshold + qp.period * (poly_degree + 1);
    const std::int64_t check_upto = std::max(rs.verified_through, last_node + qp.period);
    const auto values = expand_series(rs, static_cast<std::size_t>(check_upto) + 1);
    qp.exceptions.assign(values.begin(), values.begin() + qp.threshold);
    for (std::int64_t r = 0; r < qp.period; ++r) {
        // Residue class r mod period, starting at the first index >= threshold.
        std::int64_t first = qp.threshold + ((r - qp.threshold) % qp.period + qp.period) % qp.period;
        std::vector<std::int64_t> xs;
        std::vector<BigInt> ys;
        for (std::int64_t j = 0; j <= poly_degree; ++j) {
            xs.push_back(first + qp.period * j);
            ys.push_back(values[static_cast<std::size_t>(xs.back())]);
        }
        qp.polynomials.push_back(pole_order == 0 ? RatPoly{} : interpolate(xs, ys));
    }
    for (std::int64_t i = 0; i <= check_upto; ++i)
        if (qp.evaluate(i) != values[static_cast<std::size_t>(i)])
            throw std::logic_error("quasi-polynomial interpolation inconsistent at i=" + std::to_string(i));
    return qp;
}

// ---------------------------------------------------------------------------

namespace {

std::int64_t l1(const Exponent& w) { return std::accumulate(w.begin(), w.end(), std::int64_t{0}); }

MultiPoly expand_factors(const std::vector<MultiFactor>& f, std::size_t arity) {
    MultiPoly p;
    add_term(p, Exponent(arity, 0), 1);
    for (const auto& x : f)
        for (std::int64_t e = 0; e < x.exponent; ++e) p = mul(p, one_minus_monomial(x.w));
    return p;
}

MultiPoly substitute(const IntPoly& f, const Exponent& w) {
    MultiPoly p;
    for (std::size_t j = 0; j < f.size(); ++j) add_term(p, scale(w, static_cast<std::int64_t>(j)), f[j]);
    return p;
}

// Numerator and denominator with their common factor removed. The
// denominator is kept as multiplicities of the irreducible factors
// Psi_k(z^w) with w primitive, where 1 - z^{g w} = prod_{k | g} Psi_k(z^w).
struct CyclotomicForm {
    MultiPoly numerator;
    std::map<std::pair<Exponent, std::int64_t>, std::int64_t> factors;
};

CyclotomicForm cyclotomic_form(const MultivariateRationalSeries& s) {
    CyclotomicForm out{s.numerator, {}};
    for (const auto& f : s.denominator) {
        std::int64_t g = 0;
        for (auto x : f.w) g = std::gcd(g, x);
        Exponent w = f.w;
        for (auto& x : w) x /= g;
        for (auto k : divisors(g)) out.factors[{w, k}] += f.exponent;
    }
    if (out.numerator.empty()) {
        out.factors.clear();
        return out;
    }
    for (auto& [key, m] : out.factors) {
        const IntPoly psi = unit_cyclotomic(key.second);
        while (m > 0) {
            auto q = divide_in_monomial(out.numerator, key.first, psi);
            if (!q) break;
            out.numerator = std::move(*q);
            --m;
        }
    }
    std::erase_if(out.factors, [](const auto& kv) { return kv.second == 0; });
    return out;
}

} // namespace

std::vector<MultiFactor> normalize_factors(std::vector<MultiFactor> f) {
    for (const auto& x : f) {
        if (x.exponent < 0) throw InputError("negative factor exponent");
        if (std::any_of(x.w.begin(), x.w.end(), [](auto v) { return v < 0; }) || l1(x.w) == 0)
            throw InputError("denominator factor exponents must be nonnegative and nonzero");
    }
    std::sort(f.begin(), f.end(), [](const MultiFactor& a, const MultiFactor& b) {
        auto la = l1(a.w), lb = l1(b.w);
        return la != lb ? la < lb : a.w < b.w;
    });
    std::vector<MultiFactor> out;
    for (auto& x : f) {
        if (x.exponent == 0) continue;
        if (!out.empty() && out.back().w == x.w) out.back().exponent += x.exponent;
        else out.push_back(std::move(x));
    }
    return out;
}

MultiPoly MultivariateRationalSeries::expanded_denominator() const { return expand_factors(denominator, arity); }

MultivariateRationalSeries fit_multivariate(const BoxIndex& index, std::span<const std::int64_t> table,
                                            const std::vector<MultiFactor>& ansatz, const MultiFitOptions& opts) {
    const std::size_t d = index.arity();
    if (table.size() != index.size()) throw InputError("table size does not match its box");
    auto den = normalize_factors(ansatz);
    for (const auto& f : den)
        if (f.w.size() != d) throw InputError("factor arity does not match the table");
    const auto margin = opts.margin.empty() ? std::vector<std::int64_t>(d, 5) : opts.margin;
    if (margin.size() != d) throw InputError("margin arity does not match the table");
    std::vector<std::int64_t> numbox(d);
    for (std::size_t k = 0; k < d; ++k) {
        const std::int64_t allowed = index.box()[k] - margin[k];
        numbox[k] = opts.numerator_box ? opts.numerator_box->at(k) : allowed;
        if (numbox[k] < 0 || index.box()[k] < numbox[k] + margin[k])
            throw InputError("insufficient terms: table box too small on axis " + std::to_string(k + 1));
    }

    const MultiPoly dpoly = expand_factors(den, d);
    MultiPoly num;
    for (std::size_t i = 0; i < index.size(); ++i) {
        const auto a = index.unflat(i);
        BigInt v = 0;
        for (const auto& [b, c] : dpoly) {
            Exponent rest(d);
            bool ok = true;
            for (std::size_t k = 0; k < d; ++k) {
                rest[k] = a[k] - b[k];
                if (rest[k] < 0) ok = false;
            }
            if (ok) v += c * BigInt(static_cast<long>(table[index.flat(rest)]));
        }
        if (v == 0) continue;
        for (std::size_t k = 0; k < d; ++k)
            if (a[k] > numbox[k])
                throw MathError("no fit at this ansatz: numerator term at " + format_vector(a) +
                                " lies outside the numerator box " + format_vector(numbox));
        num.emplace(a, v);
    }
    MultivariateRationalSeries s;
    s.arity = d;
    s.numerator = std::move(num);
    s.denominator = std::move(den);
    s.verified_box = index.box();

    const auto r = cyclotomic_form(s);
    std::vector<std::int64_t> rd(d, 0), nd(d, 0);
    for (const auto& [key, m] : r.factors)
        for (std::size_t k = 0; k < d; ++k) rd[k] += m * degree(unit_cyclotomic(key.second)) * key.first[k];
    for (const auto& [a, _] : r.numerator)
        for (std::size_t k = 0; k < d; ++k) nd[k] = std::max(nd[k], a[k]);
    for (std::size_t k = 0; k < d; ++k)
        if (nd[k] + rd[k] + margin[k] > index.box()[k])
            throw InputError("insufficient terms: verification margin not met on axis " + std::to_string(k + 1));
    return s;
}

MultiLadderResult fit_multivariate_with_escalation(const BoxIndex& index, std::span<const std::int64_t> table,
                                                   const std::vector<MultiFactor>& ansatz,
                                                   const MultiFitOptions& opts) {
    std::ostringstream diag;
    auto base = normalize_factors(ansatz);
    auto sq = base;
    for (auto& f : sq) f.exponent *= 2;
    const std::pair<std::vector<MultiFactor>, const char*> rungs[] = {{base, "default ansatz"}, {sq, "squared ansatz"}};
    bool any_attempt = false;
    for (const auto& [den, label] : rungs) {
        try {
            auto s = fit_multivariate(index, table, den, opts);
            return {std::move(s), label};
        } catch (const MathError& e) {
            any_attempt = true;
            diag << "; " << label << ": " << e.what();
        } catch (const InputError& e) {
            diag << "; " << label << ": " << e.what();
        }
    }
    if (!any_attempt) throw InputError("insufficient terms for any ansatz" + diag.str());
    throw MathError("no multivariate fit on the escalation ladder" + diag.str());
}

MultivariateRationalSeries reduce(const MultivariateRationalSeries& s) {
    const auto form = cyclotomic_form(s);
    MultivariateRationalSeries out = s;
    out.numerator = form.numerator;
    out.denominator.clear();
    // Per primitive direction, cover by (1 - z^{k w}) from the largest k
    // down; divisors a factor needs beyond what remains go to the numerator.
    std::map<Exponent, std::map<std::int64_t, std::int64_t>> by_direction;
    for (const auto& [key, m] : form.factors)
        if (m > 0) by_direction[key.first][key.second] = m;
    for (auto& [w, mult] : by_direction) {
        for (auto it = mult.rbegin(); it != mult.rend(); ++it) {
            const auto [k, e] = *it;
            if (e <= 0) continue;
            out.denominator.push_back({scale(w, k), e});
            for (auto dv : divisors(k)) {
                auto& r = mult[dv];
                const std::int64_t missing = std::max<std::int64_t>(0, e - r);
                r = std::max<std::int64_t>(0, r - e);
                for (std::int64_t i = 0; i < missing; ++i)
                    out.numerator = mul(out.numerator, substitute(unit_cyclotomic(dv), w));
            }
        }
    }
    out.denominator = normalize_factors(std::move(out.denominator));
    return out;
}

std::vector<BigInt> expand_multivariate(const MultivariateRationalSeries& s, const BoxIndex& index) {
    if (index.arity() != s.arity) throw InputError("box arity does not match the series");
    const MultiPoly dpoly = s.expanded_denominator();
    std::vector<BigInt> f(index.size(), 0);
    for (std::size_t i = 0; i < index.size(); ++i) {
        const auto a = index.unflat(i);
        auto it = s.numerator.find(a);
        BigInt v = it == s.numerator.end() ? BigInt(0) : it->second;
        for (const auto& [b, c] : dpoly) {
            if (std::all_of(b.begin(), b.end(), [](auto x) { return x == 0; })) continue;
            Exponent rest(a.size());
            bool ok = true;
            for (std::size_t k = 0; k < a.size(); ++k) {
                rest[k] = a[k] - b[k];
                if (rest[k] < 0) ok = false;
            }
            if (ok) v -= c * f[index.flat(rest)];
        }
        f[i] = v;
    }
    return f;
}

MultivariateRationalSeries s_from_b(const MultivariateRationalSeries& b) {
    MultivariateRationalSeries s = b;
    for (std::size_t k = 0; k < s.arity; ++k) {
        Exponent e(s.arity, 0);
        e[k] = 1;
        auto it = std::find_if(s.denominator.begin(), s.denominator.end(),
                               [&](const MultiFactor& f) { return f.w == e && f.exponent > 0; });
        if (it != s.denominator.end()) --it->exponent;
        else s.numerator = mul(s.numerator, one_minus_monomial(e));
    }
    s.denominator = normalize_factors(std::move(s.denominator));
    return s;
}

RationalSeries specialize_to_univariate(const MultivariateRationalSeries& m) {
    RationalSeries rs;
    std::int64_t top = 0;
    for (const auto& [a, _] : m.numerator) top = std::max(top, l1(a));
    rs.numerator.assign(static_cast<std::size_t>(top) + 1, 0);
    for (const auto& [a, c] : m.numerator) rs.numerator[static_cast<std::size_t>(l1(a))] += c;
    rs.numerator = trim(std::move(rs.numerator));
    for (const auto& f : m.denominator) rs.denominator.push_back({l1(f.w), f.exponent});
    rs.denominator = normalize_factors(std::move(rs.denominator));
    rs.verified_through = m.verified_box.empty() ? -1 : *std::min_element(m.verified_box.begin(), m.verified_box.end());
    return canonicalize(rs);
}

MultivariateRationalSeries as_multivariate(const RationalSeries& rs) {
    MultivariateRationalSeries m;
    m.arity = 1;
    for (std::size_t k = 0; k < rs.numerator.size(); ++k)
        add_term(m.numerator, Exponent{static_cast<std::int64_t>(k)}, rs.numerator[k]);
    for (const auto& f : rs.denominator) m.denominator.push_back({Exponent{f.period}, f.exponent});
    m.verified_box = {rs.verified_through};
    return m;
}

std::string format_series(const MultivariateRationalSeries& s) {
    std::ostringstream os;
    os << "series d=" << s.arity << '\n';
    for (const auto& [a, c] : s.numerator) {
        os << "num";
        for (auto x : a) os << ' ' << x;
        os << ' ' << c.get_str() << '\n';
    }
    for (const auto& f : normalize_factors(s.denominator)) {
        os << "den";
        for (auto x : f.w) os << ' ' << x;
        os << " ^" << f.exponent << '\n';
    }
    os << "verified";
    for (auto x : s.verified_box) os << ' ' << x;
    os << '\n';
    return os.str();
}

std::string format_series(const RationalSeries& rs) { return format_series(as_multivariate(rs)); }

std::string pretty(const RationalSeries& rs) {
    std::ostringstream os;
    os << '(';
    bool first = true;
    for (std::size_t k = 0; k < rs.numerator.size(); ++k) {
        const BigInt& c = rs.numerator[k];
        if (c == 0) continue;
        BigInt mag = abs(c);
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << '-';
        first = false;
        if (mag != 1 || k == 0) os << mag.get_str();
        if (k >= 1) os << 't';
        if (k >= 2) os << '^' << k;
    }
    if (first) os << '0';
    os << ") / (";
    if (rs.denominator.empty()) os << '1';
    for (std::size_t i = 0; i < rs.denominator.size(); ++i) {
        const auto& f = rs.denominator[i];
        if (i) os << ' ';
        os << "(1 - t";
        if (f.period != 1) os << '^' << f.period;
        os << ')';
        if (f.exponent != 1) os << '^' << f.exponent;
    }
    os << ')';
    return os.str();
}

} // namespace perigrowth
