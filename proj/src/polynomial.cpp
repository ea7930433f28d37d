#include "perigrowth/polynomial.hpp"

#include "perigrowth/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace perigrowth {

IntPoly trim(IntPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

RatPoly trim(RatPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

std::int64_t degree(const IntPoly& p) {
    for (std::size_t k = p.size(); k-- > 0;)
        if (p[k] != 0) return static_cast<std::int64_t>(k);
    return -1;
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return trim(std::move(r));
}

IntPoly add(const IntPoly& a, const IntPoly& b) {
    IntPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return trim(std::move(r));
}

IntPoly mul_truncated(const IntPoly& a, const IntPoly& b, std::size_t max_degree) {
    IntPoly r(max_degree + 1, 0);
    for (std::size_t i = 0; i < a.size() && i <= max_degree; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= max_degree; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

IntPoly one_minus_t_pow(std::int64_t w) {
    if (w < 1) throw InputError("factor period must be >= 1");
    IntPoly p(static_cast<std::size_t>(w) + 1, 0);
    p[0] = 1;
    p.back() = -1;
    return p;
}

IntPoly pow(const IntPoly& p, std::int64_t e) {
    IntPoly r{1};
    for (std::int64_t k = 0; k < e; ++k) r = mul(r, p);
    return r;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> d;
    for (std::int64_t k = 1; k <= n; ++k)
        if (n % k == 0) d.push_back(k);
    return d;
}

IntPoly unit_cyclotomic(std::int64_t n) {
    IntPoly p = one_minus_t_pow(n);
    for (auto d : divisors(n)) {
        if (d == n) continue;
        auto q = divide_exact(p, unit_cyclotomic(d));
        if (!q) throw std::logic_error("cyclotomic division failed");
        p = std::move(*q);
    }
    return p;
}

namespace {

RatPoly to_rat(const IntPoly& p) {
    RatPoly r;
    r.reserve(p.size());
    for (const auto& c : p) r.emplace_back(c);
    return r;
}

// Long division over Q; returns {quotient, remainder}.
std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    a = trim(std::move(a));
    RatPoly q;
    const std::size_t db = b.size() - 1;
    if (a.size() >= b.size()) q.assign(a.size() - db, 0);
    while (a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        Rational c = a.back() / b.back();
        q[shift] = c;
        for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= c * b[k];
        a = trim(std::move(a));
    }
    return {trim(std::move(q)), std::move(a)};
}

IntPoly primitive(const RatPoly& p) {
    if (p.empty()) return {};
    BigInt den = 1;
    for (const auto& c : p) den = lcm(den, BigInt(c.get_den()));
    IntPoly r;
    r.reserve(p.size());
    BigInt content = 0;
    for (const auto& c : p) {
        BigInt v = BigInt(c.get_num()) * (den / BigInt(c.get_den()));
        content = gcd(content, v);
        r.push_back(v);
    }
    for (auto& c : r) c /= content;
    auto lowest = std::find_if(r.begin(), r.end(), [](const BigInt& c) { return c != 0; });
    if (lowest != r.end() && *lowest < 0)
        for (auto& c : r) c = -c;
    return r;
}

} // namespace

std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b) {
    auto [q, r] = divmod(to_rat(a), to_rat(trim(b)));
    if (!r.empty()) return std::nullopt;
    IntPoly out;
    for (const auto& c : q) {
        if (c.get_den() != 1) return std::nullopt;
        out.emplace_back(c.get_num());
    }
    return out;
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    RatPoly x = trim(to_rat(a));
    RatPoly y = trim(to_rat(b));
    while (!y.empty()) {
        auto r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return primitive(x);
}

IntPoly to_int_poly(const std::vector<std::int64_t>& c) {
    IntPoly p;
    for (auto v : c) p.emplace_back(static_cast<long>(v));
    return trim(std::move(p));
}

void add_term(MultiPoly& p, const Exponent& a, const BigInt& c) {
    if (c == 0) return;
    auto [it, inserted] = p.try_emplace(a, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

MultiPoly mul(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Exponent e(ea.size());
            for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
            add_term(r, e, ca * cb);
        }
    return r;
}

MultiPoly one_minus_monomial(const Exponent& w) {
    MultiPoly p;
    add_term(p, Exponent(w.size(), 0), 1);
    add_term(p, w, -1);
    return p;
}

std::optional<MultiPoly> divide_by_binomial(const MultiPoly& p, const Exponent& w) {
    // An exact quotient q satisfies q(a) = sum_k p(a - k w) and is supported
    // below the componentwise maximum exponent of p.
    if (std::all_of(w.begin(), w.end(), [](auto x) { return x == 0; })) return std::nullopt;
    if (p.empty()) return MultiPoly{};
    const std::size_t d = w.size();
    Exponent top(d, 0);
    for (const auto& [e, _] : p)
        for (std::size_t k = 0; k < d; ++k) top[k] = std::max(top[k], e[k]);
    auto below_top = [&](const Exponent& a) {
        for (std::size_t k = 0; k < d; ++k)
            if (a[k] > top[k]) return false;
        return true;
    };
    MultiPoly q;
    for (const auto& [e, _] : p) {
        for (Exponent a = e; below_top(a);) {
            if (!q.contains(a)) {
                BigInt sum = 0;
                Exponent b = a;
                while (true) {
                    if (auto it = p.find(b); it != p.end()) sum += it->second;
                    bool ok = true;
                    for (std::size_t k = 0; k < d; ++k) {
                        b[k] -= w[k];
                        if (b[k] < 0) ok = false;
                    }
                    if (!ok) break;
                }
                q.emplace(a, sum);
            }
            for (std::size_t k = 0; k < d; ++k) a[k] += w[k];
        }
    }
    std::erase_if(q, [](const auto& kv) { return kv.second == 0; });
    if (mul(q, one_minus_monomial(w)) != p) return std::nullopt;
    return q;
}

std::optional<MultiPoly> divide_in_monomial(const MultiPoly& p, const Exponent& w, const IntPoly& f) {
    if (std::all_of(w.begin(), w.end(), [](auto x) { return x == 0; })) return std::nullopt;
    // Monomials of p split into lines base + j w; f(z^w) maps each line to
    // itself, so the division happens line by line.
    std::map<Exponent, IntPoly> lines;
    for (const auto& [a, c] : p) {
        std::int64_t j = -1;
        for (std::size_t k = 0; k < w.size(); ++k)
            if (w[k] > 0) j = j < 0 ? a[k] / w[k] : std::min(j, a[k] / w[k]);
        Exponent base = a;
        for (std::size_t k = 0; k < w.size(); ++k) base[k] -= j * w[k];
        auto& line = lines[base];
        if (line.size() <= static_cast<std::size_t>(j)) line.resize(static_cast<std::size_t>(j) + 1, 0);
        line[static_cast<std::size_t>(j)] = c;
    }
    MultiPoly q;
    for (auto& [base, line] : lines) {
        auto r = divide_exact(trim(std::move(line)), f);
        if (!r) return std::nullopt;
        for (std::size_t j = 0; j < r->size(); ++j) {
            Exponent a = base;
            for (std::size_t k = 0; k < w.size(); ++k) a[k] += static_cast<std::int64_t>(j) * w[k];
            add_term(q, a, (*r)[j]);
        }
    }
    return q;
}

} // namespace perigrowth
