#include "perigrowth/vab.hpp"

#include "perigrowth/error.hpp"
#include "perigrowth/parallel.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace perigrowth {

namespace {

std::vector<std::string_view> tokens_of(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

// Lines with comments stripped, paired with 1-based line numbers.
std::vector<std::pair<std::size_t, std::vector<std::string_view>>> directives(std::string_view text) {
    std::vector<std::pair<std::size_t, std::vector<std::string_view>>> out;
    std::size_t lineno = 0;
    while (!text.empty()) {
        ++lineno;
        auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto toks = tokens_of(line);
        if (!toks.empty()) out.emplace_back(lineno, std::move(toks));
    }
    return out;
}

std::optional<std::int64_t> to_int(std::string_view s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
    return v;
}

std::int64_t int_token(std::size_t line, std::string_view s) {
    auto v = to_int(s);
    if (!v) throw ParseError(line, "expected an integer, got '" + std::string(s) + "'");
    return *v;
}

std::size_t index_token(std::size_t line, std::string_view s, std::string_view key, std::size_t limit) {
    if (s.substr(0, key.size()) != key) throw ParseError(line, "expected " + std::string(key) + "<index>");
    auto v = to_int(s.substr(key.size()));
    if (!v || *v < 0 || static_cast<std::size_t>(*v) >= limit)
        throw ParseError(line, "index out of range in '" + std::string(s) + "'");
    return static_cast<std::size_t>(*v);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::int64_t> identity_matrix(std::size_t n) {
    std::vector<std::int64_t> m(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
    return m;
}

std::vector<std::int64_t> mat_mul(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                                  std::size_t n) {
    std::vector<std::int64_t> c(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j)
                c[i * n + j] = checked_add(c[i * n + j], checked_mul(a[i * n + k], b[k * n + j]));
    return c;
}

// Bareiss fraction-free elimination.
BigInt determinant(const std::vector<std::int64_t>& m, std::size_t n) {
    if (n == 0) return 1;
    std::vector<BigInt> a(m.begin(), m.end());
    for (auto i = std::size_t{0}; i < n * n; ++i) a[i] = BigInt(static_cast<long>(m[i]));
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k * n + k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r * n + k] == 0) ++r;
            if (r == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[r * n + j]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
        prev = a[k * n + k];
    }
    return sign * a[n * n - 1];
}

void check_element(const VAGroup& g, const GroupElement& x) {
    if (x.v.size() != g.rank) throw InputError("element " + format_element(x) + " has the wrong rank");
    if (x.f >= g.order) throw InputError("element " + format_element(x) + " has an unknown finite part");
}

} // namespace

VAGroup VAGroup::free_abelian(std::size_t rank) {
    VAGroup g;
    g.rank = rank;
    g.order = 1;
    g.mult = {{0}};
    g.action = {identity_matrix(rank)};
    g.cocycle = {{LatticeVector(rank, 0)}};
    return g;
}

LatticeVector VAGroup::apply(std::size_t f, std::span<const std::int64_t> v) const {
    const auto& m = action.at(f);
    LatticeVector out(rank, 0);
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < rank; ++j) out[i] = checked_add(out[i], checked_mul(m[i * rank + j], v[j]));
    return out;
}

std::size_t VAGroup::finite_inverse(std::size_t f) const {
    for (std::size_t g = 0; g < order; ++g)
        if (mult[f][g] == 0) return g;
    throw InputError("finite part has no inverse");
}

ValidationReport validate_group(const VAGroup& g, std::size_t max_order) {
    ValidationReport r;
    const std::size_t k = g.order, n = g.rank;
    if (k == 0) {
        r.entries.push_back("finite order must be at least 1");
        return r;
    }
    if (k > max_order) {
        r.entries.push_back("finite order " + std::to_string(k) + " exceeds the cap " + std::to_string(max_order));
        return r;
    }
    bool table_ok = g.mult.size() == k;
    for (const auto& row : g.mult) {
        if (row.size() != k) table_ok = false;
        for (auto x : row)
            if (x >= k) table_ok = false;
    }
    if (!table_ok) {
        r.entries.push_back("mult is not a " + std::to_string(k) + "x" + std::to_string(k) + " table of indices");
        return r;
    }
    for (std::size_t f = 0; f < k; ++f)
        if (g.mult[0][f] != f || g.mult[f][0] != f) {
            r.entries.push_back("index 0 is not the identity of mult");
            break;
        }
    bool assoc = true;
    for (std::size_t a = 0; a < k && assoc; ++a)
        for (std::size_t b = 0; b < k && assoc; ++b)
            for (std::size_t c = 0; c < k && assoc; ++c)
                if (g.mult[g.mult[a][b]][c] != g.mult[a][g.mult[b][c]]) {
                    r.entries.push_back("mult is not associative at (" + std::to_string(a) + "," + std::to_string(b) +
                                        "," + std::to_string(c) + ")");
                    assoc = false;
                }
    for (std::size_t f = 0; f < k; ++f) {
        bool has_inverse = false;
        for (std::size_t h = 0; h < k; ++h)
            if (g.mult[f][h] == 0 && g.mult[h][f] == 0) has_inverse = true;
        if (!has_inverse) r.entries.push_back("element " + std::to_string(f) + " has no inverse");
    }

    bool action_ok = g.action.size() == k;
    for (std::size_t f = 0; f < g.action.size(); ++f)
        if (g.action[f].size() != n * n) {
            r.entries.push_back("action f=" + std::to_string(f) + ": dimension mismatch");
            action_ok = false;
        }
    if (g.action.size() != k) r.entries.push_back("expected one action matrix per finite element");
    if (action_ok) {
        if (g.action[0] != identity_matrix(n)) r.entries.push_back("action of the identity is not the identity");
        for (std::size_t f = 0; f < k; ++f) {
            auto d = determinant(g.action[f], n);
            if (d != 1 && d != -1)
                r.entries.push_back("action f=" + std::to_string(f) + " has determinant " + d.get_str() +
                                    ", not invertible over the integers");
        }
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b)
                if (mat_mul(g.action[a], g.action[b], n) != g.action[g.mult[a][b]])
                    r.entries.push_back("action is not a homomorphism at (" + std::to_string(a) + "," +
                                        std::to_string(b) + ")");
    }

    bool cocycle_ok = g.cocycle.size() == k;
    for (const auto& row : g.cocycle) {
        if (row.size() != k) cocycle_ok = false;
        for (const auto& c : row)
            if (c.size() != n) cocycle_ok = false;
    }
    if (!cocycle_ok) {
        r.entries.push_back("cocycle: dimension mismatch");
        return r;
    }
    for (std::size_t f = 0; f < k; ++f)
        if (!is_zero(g.cocycle[0][f]) || !is_zero(g.cocycle[f][0])) {
            r.entries.push_back("cocycle is not normalized at " + std::to_string(f));
        }
    if (!action_ok) return r;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            for (std::size_t c = 0; c < k; ++c) {
                auto lhs = add(g.apply(a, g.cocycle[b][c]), g.cocycle[a][g.mult[b][c]]);
                auto rhs = add(g.cocycle[a][b], g.cocycle[g.mult[a][b]][c]);
                if (lhs != rhs)
                    r.entries.push_back("cocycle identity fails at (" + std::to_string(a) + "," + std::to_string(b) +
                                        "," + std::to_string(c) + ")");
            }
    return r;
}

GroupElement identity(const VAGroup& g) { return {LatticeVector(g.rank, 0), 0}; }

GroupElement multiply(const VAGroup& g, const GroupElement& a, const GroupElement& b) {
    GroupElement out{add(a.v, g.apply(a.f, b.v)), g.mult[a.f][b.f]};
    add_in_place(out.v, g.cocycle[a.f][b.f]);
    return out;
}

GroupElement inverse(const VAGroup& g, const GroupElement& a) {
    const std::size_t fi = g.finite_inverse(a.f);
    return {negate(g.apply(fi, add(a.v, g.cocycle[a.f][fi]))), fi};
}

GroupSpec parse_vag(std::string_view text) {
    GroupSpec spec;
    VAGroup& g = spec.group;
    std::optional<std::size_t> rank, order;
    bool have_mult = false;
    std::set<std::size_t> actions;
    std::set<std::string, std::less<>> names;
    auto init = [&] {
        g.rank = *rank;
        g.order = *order;
        g.mult.assign(g.order, std::vector<std::size_t>(g.order, 0));
        for (std::size_t f = 0; f < g.order; ++f) g.mult[0][f] = g.mult[f][0] = f;
        g.action.assign(g.order, identity_matrix(g.rank));
        g.cocycle.assign(g.order, std::vector<LatticeVector>(g.order, LatticeVector(g.rank, 0)));
    };
    for (const auto& [line, t] : directives(text)) {
        const auto& key = t[0];
        if (key == "rank") {
            if (rank) throw ParseError(line, "duplicate rank");
            if (t.size() != 2) throw ParseError(line, "expected: rank <n>");
            auto v = int_token(line, t[1]);
            if (v < 0) throw ParseError(line, "rank must be nonnegative");
            rank = static_cast<std::size_t>(v);
        } else if (key == "finite") {
            if (order) throw ParseError(line, "duplicate finite");
            if (t.size() != 2) throw ParseError(line, "expected: finite <k>");
            auto v = int_token(line, t[1]);
            if (v < 1) throw ParseError(line, "finite order must be positive");
            order = static_cast<std::size_t>(v);
        } else {
            if (!rank || !order) throw ParseError(line, "rank and finite must come first");
            if (g.action.empty()) init();
            const std::size_t n = g.rank, k = g.order;
            if (key == "mult") {
                if (have_mult) throw ParseError(line, "duplicate mult");
                if (t.size() != 1 + k * k) throw ParseError(line, "mult needs " + std::to_string(k * k) + " indices");
                for (std::size_t i = 0; i < k * k; ++i) {
                    auto v = int_token(line, t[1 + i]);
                    if (v < 0 || static_cast<std::size_t>(v) >= k) throw ParseError(line, "mult index out of range");
                    g.mult[i / k][i % k] = static_cast<std::size_t>(v);
                }
                have_mult = true;
            } else if (key == "action") {
                if (t.size() != 2 + n * n) throw ParseError(line, "action needs f=<i> and " + std::to_string(n * n) + " integers");
                auto f = index_token(line, t[1], "f=", k);
                if (f == 0) throw ParseError(line, "the action of f=0 is fixed to the identity");
                if (!actions.insert(f).second) throw ParseError(line, "duplicate action for f=" + std::to_string(f));
                for (std::size_t i = 0; i < n * n; ++i) g.action[f][i] = int_token(line, t[2 + i]);
            } else if (key == "cocycle") {
                if (t.size() != 3 + n) throw ParseError(line, "cocycle needs f=<i> g=<j> and " + std::to_string(n) + " integers");
                auto f = index_token(line, t[1], "f=", k);
                auto h = index_token(line, t[2], "g=", k);
                for (std::size_t i = 0; i < n; ++i) g.cocycle[f][h][i] = int_token(line, t[3 + i]);
            } else if (key == "gen") {
                if (t.size() != 4 + n) throw ParseError(line, "dimension mismatch: gen needs a name, " + std::to_string(n) + " integers, f and a weight");
                WeightedGenerator s;
                s.name = std::string(t[1]);
                if (!names.insert(s.name).second) throw ParseError(line, "duplicate generator name " + s.name);
                for (std::size_t i = 0; i < n; ++i) s.element.v.push_back(int_token(line, t[2 + i]));
                auto f = int_token(line, t[2 + n]);
                if (f < 0 || static_cast<std::size_t>(f) >= k) throw ParseError(line, "finite part out of range");
                s.element.f = static_cast<std::size_t>(f);
                s.weight = int_token(line, t[3 + n]);
                if (s.weight < 1) throw ParseError(line, "non-positive weight");
                spec.generators.push_back(std::move(s));
            } else {
                throw ParseError(line, "unknown directive '" + std::string(key) + "'");
            }
        }
    }
    if (!rank || !order) throw ParseError(0, "missing rank or finite");
    if (g.action.empty()) init();
    if (*order > 1 && !have_mult) throw ParseError(0, "mult is required when finite > 1");
    return spec;
}

GroupSpec load_vag(const std::string& path) {
    try {
        return parse_vag(read_file(path));
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
}

GroupElement parse_element(std::string_view token, const VAGroup& g) {
    if (token.size() < 3 || token.front() != '[' || token.back() != ']')
        throw InputError("expected [v1,...,vn;f], got '" + std::string(token) + "'");
    auto body = token.substr(1, token.size() - 2);
    auto semi = body.find(';');
    if (semi == std::string_view::npos) throw InputError("missing ';' in '" + std::string(token) + "'");
    GroupElement x;
    auto vs = body.substr(0, semi);
    while (!vs.empty()) {
        auto comma = vs.find(',');
        auto v = to_int(vs.substr(0, comma));
        if (!v) throw InputError("bad integer in '" + std::string(token) + "'");
        x.v.push_back(*v);
        vs = comma == std::string_view::npos ? std::string_view{} : vs.substr(comma + 1);
    }
    auto f = to_int(body.substr(semi + 1));
    if (!f || *f < 0) throw InputError("bad finite part in '" + std::string(token) + "'");
    x.f = static_cast<std::size_t>(*f);
    if (x.v.size() != g.rank) throw InputError("dimension mismatch in '" + std::string(token) + "'");
    if (x.f >= g.order) throw InputError("finite part out of range in '" + std::string(token) + "'");
    return x;
}

std::string format_element(const GroupElement& x) {
    std::string s = "[";
    for (std::size_t i = 0; i < x.v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(x.v[i]);
    }
    return s + ';' + std::to_string(x.f) + ']';
}

std::string format_tuple(std::span<const GroupElement> t) {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ' ';
        s += format_element(t[i]);
    }
    return s;
}

PeriodicVertex to_vertex(const GroupElement& x) { return {x.f, x.v}; }
GroupElement to_element(const PeriodicVertex& v) { return {v.coord, v.orbit}; }

CayleyGraph build_cayley(const VAGroup& g, const WeightedGenSet& s) {
    if (auto r = validate_group(g); !r.ok()) throw InputError("invalid group: " + r.entries.front());
    for (const auto& gen : s) {
        check_element(g, gen.element);
        if (gen.weight < 1) throw InputError("generator " + gen.name + " has non-positive weight");
    }
    std::vector<std::string> orbits;
    for (std::size_t f = 0; f < g.order; ++f) orbits.push_back("f" + std::to_string(f));
    std::vector<EdgeOrbit> edges;
    for (std::size_t f = 0; f < g.order; ++f)
        for (const auto& gen : s) {
            const auto& x = gen.element;
            edges.push_back({edges.size(), f, g.mult[f][x.f], add(g.apply(f, x.v), g.cocycle[f][x.f]), gen.weight});
        }
    CayleyGraph c{QuotientGraph(g.rank, std::move(orbits), std::move(edges)), {}};
    c.base = c.graph.origin(0);
    return c;
}

EquationSystem parse_equations(std::string_view text, const VAGroup& g) {
    EquationSystem sys;
    bool have_vars = false;
    for (const auto& [line, t] : directives(text)) {
        if (t[0] == "vars") {
            if (have_vars) throw ParseError(line, "duplicate vars");
            if (t.size() != 2) throw ParseError(line, "expected: vars <d>");
            auto d = int_token(line, t[1]);
            if (d < 1) throw ParseError(line, "vars must be positive");
            sys.arity = static_cast<std::size_t>(d);
            have_vars = true;
        } else if (t[0] == "word") {
            if (!have_vars) throw ParseError(line, "vars must come first");
            EquationWord w;
            for (std::size_t i = 1; i < t.size(); ++i) {
                auto tok = t[i];
                EquationToken e;
                if (tok.front() == '[') {
                    e.kind = EquationToken::Kind::Constant;
                    try {
                        e.constant = parse_element(tok, g);
                    } catch (const InputError& err) {
                        throw ParseError(line, err.what());
                    }
                } else if (tok.front() == 'X') {
                    tok.remove_prefix(1);
                    if (!tok.empty() && tok.back() == '~') {
                        e.kind = EquationToken::Kind::Inverse;
                        tok.remove_suffix(1);
                    }
                    auto idx = to_int(tok);
                    if (!idx || *idx < 1 || static_cast<std::size_t>(*idx) > sys.arity)
                        throw ParseError(line, "variable index out of range in '" + std::string(t[i]) + "'");
                    e.variable = static_cast<std::size_t>(*idx - 1);
                } else {
                    throw ParseError(line, "unknown token '" + std::string(tok) + "'");
                }
                w.push_back(std::move(e));
            }
            sys.words.push_back(std::move(w));
        } else {
            throw ParseError(line, "unknown directive '" + std::string(t[0]) + "'");
        }
    }
    if (!have_vars) throw ParseError(0, "missing vars");
    return sys;
}

EquationSystem load_equations(const std::string& path, const VAGroup& g) {
    try {
        return parse_equations(read_file(path), g);
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
}

GroupElement evaluate_word(const VAGroup& g, const EquationWord& w, std::span<const GroupElement> assignment) {
    GroupElement acc = identity(g);
    for (const auto& t : w) {
        switch (t.kind) {
        case EquationToken::Kind::Variable:
            acc = multiply(g, acc, assignment[t.variable]);
            break;
        case EquationToken::Kind::Inverse:
            acc = multiply(g, acc, inverse(g, assignment[t.variable]));
            break;
        case EquationToken::Kind::Constant:
            acc = multiply(g, acc, t.constant);
            break;
        }
    }
    return acc;
}

std::vector<GroupTuple> solve_box(const VAGroup& g, const EquationSystem& sys, std::int64_t radius,
                                  const SolveOptions& opts) {
    if (radius < 0) throw InputError("box radius must be nonnegative");
    if (auto r = validate_group(g); !r.ok()) throw InputError("invalid group: " + r.entries.front());
    for (const auto& w : sys.words)
        for (const auto& t : w)
            if (t.kind != EquationToken::Kind::Constant && t.variable >= sys.arity)
                throw InputError("variable index out of range");

    // Candidates for one coordinate, sorted.
    std::vector<GroupElement> cand;
    const auto side = static_cast<std::size_t>(2 * radius + 1);
    double total = static_cast<double>(g.order);
    for (std::size_t i = 0; i < g.rank; ++i) total *= static_cast<double>(side);
    const double tuples = std::pow(total, static_cast<double>(sys.arity));
    if (tuples > static_cast<double>(opts.max_tuples))
        throw ResourceLimitError("solve_box would enumerate " + std::to_string(static_cast<long double>(tuples)) +
                                 " tuples, above the guard " + std::to_string(opts.max_tuples));
    LatticeVector v(g.rank, -radius);
    while (true) {
        for (std::size_t f = 0; f < g.order; ++f) cand.push_back({v, f});
        std::size_t i = g.rank;
        while (i > 0 && v[i - 1] == radius) v[--i] = -radius;
        if (i == 0) break;
        ++v[i - 1];
    }
    std::sort(cand.begin(), cand.end());

    const GroupElement e = identity(g);
    std::vector<std::vector<GroupTuple>> slots(cand.size());
    parallel_for(cand.size(), opts.threads, [&](std::size_t first) {
        std::vector<std::size_t> idx(sys.arity, 0);
        idx[0] = first;
        GroupTuple t(sys.arity);
        while (true) {
            for (std::size_t k = 0; k < sys.arity; ++k) t[k] = cand[idx[k]];
            if (std::all_of(sys.words.begin(), sys.words.end(),
                            [&](const EquationWord& w) { return evaluate_word(g, w, t) == e; }))
                slots[first].push_back(t);
            std::size_t k = sys.arity;
            while (k > 1 && idx[k - 1] + 1 == cand.size()) idx[--k] = 0;
            if (k == 1) break;
            ++idx[k - 1];
        }
    });
    std::vector<GroupTuple> out;
    for (auto& s : slots) std::move(s.begin(), s.end(), std::back_inserter(out));
    return out;
}

MonoidModuleSet parse_monoid_module_set(std::string_view text, const VAGroup& g) {
    MonoidModuleSet u;
    bool have_arity = false;
    bool have_shift = true;
    std::size_t piece_line = 0;
    for (const auto& [line, t] : directives(text)) {
        if (t[0] == "arity") {
            if (have_arity) throw ParseError(line, "duplicate arity");
            if (t.size() != 2) throw ParseError(line, "expected: arity <d>");
            auto d = int_token(line, t[1]);
            if (d < 1) throw ParseError(line, "arity must be positive");
            u.arity = static_cast<std::size_t>(d);
            have_arity = true;
        } else if (!have_arity) {
            throw ParseError(line, "arity must come first");
        } else if (t[0] == "piece") {
            if (t.size() != 1) throw ParseError(line, "piece takes no arguments");
            if (!have_shift) throw ParseError(piece_line, "piece without a shift line");
            u.pieces.emplace_back();
            have_shift = false;
            piece_line = line;
        } else if (t[0] == "ugen") {
            if (u.pieces.empty()) throw ParseError(line, "ugen outside a piece");
            const std::size_t want = u.arity * g.rank;
            if (t.size() != 1 + want)
                throw ParseError(line, "dimension mismatch: ugen needs " + std::to_string(want) + " integers");
            LatticeVector x;
            for (std::size_t i = 0; i < want; ++i) x.push_back(int_token(line, t[1 + i]));
            u.pieces.back().ugens.push_back(std::move(x));
        } else if (t[0] == "shift") {
            if (u.pieces.empty()) throw ParseError(line, "shift outside a piece");
            if (have_shift) throw ParseError(line, "duplicate shift in a piece");
            if (t.size() != 1 + u.arity)
                throw ParseError(line, "shift needs " + std::to_string(u.arity) + " elements");
            for (std::size_t i = 0; i < u.arity; ++i) {
                try {
                    u.pieces.back().shift.push_back(parse_element(t[1 + i], g));
                } catch (const InputError& err) {
                    throw ParseError(line, err.what());
                }
            }
            have_shift = true;
        } else {
            throw ParseError(line, "unknown directive '" + std::string(t[0]) + "'");
        }
    }
    if (!have_arity) throw ParseError(0, "missing arity");
    if (!have_shift) throw ParseError(piece_line, "piece without a shift line");
    return u;
}

MonoidModuleSet load_monoid_module_set(const std::string& path, const VAGroup& g) {
    try {
        return parse_monoid_module_set(read_file(path), g);
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::vector<GroupTuple> enumerate_monoid_module_set(const VAGroup& g, const MonoidModuleSet& u,
                                                    const DistanceMap& dm, std::span<const std::int64_t> box,
                                                    const EnumerateOptions& opts) {
    const std::size_t d = u.arity, n = g.rank;
    if (box.size() != d) throw InputError("box arity does not match the set");
    const auto top = *std::max_element(box.begin(), box.end());
    if (top > dm.radius) throw InputError("Cayley ball radius " + std::to_string(dm.radius) + " is smaller than the box");

    // Lattice bounding box of the ball, widened around every shift.
    LatticeVector lo(n, 0), hi(n, 0);
    for (const auto& [v, dist] : dm.entries) {
        if (dist > top) continue;
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = std::min(lo[i], v.coord[i]);
            hi[i] = std::max(hi[i], v.coord[i]);
        }
    }
    std::int64_t unorm = 0;
    for (const auto& p : u.pieces) {
        for (const auto& x : p.ugens) {
            if (x.size() != d * n) throw InputError("monoid generator has the wrong length");
            for (auto c : x) unorm = std::max(unorm, std::abs(c));
        }
        if (p.shift.size() != d) throw InputError("shift arity does not match the set");
        for (const auto& s : p.shift) {
            check_element(g, s);
            for (std::size_t i = 0; i < n; ++i) {
                lo[i] = std::min(lo[i], s.v[i]);
                hi[i] = std::max(hi[i], s.v[i]);
            }
        }
    }
    // Any monoid element in the region is reachable by generator steps that
    // stay within D * max|u| of the segment from the shift (Steinitz).
    const auto slack = checked_mul(2 * static_cast<std::int64_t>(d * n), unorm);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = checked_add(lo[i], -slack);
        hi[i] = checked_add(hi[i], slack);
    }

    std::map<GroupTuple, std::size_t> owner;
    std::size_t states = 0;
    for (std::size_t pi = 0; pi < u.pieces.size(); ++pi) {
        const auto& piece = u.pieces[pi];
        LatticeVector start(d * n);
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t i = 0; i < n; ++i) start[k * n + i] = piece.shift[k].v[i];
        std::unordered_set<LatticeVector, LatticeVectorHash> seen{start};
        std::deque<LatticeVector> queue{start};
        while (!queue.empty()) {
            auto p = std::move(queue.front());
            queue.pop_front();
            if (++states > opts.max_states) throw ResourceLimitError("monoid-module enumeration exceeded its state cap");
            GroupTuple t(d);
            bool in_box = true;
            for (std::size_t k = 0; k < d; ++k) {
                t[k] = {LatticeVector(p.begin() + static_cast<std::ptrdiff_t>(k * n),
                                      p.begin() + static_cast<std::ptrdiff_t>((k + 1) * n)),
                        piece.shift[k].f};
                auto dist = dm.distance(to_vertex(t[k]));
                if (!dist || *dist > box[k]) in_box = false;
            }
            if (in_box) {
                auto [it, fresh] = owner.emplace(t, pi);
                if (!fresh && it->second != pi)
                    throw InputError("pieces " + std::to_string(it->second + 1) + " and " + std::to_string(pi + 1) +
                                     " overlap at " + format_tuple(t));
            }
            for (const auto& x : piece.ugens) {
                auto q = add(p, x);
                bool inside = true;
                for (std::size_t j = 0; j < q.size(); ++j)
                    if (q[j] < lo[j % n] || q[j] > hi[j % n]) inside = false;
                if (inside && seen.insert(q).second) queue.push_back(std::move(q));
            }
        }
    }
    std::vector<GroupTuple> out;
    out.reserve(owner.size());
    for (auto& [t, _] : owner) out.push_back(t);
    return out;
}

RelativeCountTable relative_growth_terms(const VAGroup& g, const WeightedGenSet& s, std::span<const GroupTuple> tuples,
                                         std::vector<std::int64_t> box, std::optional<std::int64_t> lattice_radius,
                                         const BallOptions& opts) {
    if (box.empty()) throw InputError("relative counts need arity >= 1");
    const auto cayley = build_cayley(g, s);
    const auto top = *std::max_element(box.begin(), box.end());
    const auto dm = distances_upto(cayley.graph, cayley.base, top, opts);
    if (lattice_radius) {
        for (const auto& [v, _] : dm.entries)
            for (auto c : v.coord)
                if (std::abs(c) > *lattice_radius)
                    throw InputError("lattice box radius " + std::to_string(*lattice_radius) +
                                     " does not cover the ball of radius " + std::to_string(top));
    }
    std::vector<VertexTuple> kept;
    for (const auto& t : tuples) {
        if (t.size() != box.size()) throw InputError("tuple arity does not match the box");
        VertexTuple vt;
        bool inside = true;
        for (const auto& x : t) {
            vt.push_back(to_vertex(x));
            if (!dm.distance(vt.back())) inside = false;
        }
        if (inside) kept.push_back(std::move(vt));
    }
    return relative_counts(dm, kept, std::move(box));
}

std::vector<MultiFactor> default_relative_ansatz(const CayleyGraph& cayley, std::size_t arity,
                                                 const MonoidModuleSet* u, const DistanceMap& dm,
                                                 const CycleOptions& opts) {
    std::set<std::int64_t> weights{1};
    for (const auto& c : enumerate_cycles(cayley.graph, opts)) weights.insert(walk_weight(cayley.graph, c.edges));
    std::set<Exponent> ws;
    for (std::size_t k = 0; k < arity; ++k)
        for (auto w : weights) {
            Exponent e(arity, 0);
            e[k] = w;
            ws.insert(e);
        }
    if (u) {
        const std::size_t n = cayley.graph.dim();
        for (const auto& p : u->pieces)
            for (const auto& x : p.ugens) {
                Exponent e(arity, 0);
                bool finite = true;
                for (std::size_t k = 0; k < arity && finite; ++k) {
                    PeriodicVertex v{0, LatticeVector(x.begin() + static_cast<std::ptrdiff_t>(k * n),
                                                      x.begin() + static_cast<std::ptrdiff_t>((k + 1) * n))};
                    auto dist = dm.distance(v);
                    if (!dist) finite = false;
                    else e[k] = *dist;
                }
                if (finite && std::any_of(e.begin(), e.end(), [](auto c) { return c != 0; })) ws.insert(e);
            }
    }
    std::vector<MultiFactor> out;
    for (auto& w : ws) out.push_back({w, 1});
    return normalize_factors(std::move(out));
}

std::vector<std::int64_t> univariate_terms(const RelativeCountTable& t) {
    const auto& box = t.index.box();
    const auto top = *std::min_element(box.begin(), box.end());
    std::vector<std::int64_t> u(static_cast<std::size_t>(top) + 1, 0);
    for (std::size_t i = 0; i < t.index.size(); ++i) {
        auto a = t.index.unflat(i);
        std::int64_t s = 0;
        for (auto x : a) s += x;
        if (s <= top) u[static_cast<std::size_t>(s)] += t.counts_s[i];
    }
    return u;
}

} // namespace perigrowth
