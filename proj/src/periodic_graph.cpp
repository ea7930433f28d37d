#include "perigrowth/periodic_graph.hpp"

#include "perigrowth/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <fstream>
#include <set>
#include <sstream>

namespace perigrowth {

QuotientGraph::QuotientGraph(std::size_t dim, std::vector<std::string> orbits, std::vector<EdgeOrbit> edges)
    : dim_(dim), orbits_(std::move(orbits)), edges_(std::move(edges)), out_(orbits_.size()) {
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        edges_[i].id = i;
        if (edges_[i].src < out_.size()) out_[edges_[i].src].push_back(i);
    }
}

OrbitId QuotientGraph::orbit_index(std::string_view name) const {
    auto it = std::find(orbits_.begin(), orbits_.end(), name);
    if (it == orbits_.end()) throw InputError("unknown orbit '" + std::string(name) + "'");
    return static_cast<OrbitId>(it - orbits_.begin());
}

std::int64_t QuotientGraph::max_weight() const noexcept {
    std::int64_t w = 0;
    for (const auto& e : edges_) w = std::max(w, e.weight);
    return w;
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
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

std::int64_t parse_int(std::string_view tok, std::size_t line) {
    std::int64_t v = 0;
    const char* first = tok.data();
    if (!tok.empty() && tok.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || first == tok.data() + tok.size())
        throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
    return v;
}

} // namespace

QuotientGraph parse_periodic_graph(std::string_view text) {
    std::optional<std::size_t> dim;
    std::vector<std::string> orbits;
    std::vector<EdgeOrbit> edges;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto toks = tokenize(line);
        if (toks.empty()) continue;

        const auto& kw = toks[0];
        if (kw == "dim") {
            if (dim) throw ParseError(line_no, "duplicate 'dim' directive");
            if (!orbits.empty() || !edges.empty()) throw ParseError(line_no, "'dim' must be the first directive");
            if (toks.size() != 2) throw ParseError(line_no, "'dim' takes exactly one integer");
            auto n = parse_int(toks[1], line_no);
            if (n < 0) throw ParseError(line_no, "dimension must be nonnegative");
            dim = static_cast<std::size_t>(n);
        } else if (kw == "vertex") {
            if (!dim) throw ParseError(line_no, "'dim' must be the first directive");
            if (toks.size() != 2) throw ParseError(line_no, "'vertex' takes exactly one name");
            std::string name(toks[1]);
            if (std::find(orbits.begin(), orbits.end(), name) != orbits.end())
                throw ParseError(line_no, "duplicate orbit name '" + name + "'");
            orbits.push_back(std::move(name));
        } else if (kw == "edge") {
            if (!dim) throw ParseError(line_no, "'dim' must be the first directive");
            if (toks.size() != *dim + 4)
                throw ParseError(line_no, "dimension mismatch: expected " + std::to_string(*dim) +
                                              " shift components and a weight");
            auto lookup = [&](std::string_view name) -> OrbitId {
                auto it = std::find(orbits.begin(), orbits.end(), name);
                if (it == orbits.end()) throw ParseError(line_no, "unknown orbit '" + std::string(name) + "'");
                return static_cast<OrbitId>(it - orbits.begin());
            };
            EdgeOrbit e;
            e.src = lookup(toks[1]);
            e.dst = lookup(toks[2]);
            for (std::size_t i = 0; i < *dim; ++i) e.shift.push_back(parse_int(toks[3 + i], line_no));
            e.weight = parse_int(toks.back(), line_no);
            if (e.weight <= 0) throw ParseError(line_no, "non-positive weight " + std::to_string(e.weight));
            e.id = edges.size();
            edges.push_back(std::move(e));
        } else {
            throw ParseError(line_no, "unknown directive '" + std::string(kw) + "'");
        }
    }
    if (!dim) throw ParseError(line_no, "missing 'dim' directive");
    return QuotientGraph(*dim, std::move(orbits), std::move(edges));
}

QuotientGraph load_periodic_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_periodic_graph(ss.str());
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::string serialize(const QuotientGraph& g) {
    std::ostringstream os;
    os << "dim " << g.dim() << '\n';
    for (const auto& name : g.orbits()) os << "vertex " << name << '\n';
    for (const auto& e : g.edges()) {
        os << "edge " << g.orbits().at(e.src) << ' ' << g.orbits().at(e.dst);
        for (auto t : e.shift) os << ' ' << t;
        os << ' ' << e.weight << '\n';
    }
    return os.str();
}

ValidationReport validate(const QuotientGraph& g) {
    ValidationReport r;
    std::set<std::string> seen;
    for (const auto& name : g.orbits()) {
        if (name.empty()) r.entries.push_back("empty orbit name");
        else if (!seen.insert(name).second) r.entries.push_back("duplicate orbit name '" + name + "'");
    }
    for (const auto& e : g.edges()) {
        const std::string tag = "edge " + std::to_string(e.id) + ": ";
        if (e.src >= g.orbit_count() || e.dst >= g.orbit_count())
            r.entries.push_back(tag + "unknown orbit endpoint");
        if (e.weight <= 0) r.entries.push_back(tag + "non-positive weight");
        if (e.shift.size() != g.dim())
            r.entries.push_back(tag + "dimension mismatch (shift length " + std::to_string(e.shift.size()) + ")");
    }
    return r;
}

std::vector<Neighbor> out_neighbors(const QuotientGraph& g, const PeriodicVertex& x) {
    std::vector<Neighbor> out;
    const auto& ids = g.out_edges(x.orbit);
    out.reserve(ids.size());
    for (EdgeId id : ids) {
        const auto& e = g.edge(id);
        out.push_back({GammaEdge{id, x.coord}, PeriodicVertex{e.dst, add(x.coord, e.shift)}, e.weight});
    }
    return out;
}

PeriodicVertex translate(const PeriodicVertex& x, std::span<const std::int64_t> u) {
    return {x.orbit, add(x.coord, u)};
}

PeriodicVertex source(const QuotientGraph& g, const GammaEdge& e) {
    return {g.edge(e.edge_orbit).src, e.base};
}

PeriodicVertex target(const QuotientGraph& g, const GammaEdge& e) {
    const auto& eo = g.edge(e.edge_orbit);
    return {eo.dst, add(e.base, eo.shift)};
}

PeriodicVertex parse_vertex(const QuotientGraph& g, std::string_view spec) {
    auto colon = spec.find(':');
    PeriodicVertex v = g.origin(g.orbit_index(spec.substr(0, colon)));
    if (colon == std::string_view::npos) return v;
    std::string_view rest = spec.substr(colon + 1);
    LatticeVector coord;
    std::size_t pos = 0;
    while (pos <= rest.size()) {
        auto comma = rest.find(',', pos);
        if (comma == std::string_view::npos) comma = rest.size();
        auto tok = rest.substr(pos, comma - pos);
        std::int64_t val = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), val);
        if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
            throw InputError("bad vertex coordinate '" + std::string(tok) + "'");
        coord.push_back(val);
        pos = comma + 1;
    }
    if (coord.size() != g.dim()) throw InputError("vertex coordinate has wrong dimension");
    v.coord = std::move(coord);
    return v;
}

std::string format_vertex(const QuotientGraph& g, const PeriodicVertex& v) {
    return g.orbits().at(v.orbit) + " " + format_vector(v.coord);
}

} // namespace perigrowth
