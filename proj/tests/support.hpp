#pragma once

#include "perigrowth/periodic_graph.hpp"
#include "perigrowth/quotient_walks.hpp"
#include "perigrowth/vab.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>

namespace testsupport {

// Set from --seed=<n> on the test command line.
std::uint64_t& seed();

inline std::mt19937_64 rng(std::uint64_t salt) { return std::mt19937_64(seed() ^ (salt * 0x9e3779b97f4a7c15ULL)); }

inline std::string corpus(const std::string& name) { return std::string(PERIGROWTH_CORPUS_DIR) + "/" + name; }

inline std::int64_t uniform(std::mt19937_64& r, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(r);
}

// Small random quotient: 1..max_orbits orbits, shifts in [-1, 1], weights
// in [1, max_weight].
inline perigrowth::QuotientGraph random_graph(std::mt19937_64& r, std::size_t max_orbits = 3, std::size_t max_dim = 2,
                                              std::size_t max_edges = 6, std::int64_t max_weight = 3) {
    const auto n = static_cast<std::size_t>(uniform(r, 1, static_cast<std::int64_t>(max_orbits)));
    const auto dim = static_cast<std::size_t>(uniform(r, 1, static_cast<std::int64_t>(max_dim)));
    const auto m = static_cast<std::size_t>(uniform(r, 0, static_cast<std::int64_t>(max_edges)));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("o" + std::to_string(i));
    std::vector<perigrowth::EdgeOrbit> edges;
    for (std::size_t i = 0; i < m; ++i) {
        perigrowth::EdgeOrbit e;
        e.id = i;
        e.src = static_cast<std::size_t>(uniform(r, 0, static_cast<std::int64_t>(n) - 1));
        e.dst = static_cast<std::size_t>(uniform(r, 0, static_cast<std::int64_t>(n) - 1));
        for (std::size_t k = 0; k < dim; ++k) e.shift.push_back(uniform(r, -1, 1));
        e.weight = uniform(r, 1, max_weight);
        edges.push_back(e);
    }
    return perigrowth::QuotientGraph(dim, names, edges);
}

// A random walk of at most `len` edges from `base`; stops early at a sink.
inline perigrowth::QWalk random_walk(const perigrowth::QuotientGraph& g, std::mt19937_64& r, perigrowth::OrbitId base,
                                     std::size_t len) {
    perigrowth::QWalk q{base, {}};
    perigrowth::OrbitId at = base;
    for (std::size_t i = 0; i < len; ++i) {
        const auto& out = g.out_edges(at);
        if (out.empty()) break;
        auto e = out[static_cast<std::size_t>(uniform(r, 0, static_cast<std::int64_t>(out.size()) - 1))];
        q.edges.push_back(e);
        at = g.edge(e).dst;
    }
    return q;
}

// Least word weight of every element reachable by words of weight <= bound,
// by multiplying out words grouped by exact weight.
inline std::map<perigrowth::GroupElement, std::int64_t> word_weights(const perigrowth::VAGroup& g,
                                                                     const perigrowth::WeightedGenSet& s,
                                                                     std::int64_t bound) {
    std::vector<std::set<perigrowth::GroupElement>> exact(static_cast<std::size_t>(bound) + 1);
    exact[0].insert(perigrowth::identity(g));
    for (std::int64_t w = 1; w <= bound; ++w)
        for (const auto& gen : s) {
            if (gen.weight > w) continue;
            for (const auto& x : exact[static_cast<std::size_t>(w - gen.weight)])
                exact[static_cast<std::size_t>(w)].insert(perigrowth::multiply(g, x, gen.element));
        }
    std::map<perigrowth::GroupElement, std::int64_t> out;
    for (std::int64_t w = 0; w <= bound; ++w)
        for (const auto& x : exact[static_cast<std::size_t>(w)]) out.emplace(x, w);
    return out;
}

} // namespace testsupport
