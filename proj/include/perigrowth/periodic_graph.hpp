#pragma once

// Periodic graphs described by their finite quotient: orbits of vertices,
// orbits of directed weighted edges, and a lattice shift per edge orbit.
// The canonical lift of every orbit sits at lattice coordinate 0, so the
// vertex (orbit, coord) of the infinite cover is the coord-translate of
// that lift and the free L-action is coordinate addition.

#include "perigrowth/lattice.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace perigrowth {

using OrbitId = std::size_t;
using EdgeId = std::size_t;

struct EdgeOrbit {
    EdgeId id = 0;
    OrbitId src = 0;
    OrbitId dst = 0;
    LatticeVector shift;
    std::int64_t weight = 1;

    bool operator==(const EdgeOrbit&) const = default;
};

struct PeriodicVertex {
    OrbitId orbit = 0;
    LatticeVector coord;

    bool operator==(const PeriodicVertex&) const = default;
    auto operator<=>(const PeriodicVertex&) const = default;
};

struct PeriodicVertexHash {
    std::size_t operator()(const PeriodicVertex& v) const noexcept {
        return hash_combine(LatticeVectorHash{}(v.coord), v.orbit);
    }
};

// An edge instance of the cover: the base-translate of the canonical lift of
// an edge orbit. Its source is (src, base), its target (dst, base + shift).
struct GammaEdge {
    EdgeId edge_orbit = 0;
    LatticeVector base;

    bool operator==(const GammaEdge&) const = default;
};

struct Neighbor {
    GammaEdge edge;
    PeriodicVertex target;
    std::int64_t weight;

    bool operator==(const Neighbor&) const = default;
};

class QuotientGraph {
public:
    QuotientGraph() = default;
    QuotientGraph(std::size_t dim, std::vector<std::string> orbits, std::vector<EdgeOrbit> edges);

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<std::string>& orbits() const noexcept { return orbits_; }
    const std::vector<EdgeOrbit>& edges() const noexcept { return edges_; }
    std::size_t orbit_count() const noexcept { return orbits_.size(); }
    const EdgeOrbit& edge(EdgeId id) const { return edges_.at(id); }

    // Edge ids leaving an orbit, ascending.
    const std::vector<EdgeId>& out_edges(OrbitId orbit) const { return out_.at(orbit); }

    // Throws InputError if the name is not declared.
    OrbitId orbit_index(std::string_view name) const;

    // Largest edge weight, 0 for an edgeless graph.
    std::int64_t max_weight() const noexcept;

    PeriodicVertex origin(OrbitId orbit = 0) const { return {orbit, LatticeVector(dim_, 0)}; }

    bool operator==(const QuotientGraph& o) const {
        return dim_ == o.dim_ && orbits_ == o.orbits_ && edges_ == o.edges_;
    }

private:
    std::size_t dim_ = 0;
    std::vector<std::string> orbits_;
    std::vector<EdgeOrbit> edges_;
    std::vector<std::vector<EdgeId>> out_;
};

struct ValidationReport {
    std::vector<std::string> entries;

    bool ok() const noexcept { return entries.empty(); }
};

// Parses the line-based `.pg` format:
//   dim <n>
//   vertex <name>
//   edge <src> <dst> <t1> ... <tn> <w>
// `#` starts a comment. Throws ParseError with the offending line.
QuotientGraph parse_periodic_graph(std::string_view text);
QuotientGraph load_periodic_graph(const std::string& path);

// Canonical `.pg` text; parse_periodic_graph(serialize(g)) == g.
std::string serialize(const QuotientGraph& g);

// Lists every violated invariant; empty iff g is a valid description.
ValidationReport validate(const QuotientGraph& g);

// One entry per out-edge orbit of x.orbit, ordered by edge id.
std::vector<Neighbor> out_neighbors(const QuotientGraph& g, const PeriodicVertex& x);

PeriodicVertex translate(const PeriodicVertex& x, std::span<const std::int64_t> u);

PeriodicVertex source(const QuotientGraph& g, const GammaEdge& e);
PeriodicVertex target(const QuotientGraph& g, const GammaEdge& e);

// Accepts "name" or "name:c1,c2,...".
PeriodicVertex parse_vertex(const QuotientGraph& g, std::string_view spec);
std::string format_vertex(const QuotientGraph& g, const PeriodicVertex& v);

} // namespace perigrowth
