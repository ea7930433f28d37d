#pragma once

// Walk combinatorics on the finite quotient graph: simple cycles, 1-chains,
// the homomorphism mu from cycle-generated chains to L, supports, lifting of
// walks to the cover, and path + cycle decomposition.

#include "perigrowth/periodic_graph.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace perigrowth {

// A walk in the quotient. `base` is the start orbit; it is the only
// information carried by a length-0 walk.
struct QWalk {
    OrbitId base = 0;
    std::vector<EdgeId> edges;

    bool operator==(const QWalk&) const = default;
};

// A simple directed cycle, stored at its least rotation.
struct Cycle {
    std::vector<EdgeId> edges;

    bool operator==(const Cycle&) const = default;
    auto operator<=>(const Cycle&) const = default;
};

// Edge orbit id -> multiplicity; zero entries are never stored.
using EdgeChain = std::map<EdgeId, std::int64_t>;

// Sorted, duplicate-free set of orbit indices.
class SupportSet {
public:
    SupportSet() = default;
    explicit SupportSet(std::vector<OrbitId> orbits);

    static SupportSet from_mask(std::uint64_t mask);
    std::uint64_t mask() const;  // requires every orbit < 64

    const std::vector<OrbitId>& orbits() const noexcept { return orbits_; }
    std::size_t size() const noexcept { return orbits_.size(); }
    bool empty() const noexcept { return orbits_.empty(); }
    bool contains(OrbitId o) const;
    bool intersects(const SupportSet& o) const;
    bool subset_of(const SupportSet& o) const;
    void insert(OrbitId o);
    SupportSet united(const SupportSet& o) const;

    bool operator==(const SupportSet&) const = default;
    auto operator<=>(const SupportSet&) const = default;

private:
    std::vector<OrbitId> orbits_;
};

struct CycleOptions {
    std::size_t max_cycles = 1'000'000;
};

// All simple cycles (loops and parallel-edge 2-cycles included), each at its
// least rotation, sorted. Throws ResourceLimitError past max_cycles.
std::vector<Cycle> enumerate_cycles(const QuotientGraph& g, const CycleOptions& opts = {});

// True iff consecutive edges compose and the first edge starts at base.
bool is_valid_walk(const QuotientGraph& g, const QWalk& q);
OrbitId walk_end(const QuotientGraph& g, const QWalk& q);
std::int64_t walk_weight(const QuotientGraph& g, std::span<const EdgeId> edges);

EdgeChain chain_of_walk(std::span<const EdgeId> edges);
EdgeChain chain_add(const EdgeChain& a, const EdgeChain& b);

// Boundary of a chain at every orbit (targets minus sources).
std::vector<std::int64_t> boundary(const QuotientGraph& g, const EdgeChain& c);

// Sum of multiplicity * shift. Throws MathError("not a homology class") if
// the chain has nonzero boundary somewhere.
LatticeVector mu(const QuotientGraph& g, const EdgeChain& c);

SupportSet support(const QuotientGraph& g, const QWalk& q);
SupportSet support(const QuotientGraph& g, const Cycle& c);

struct GammaWalk {
    std::vector<GammaEdge> edges;
    PeriodicVertex start;
    PeriodicVertex end;
};

// The unique lift of q starting at x0. Throws InputError on orbit mismatch.
GammaWalk lift_walk(const QuotientGraph& g, const QWalk& q, const PeriodicVertex& x0);

// Greedy attachment: repeatedly attach any cycle meeting the accumulated
// support. Attachability only grows with the support, so greedy is exact.
bool is_walkable(const QuotientGraph& g, const QWalk& path, std::span<const Cycle> cycles);

struct WalkDecomposition {
    QWalk path;
    std::vector<Cycle> cycles;
};

// Pops a cycle whenever the walk revisits an orbit on the current path.
WalkDecomposition decompose_walk(const QuotientGraph& g, const QWalk& q);

// Least rotation of a closed edge sequence.
Cycle canonical_cycle(std::vector<EdgeId> edges);

} // namespace perigrowth
