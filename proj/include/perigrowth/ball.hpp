#pragma once

// Weighted ball expansion in the periodic cover: exact distances from a base
// vertex, growth sequences, the graded growth set, and relative counts of
// tuples by per-coordinate distance.

#include "perigrowth/periodic_graph.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

namespace perigrowth {

struct BallOptions {
    std::size_t max_vertices = 10'000'000;
};

struct DistanceMap {
    PeriodicVertex base;
    std::int64_t radius = 0;
    std::unordered_map<PeriodicVertex, std::int64_t, PeriodicVertexHash> entries;

    // Distance if within the radius.
    std::optional<std::int64_t> distance(const PeriodicVertex& v) const;
};

// Dial's algorithm: buckets indexed by distance mod (max weight + 1).
DistanceMap distances_upto(const QuotientGraph& g, const PeriodicVertex& x0, std::int64_t radius,
                           const BallOptions& opts = {});

struct GrowthSequence {
    PeriodicVertex base;
    std::vector<std::int64_t> terms;
};

GrowthSequence growth_sequence(const QuotientGraph& g, const PeriodicVertex& x0, std::int64_t radius,
                               const BallOptions& opts = {});
GrowthSequence growth_sequence(const DistanceMap& dm);

struct GradedElement {
    std::int64_t degree;
    PeriodicVertex vertex;

    bool operator==(const GradedElement&) const = default;
    auto operator<=>(const GradedElement&) const = default;
};

using GradedSet = std::set<GradedElement>;

// {(i, y) : d(x0, y) <= i <= radius}.
GradedSet graded_growth_slice(const DistanceMap& dm);

// Dense table over the box [0, box_1] x ... x [0, box_d], row-major with the
// last axis fastest.
class BoxIndex {
public:
    BoxIndex() = default;
    explicit BoxIndex(std::vector<std::int64_t> box);

    const std::vector<std::int64_t>& box() const noexcept { return box_; }
    std::size_t arity() const noexcept { return box_.size(); }
    std::size_t size() const noexcept { return size_; }
    bool contains(std::span<const std::int64_t> a) const;
    std::size_t flat(std::span<const std::int64_t> a) const;
    std::vector<std::int64_t> unflat(std::size_t i) const;

private:
    std::vector<std::int64_t> box_;
    std::vector<std::size_t> stride_;
    std::size_t size_ = 0;
};

struct RelativeCountTable {
    BoxIndex index;
    std::vector<std::int64_t> counts_s;  // #S_{Y,a}: exact distances
    std::vector<std::int64_t> counts_b;  // #B_{Y,a}: distances bounded by a

    std::size_t arity() const noexcept { return index.arity(); }
    std::int64_t s(std::span<const std::int64_t> a) const { return counts_s[index.flat(a)]; }
    std::int64_t b(std::span<const std::int64_t> a) const { return counts_b[index.flat(a)]; }
};

using VertexTuple = std::vector<PeriodicVertex>;

// Counts tuples of Y by the distances of their coordinates. Every coordinate
// must lie in dm (radius >= max(box)); anything else is an InputError since
// the counts would silently be wrong.
RelativeCountTable relative_counts(const DistanceMap& dm, std::span<const VertexTuple> y,
                                   std::vector<std::int64_t> box);

// Partial sums of counts_s over {b <= a}.
std::vector<std::int64_t> cumulative_counts(const BoxIndex& index, std::span<const std::int64_t> counts_s);

} // namespace perigrowth
