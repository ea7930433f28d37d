#include "perigrowth/ball.hpp"

#include "perigrowth/error.hpp"

#include <algorithm>

namespace perigrowth {

std::optional<std::int64_t> DistanceMap::distance(const PeriodicVertex& v) const {
    auto it = entries.find(v);
    if (it == entries.end()) return std::nullopt;
    return it->second;
}

DistanceMap distances_upto(const QuotientGraph& g, const PeriodicVertex& x0, std::int64_t radius,
                           const BallOptions& opts) {
    if (radius < 0) throw InputError("radius must be nonnegative");
    if (x0.orbit >= g.orbit_count() || x0.coord.size() != g.dim()) throw InputError("base vertex is not a vertex of the graph");

    DistanceMap dm;
    dm.base = x0;
    dm.radius = radius;
    const std::size_t ring = static_cast<std::size_t>(g.max_weight()) + 1;
    std::vector<std::vector<PeriodicVertex>> buckets(ring);
    std::unordered_map<PeriodicVertex, std::int64_t, PeriodicVertexHash> tentative;
    tentative.emplace(x0, 0);
    buckets[0].push_back(x0);
    std::size_t pending = 1;

    for (std::int64_t d = 0; d <= radius && pending > 0; ++d) {
        auto& bucket = buckets[static_cast<std::size_t>(d) % ring];
        // Relaxations from this bucket only land in later buckets (weights >= 1).
        auto current = std::move(bucket);
        bucket.clear();
        pending -= current.size();
        for (auto& v : current) {
            auto it = tentative.find(v);
            if (it->second != d || dm.entries.contains(v)) continue;
            dm.entries.emplace(v, d);
            if (dm.entries.size() > opts.max_vertices)
                throw ResourceLimitError("ball exceeds cap of " + std::to_string(opts.max_vertices) + " vertices");
            for (auto& nb : out_neighbors(g, v)) {
                const std::int64_t nd = d + nb.weight;
                if (nd > radius) continue;
                auto [slot, inserted] = tentative.try_emplace(nb.target, nd);
                if (!inserted) {
                    if (slot->second <= nd) continue;
                    slot->second = nd;
                }
                buckets[static_cast<std::size_t>(nd) % ring].push_back(nb.target);
                ++pending;
            }
        }
    }
    return dm;
}

GrowthSequence growth_sequence(const DistanceMap& dm) {
    GrowthSequence gs;
    gs.base = dm.base;
    gs.terms.assign(static_cast<std::size_t>(dm.radius) + 1, 0);
    for (const auto& [v, d] : dm.entries) ++gs.terms[static_cast<std::size_t>(d)];
    return gs;
}

GrowthSequence growth_sequence(const QuotientGraph& g, const PeriodicVertex& x0, std::int64_t radius,
                               const BallOptions& opts) {
    return growth_sequence(distances_upto(g, x0, radius, opts));
}

GradedSet graded_growth_slice(const DistanceMap& dm) {
    GradedSet s;
    for (const auto& [v, d] : dm.entries)
        for (std::int64_t i = d; i <= dm.radius; ++i) s.insert({i, v});
    return s;
}

BoxIndex::BoxIndex(std::vector<std::int64_t> box) : box_(std::move(box)), stride_(box_.size()) {
    size_ = 1;
    for (std::size_t k = box_.size(); k-- > 0;) {
        if (box_[k] < 0) throw InputError("box bounds must be nonnegative");
        stride_[k] = size_;
        size_ *= static_cast<std::size_t>(box_[k]) + 1;
    }
}

bool BoxIndex::contains(std::span<const std::int64_t> a) const {
    if (a.size() != box_.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] < 0 || a[k] > box_[k]) return false;
    return true;
}

std::size_t BoxIndex::flat(std::span<const std::int64_t> a) const {
    if (!contains(a)) throw InputError("multi-index outside box");
    std::size_t i = 0;
    for (std::size_t k = 0; k < a.size(); ++k) i += static_cast<std::size_t>(a[k]) * stride_[k];
    return i;
}

std::vector<std::int64_t> BoxIndex::unflat(std::size_t i) const {
    std::vector<std::int64_t> a(box_.size());
    for (std::size_t k = 0; k < box_.size(); ++k) {
        a[k] = static_cast<std::int64_t>(i / stride_[k]);
        i %= stride_[k];
    }
    return a;
}

std::vector<std::int64_t> cumulative_counts(const BoxIndex& index, std::span<const std::int64_t> counts_s) {
    std::vector<std::int64_t> b(counts_s.begin(), counts_s.end());
    // Prefix sums along each axis in turn.
    for (std::size_t axis = 0; axis < index.arity(); ++axis) {
        for (std::size_t i = 0; i < index.size(); ++i) {
            auto a = index.unflat(i);
            if (a[axis] == 0) continue;
            --a[axis];
            b[i] = checked_add(b[i], b[index.flat(a)]);
        }
    }
    return b;
}

RelativeCountTable relative_counts(const DistanceMap& dm, std::span<const VertexTuple> y,
                                   std::vector<std::int64_t> box) {
    if (box.empty()) throw InputError("relative counts need arity >= 1");
    const auto maxbox = *std::max_element(box.begin(), box.end());
    if (maxbox > dm.radius) throw InputError("distance map radius is smaller than the count box");
    RelativeCountTable t;
    t.index = BoxIndex(std::move(box));
    t.counts_s.assign(t.index.size(), 0);
    std::vector<std::int64_t> a(t.index.arity());
    for (const auto& tuple : y) {
        if (tuple.size() != t.index.arity()) throw InputError("tuple arity does not match the box");
        bool inside = true;
        for (std::size_t k = 0; k < tuple.size(); ++k) {
            auto d = dm.distance(tuple[k]);
            if (!d) throw InputError("tuple coordinate outside the computed ball; counts would be wrong");
            a[k] = *d;
            if (*d > t.index.box()[k]) inside = false;
        }
        if (inside) ++t.counts_s[t.index.flat(a)];
    }
    t.counts_b = cumulative_counts(t.index, t.counts_s);
    return t;
}

} // namespace perigrowth
