#pragma once

// The monoid/module skeleton of the graded growth set B:
//
//   M_S  = < (w(q), mu(q)) : q a quotient cycle with supp(q) in S > + (1, 0)
//   X_S  = { (i, y) : some walk x0 -> y has weight <= i and support exactly S }
//   X'_S = elements of X_S of degree <= W * |S|^2
//
// B is the union of the X_S, and X_S = M_S + X'_S. Everything here is
// verified by finite saturation inside a degree budget, which is exact.

#include "perigrowth/ball.hpp"
#include "perigrowth/quotient_walks.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

namespace perigrowth {

struct MonoidElement {
    std::int64_t degree = 0;
    LatticeVector vec;

    bool operator==(const MonoidElement&) const = default;
    auto operator<=>(const MonoidElement&) const = default;
};

// A finitely generated submonoid of Z>=0 x L, given by generators.
struct GradedMonoid {
    std::size_t rank = 0;
    std::vector<MonoidElement> generators;  // sorted, unique

    bool has_degree_step() const;
};

GradedMonoid make_monoid(std::size_t rank, std::vector<MonoidElement> generators);

struct GradedModuleGens {
    SupportSet support;
    std::int64_t degree_bound = 0;  // W * |S|^2
    std::vector<GradedElement> generators;
};

enum class GeneratorMode {
    Minimal,     // (m_S(y), y) per endpoint y: enough to generate over M_S
    Exhaustive,  // every (i, y) in X_S with i <= W * |S|^2
};

GradedMonoid build_ms(const QuotientGraph& g, const SupportSet& s, std::span<const Cycle> cycles);
GradedMonoid build_ms(const QuotientGraph& g, const SupportSet& s, const CycleOptions& opts = {});

// For every y reachable from x0 by a walk whose quotient support is exactly
// s and whose weight is <= bound: the least such weight.
std::unordered_map<PeriodicVertex, std::int64_t, PeriodicVertexHash>
min_weights_with_support(const QuotientGraph& g, const PeriodicVertex& x0, const SupportSet& s, std::int64_t bound);

GradedModuleGens build_xs_generators(const QuotientGraph& g, const PeriodicVertex& x0, const SupportSet& s,
                                     GeneratorMode mode = GeneratorMode::Minimal);

// X_S truncated to degree <= bound, computed directly from walks.
GradedSet xs_truncation(const QuotientGraph& g, const PeriodicVertex& x0, const SupportSet& s, std::int64_t bound);

// Elements of the monoid of degree <= bound (identity included).
std::set<MonoidElement> saturate_monoid(const GradedMonoid& m, std::int64_t bound);

// m + gens, truncated to degree <= bound.
GradedSet saturate_module(const GradedMonoid& m, std::span<const GradedElement> gens, std::int64_t bound);

struct CoverBlock {
    SupportSet support;
    GradedMonoid monoid;
    GradedModuleGens module;
    std::size_t truncation_size = 0;
    bool module_action_ok = true;
};

struct CoverOptions {
    GeneratorMode mode = GeneratorMode::Minimal;
    std::size_t max_orbits = 12;
    std::size_t threads = 1;
    CycleOptions cycles;
    BallOptions ball;
};

struct CoverReport {
    std::int64_t radius = 0;
    std::vector<CoverBlock> blocks;  // sorted by support
    std::size_t slice_size = 0;
    std::size_t union_size = 0;
    std::vector<GradedElement> missing_from_union;  // in B, not generated
    std::vector<GradedElement> extra_in_union;      // generated, not in B

    bool cover_ok() const noexcept { return missing_from_union.empty() && extra_in_union.empty(); }
    bool module_action_ok() const noexcept;
};

// Checks B_{<=R} == union over S of (M_S + X'_S)_{<=R}, and the module
// action for every S. Refuses graphs with more than max_orbits orbits.
CoverReport verify_cover(const QuotientGraph& g, const PeriodicVertex& x0, std::int64_t radius,
                         const CoverOptions& opts = {});

struct ModuleActionWitness {
    MonoidElement generator;
    GradedElement element;
};

struct ModuleActionResult {
    bool ok = true;
    std::optional<ModuleActionWitness> witness;
};

// For every generator m and every xi in X_S of degree <= R - deg(m):
// m + xi lies in X_S.
ModuleActionResult verify_module_action(const QuotientGraph& g, const PeriodicVertex& x0, const SupportSet& s,
                                        std::int64_t radius, const GradedMonoid& monoid);
ModuleActionResult verify_module_action(const QuotientGraph& g, const PeriodicVertex& x0, const SupportSet& s,
                                        std::int64_t radius);

template <class T>
struct IntersectionCertificate {
    std::vector<T> generators;
    std::int64_t verified_degree_bound = 0;
    bool complete = false;
};

// Gradewise intersection up to degree `bound` and its irreducible elements.
// `complete` is set only when the caller vouches that generators of the
// intersection have degree <= generator_degree_bound and bound is at least
// twice that.
IntersectionCertificate<MonoidElement>
intersect_graded_monoids(std::span<const GradedMonoid> monoids, std::int64_t bound,
                         std::optional<std::int64_t> generator_degree_bound = std::nullopt);

struct GradedModule {
    GradedMonoid monoid;
    std::vector<GradedElement> generators;
};

struct ModuleIntersection {
    IntersectionCertificate<MonoidElement> monoid;
    IntersectionCertificate<GradedElement> module;
};

ModuleIntersection intersect_graded_modules(std::span<const GradedModule> modules, std::int64_t bound,
                                            std::optional<std::int64_t> generator_degree_bound = std::nullopt);

// Multigraded data for Hilbert counts: degrees in Z>=0^d, carriers are
// lattice vectors (encode orbit labels as extra coordinates the monoid
// leaves at zero).
struct MultiGradedElement {
    std::vector<std::int64_t> degree;
    LatticeVector carrier;

    bool operator==(const MultiGradedElement&) const = default;
    auto operator<=>(const MultiGradedElement&) const = default;
};

struct HilbertCountTable {
    BoxIndex index;
    std::vector<std::int64_t> values;

    std::int64_t at(std::span<const std::int64_t> a) const { return values[index.flat(a)]; }
};

struct HilbertOptions {
    std::size_t max_elements = 5'000'000;
};

HilbertCountTable hilbert_counts(std::span<const MultiGradedElement> monoid_generators,
                                 std::span<const MultiGradedElement> module_generators, std::vector<std::int64_t> box,
                                 const HilbertOptions& opts = {});

} // namespace perigrowth
