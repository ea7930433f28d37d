#pragma once

// Virtually abelian groups as extensions of Z^n by a finite group F:
// elements are pairs (v, f) with
//
//   (v, f) * (w, g) = (v + phi_f(w) + c(f, g), f g).
//
// The lattice acts on the left, generators multiply on the right, so the
// Cayley graph is a periodic graph with one orbit per element of F.

#include "perigrowth/ball.hpp"
#include "perigrowth/periodic_graph.hpp"
#include "perigrowth/quotient_walks.hpp"
#include "perigrowth/series_fit.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace perigrowth {

struct GroupElement {
    LatticeVector v;
    std::size_t f = 0;

    bool operator==(const GroupElement&) const = default;
    auto operator<=>(const GroupElement&) const = default;
};

using GroupTuple = std::vector<GroupElement>;

struct VAGroup {
    std::size_t rank = 0;
    std::size_t order = 1;
    std::vector<std::vector<std::size_t>> mult;         // mult[f][g] = f g
    std::vector<std::vector<std::int64_t>> action;      // phi_f, n x n row-major
    std::vector<std::vector<LatticeVector>> cocycle;    // c(f, g)

    // A group with trivial finite part, zero cocycle, identity actions.
    static VAGroup free_abelian(std::size_t rank);

    LatticeVector apply(std::size_t f, std::span<const std::int64_t> v) const;
    std::size_t finite_inverse(std::size_t f) const;
};

// Exhaustive check of the extension axioms. Orders above max_order are
// reported rather than checked.
ValidationReport validate_group(const VAGroup& g, std::size_t max_order = 64);

GroupElement identity(const VAGroup& g);
GroupElement multiply(const VAGroup& g, const GroupElement& a, const GroupElement& b);
GroupElement inverse(const VAGroup& g, const GroupElement& a);

struct WeightedGenerator {
    std::string name;
    GroupElement element;
    std::int64_t weight = 1;

    bool operator==(const WeightedGenerator&) const = default;
};

using WeightedGenSet = std::vector<WeightedGenerator>;

struct GroupSpec {
    VAGroup group;
    WeightedGenSet generators;
};

// `.vag`: rank, finite, mult, action f=<i>, cocycle f=<i> g=<j>, gen.
// Structural errors throw ParseError; group axioms are left to
// validate_group.
GroupSpec parse_vag(std::string_view text);
GroupSpec load_vag(const std::string& path);

// "[v1,...,vn;f]"
GroupElement parse_element(std::string_view token, const VAGroup& g);
std::string format_element(const GroupElement& x);
std::string format_tuple(std::span<const GroupElement> t);

PeriodicVertex to_vertex(const GroupElement& x);
GroupElement to_element(const PeriodicVertex& v);

struct CayleyGraph {
    QuotientGraph graph;
    PeriodicVertex base;
};

// Orbit f is named "f<f>"; the edge for (orbit f, generator s) has id
// f * |S| + s. Throws InputError for an invalid group or generator.
CayleyGraph build_cayley(const VAGroup& g, const WeightedGenSet& s);

struct EquationToken {
    enum class Kind { Variable, Inverse, Constant };
    Kind kind = Kind::Variable;
    std::size_t variable = 0;  // 0-based
    GroupElement constant;

    bool operator==(const EquationToken&) const = default;
};

using EquationWord = std::vector<EquationToken>;

struct EquationSystem {
    std::size_t arity = 0;
    std::vector<EquationWord> words;
};

// `.eqn`: `vars <d>` then `word` lines of X<i>, X<i>~ and [v;f] tokens.
EquationSystem parse_equations(std::string_view text, const VAGroup& g);
EquationSystem load_equations(const std::string& path, const VAGroup& g);

GroupElement evaluate_word(const VAGroup& g, const EquationWord& w, std::span<const GroupElement> assignment);

struct SolveOptions {
    std::size_t max_tuples = 50'000'000;
    std::size_t threads = 1;
};

// Every tuple with lattice coordinates in [-R, R] and any finite parts on
// which each word evaluates to the identity, sorted.
std::vector<GroupTuple> solve_box(const VAGroup& g, const EquationSystem& sys, std::int64_t radius,
                                  const SolveOptions& opts = {});

struct MonoidModulePiece {
    std::vector<LatticeVector> ugens;  // each of length d * n
    GroupTuple shift;
};

// The disjoint union over pieces of N_piece * shift, N acting by lattice
// translation on each coordinate.
struct MonoidModuleSet {
    std::size_t arity = 0;
    std::vector<MonoidModulePiece> pieces;
};

MonoidModuleSet parse_monoid_module_set(std::string_view text, const VAGroup& g);
MonoidModuleSet load_monoid_module_set(const std::string& path, const VAGroup& g);

struct EnumerateOptions {
    std::size_t max_states = 10'000'000;
};

// Tuples of U whose i-th coordinate has distance <= box[i] in dm (the Cayley
// ball around the identity). Overlapping pieces are an InputError.
std::vector<GroupTuple> enumerate_monoid_module_set(const VAGroup& g, const MonoidModuleSet& u,
                                                    const DistanceMap& dm, std::span<const std::int64_t> box,
                                                    const EnumerateOptions& opts = {});

// Counts tuples by per-coordinate weight over the box. Tuples with a
// coordinate outside the ball are dropped. When the tuples come from
// solve_box, pass its radius to check that the lattice box covers the ball.
RelativeCountTable relative_growth_terms(const VAGroup& g, const WeightedGenSet& s, std::span<const GroupTuple> tuples,
                                         std::vector<std::int64_t> box,
                                         std::optional<std::int64_t> lattice_radius = std::nullopt,
                                         const BallOptions& opts = {});

// (1 - z_i) and (1 - z_i^w) for every Cayley cycle weight w on every axis,
// plus (1 - z^omega(u)) for every monoid generator u whose coordinates all
// have finite weight in dm. Each factor once.
std::vector<MultiFactor> default_relative_ansatz(const CayleyGraph& cayley, std::size_t arity,
                                                 const MonoidModuleSet* u, const DistanceMap& dm,
                                                 const CycleOptions& opts = {});

// u(T) = sum over |a|_1 = T of counts_s(a), for T <= min(box).
std::vector<std::int64_t> univariate_terms(const RelativeCountTable& t);

} // namespace perigrowth
