#include "perigrowth/decomposition.hpp"

#include "perigrowth/error.hpp"
#include "perigrowth/parallel.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace perigrowth {

bool GradedMonoid::has_degree_step() const {
    return std::any_of(generators.begin(), generators.end(),
                       [](const MonoidElement& m) { return m.degree == 1 && is_zero(m.vec); });
}

GradedMonoid make_monoid(std::size_t rank, std::vector<MonoidElement> generators) {
    for (const auto& m : generators) {
        if (m.vec.size() != rank) throw InputError("monoid generator has wrong rank");
        if (m.degree < 0) throw InputError("monoid generator has negative degree");
    }
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    return GradedMonoid{rank, std::move(generators)};
}

GradedMonoid build_ms(const QuotientGraph& g, const SupportSet& s, std::span<const Cycle> cycles) {
    std::vector<MonoidElement> gens{{1, LatticeVector(g.dim(), 0)}};
    for (const auto& c : cycles) {
        if (!support(g, c).subset_of(s)) continue;
        gens.push_back({walk_weight(g, c.edges), mu(g, chain_of_walk(c.edges))});
    }
    return make_monoid(g.dim(), std::move(gens));
}

GradedMonoid build_ms(const QuotientGraph& g, const SupportSet& s, const CycleOptions& opts) {
    auto cycles = enumerate_cycles(g, opts);
    return build_ms(g, s, cycles);
}

namespace {

struct SupportState {
    PeriodicVertex vertex;
    std::uint64_t mask;

    bool operator==(const SupportState&) const = default;
};

struct SupportStateHash {
    std::size_t operator()(const SupportState& s) const noexcept {
        return hash_combine(PeriodicVertexHash{}(s.vertex), std::hash<std::uint64_t>{}(s.mask));
    }
};

std::int64_t xs_degree_bound(const QuotientGraph& g, const SupportSet& s) {
    auto k = static_cast<std::int64_t>(s.size());
    return checked_mul(g.max_weight(), checked_mul(k, k));
}

} // namespace

std::unordered_map<PeriodicVertex, std::int64_t, PeriodicVertexHash>
min_weights_with_support(const QuotientGraph& g, const PeriodicVertex& x0, const SupportSet& s, std::int64_t bound) {
    std::unordered_map<PeriodicVertex, std::int64_t, PeriodicVertexHash> out;
    if (!s.contains(x0.orbit) || bound < 0) return out;
    const std::uint64_t target = s.mask();

    // Dial's algorithm over (vertex, support-so-far); supports only grow and
    // never leave s, so the first settlement of a state is its least weight.
    const std::size_t ring = static_cast<std::size_t>(g.max_weight()) + 1;
    std::vector<std::vector<SupportState>> buckets(ring);
    std::unordered_map<SupportState, std::int64_t, SupportStateHash> best;
    std::unordered_set<SupportState, SupportStateHash> settled;
    SupportState start{x0, std::uint64_t{1} << x0.orbit};
    best.emplace(start, 0);
    buckets[0].push_back(start);
    std::size_t pending = 1;
    for (std::int64_t d = 0; d <= bound && pending > 0; ++d) {
        auto current = std::move(buckets[static_cast<std::size_t>(d) % ring]);
        buckets[static_cast<std::size_t>(d) % ring].clear();
        pending -= current.size();
        for (auto& st : current) {
            if (best.at(st) != d || !settled.insert(st).second) continue;
            if (st.mask == target) out.emplace(st.vertex, d);
            for (auto& nb : out_neighbors(g, st.vertex)) {
                const std::uint64_t bit = std::uint64_t{1} << nb.target.orbit;
                if (!(target & bit)) continue;
                const std::int64_t nd = d + nb.weight;
                if (nd > bound) continue;
                SupportState next{nb.target, st.mask | bit};
                auto [slot, inserted] = best.try_emplace(next, nd);
                if (!inserted) {
                    if (slot->second <= nd) continue;
                    slot->second = nd;
                }
                buckets[static_cast<std::size_t>(nd) % ring].push_back(std::move(next));
                ++pending;
            }
        }
    }
    return out;
}

GradedModuleGens build_xs_generators(const QuotientGraph& g, const PeriodicVertex& x0, const SupportSet& s,
                                     GeneratorMode mode) {
    GradedModuleGens out;
    out.support = s;
    out.degree_bound = xs_degree_bound(g, s);
    for (const auto& [y, w] : min_weights_with_support(g, x0, s, out.degree_bound)) {
        if (mode == GeneratorMode::Minimal) {
            out.generators.push_back({w, y});
        } else {
            for (std::int64_t i = w; i <= out.degree_bound; ++i) out.generators.push_back({i, y});
        }
    }
    std::sort(out.generators.begin(), out.generators.end());
    return out;
}

GradedSet xs_truncation(const QuotientGraph& g, const PeriodicVertex& x0, const SupportSet& s, std::int64_t bound) {
    GradedSet out;
    for (const auto& [y, w] : min_weights_with_support(g, x0, s, bound))
        for (std::int64_t i = w; i <= bound; ++i) out.insert({i, y});
    return out;
}

namespace {

void require_pointed(const GradedMonoid& m) {
    for (const auto& gen : m.generators)
        if (gen.degree == 0 && !is_zero(gen.vec))
            throw InputError("degree-0 monoid generator with nonzero vector " + format_vector(gen.vec));
}

} // namespace

std::set<MonoidElement> saturate_monoid(const GradedMonoid& m, std::int64_t bound) {
    require_pointed(m);
    std::set<MonoidElement> out;
    if (bound < 0) return out;
    std::vector<MonoidElement> todo{{0, LatticeVector(m.rank, 0)}};
    out.insert(todo.front());
    while (!todo.empty()) {
        auto x = std::move(todo.back());
        todo.pop_back();
        for (const auto& gen : m.generators) {
            if (gen.degree == 0) continue;
            MonoidElement y{x.degree + gen.degree, add(x.vec, gen.vec)};
            if (y.degree > bound) continue;
            if (out.insert(y).second) todo.push_back(std::move(y));
        }
    }
    return out;
}

GradedSet saturate_module(const GradedMonoid& m, std::span<const GradedElement> gens, std::int64_t bound) {
    require_pointed(m);
    GradedSet out;
    std::vector<GradedElement> todo;
    for (const auto& x : gens)
        if (x.degree <= bound && out.insert(x).second) todo.push_back(x);
    while (!todo.empty()) {
        auto x = std::move(todo.back());
        todo.pop_back();
        for (const auto& gen : m.generators) {
            if (gen.degree == 0) continue;
            if (x.degree + gen.degree > bound) continue;
            GradedElement y{x.degree + gen.degree, translate(x.vertex, gen.vec)};
            if (out.insert(y).second) todo.push_back(std::move(y));
        }
    }
    return out;
}

bool CoverReport::module_action_ok() const noexcept {
    return std::all_of(blocks.begin(), blocks.end(), [](const CoverBlock& b) { return b.module_action_ok; });
}

CoverReport verify_cover(const QuotientGraph& g, const PeriodicVertex& x0, std::int64_t radius,
                         const CoverOptions& opts) {
    const std::size_t n = g.orbit_count();
    if (n > opts.max_orbits || n >= 63)
        throw ResourceLimitError("verify_cover refuses " + std::to_string(n) + " orbits (guard " +
                                 std::to_string(opts.max_orbits) + ")");
    if (radius < 0) throw InputError("radius must be nonnegative");
    const auto cycles = enumerate_cycles(g, opts.cycles);

    const std::size_t subsets = (std::size_t{1} << n) - 1;  // nonempty only
    std::vector<CoverBlock> blocks(subsets);
    std::vector<GradedSet> parts(subsets);
    parallel_for(subsets, opts.threads, [&](std::size_t i) {
        auto s = SupportSet::from_mask(i + 1);
        CoverBlock b;
        b.support = s;
        b.monoid = build_ms(g, s, cycles);
        b.module = build_xs_generators(g, x0, s, opts.mode);
        parts[i] = saturate_module(b.monoid, b.module.generators, radius);
        b.truncation_size = parts[i].size();
        b.module_action_ok = verify_module_action(g, x0, s, radius, b.monoid).ok;
        blocks[i] = std::move(b);
    });

    CoverReport r;
    r.radius = radius;
    GradedSet uni;
    for (auto& p : parts) uni.merge(p);
    const auto slice = graded_growth_slice(distances_upto(g, x0, radius, opts.ball));
    r.slice_size = slice.size();
    r.union_size = uni.size();
    std::set_difference(slice.begin(), slice.end(), uni.begin(), uni.end(), std::back_inserter(r.missing_from_union));
    std::set_difference(uni.begin(), uni.end(), slice.begin(), slice.end(), std::back_inserter(r.extra_in_union));
    std::sort(blocks.begin(), blocks.end(),
              [](const CoverBlock& a, const CoverBlock& b) { return a.support < b.support; });
    r.blocks = std::move(blocks);
    return r;
}

ModuleActionResult verify_module_action(const QuotientGraph& g, const PeriodicVertex& x0, const SupportSet& s,
                                        std::int64_t radius, const GradedMonoid& monoid) {
    const auto minw = min_weights_with_support(g, x0, s, radius);
    // Deterministic witness: scan elements in sorted order.
    std::vector<std::pair<PeriodicVertex, std::int64_t>> elems(minw.begin(), minw.end());
    std::sort(elems.begin(), elems.end());
    for (const auto& gen : monoid.generators) {
        for (const auto& [y, w] : elems) {
            for (std::int64_t i = w; i + gen.degree <= radius; ++i) {
                auto moved = translate(y, gen.vec);
                auto it = minw.find(moved);
                if (it == minw.end() || it->second > i + gen.degree)
                    return {false, ModuleActionWitness{gen, GradedElement{i, y}}};
            }
        }
    }
    return {};
}

ModuleActionResult verify_module_action(const QuotientGraph& g, const PeriodicVertex& x0, const SupportSet& s,
                                        std::int64_t radius) {
    return verify_module_action(g, x0, s, radius, build_ms(g, s));
}

IntersectionCertificate<MonoidElement>
intersect_graded_monoids(std::span<const GradedMonoid> monoids, std::int64_t bound,
                         std::optional<std::int64_t> generator_degree_bound) {
    IntersectionCertificate<MonoidElement> cert;
    cert.verified_degree_bound = bound;
    if (monoids.empty()) throw InputError("intersection of an empty family");
    const std::size_t rank = monoids.front().rank;
    for (const auto& m : monoids)
        if (m.rank != rank) throw InputError("monoids of different ambient rank");

    auto common = saturate_monoid(monoids.front(), bound);
    for (std::size_t k = 1; k < monoids.size(); ++k) {
        auto other = saturate_monoid(monoids[k], bound);
        std::erase_if(common, [&](const MonoidElement& x) { return !other.contains(x); });
    }
    // Elements come out sorted by degree; an element is a new generator iff
    // the generators found so far do not reach it.
    GradedMonoid generated{rank, {}};
    std::set<MonoidElement> reached{{0, LatticeVector(rank, 0)}};
    for (const auto& x : common) {
        if (reached.contains(x)) continue;
        generated.generators.push_back(x);
        reached = saturate_monoid(generated, bound);
    }
    cert.generators = std::move(generated.generators);
    cert.complete = generator_degree_bound && bound >= 2 * *generator_degree_bound;
    return cert;
}

ModuleIntersection intersect_graded_modules(std::span<const GradedModule> modules, std::int64_t bound,
                                            std::optional<std::int64_t> generator_degree_bound) {
    if (modules.empty()) throw InputError("intersection of an empty family");
    std::vector<GradedMonoid> monoids;
    for (const auto& m : modules) monoids.push_back(m.monoid);
    ModuleIntersection out;
    out.monoid = intersect_graded_monoids(monoids, bound, generator_degree_bound);
    out.module.verified_degree_bound = bound;

    auto common = saturate_module(modules.front().monoid, modules.front().generators, bound);
    for (std::size_t k = 1; k < modules.size(); ++k) {
        auto other = saturate_module(modules[k].monoid, modules[k].generators, bound);
        std::erase_if(common, [&](const GradedElement& x) { return !other.contains(x); });
    }
    GradedMonoid acting{modules.front().monoid.rank, out.monoid.generators};
    GradedSet reached;
    for (const auto& x : common) {
        if (reached.contains(x)) continue;
        out.module.generators.push_back(x);
        reached = saturate_module(acting, out.module.generators, bound);
    }
    out.module.complete = out.monoid.complete;
    return out;
}

HilbertCountTable hilbert_counts(std::span<const MultiGradedElement> monoid_generators,
                                 std::span<const MultiGradedElement> module_generators, std::vector<std::int64_t> box,
                                 const HilbertOptions& opts) {
    HilbertCountTable t;
    t.index = BoxIndex(std::move(box));
    const std::size_t d = t.index.arity();
    for (const auto& gen : monoid_generators) {
        if (gen.degree.size() != d) throw InputError("monoid generator degree has wrong arity");
        bool zero_degree = std::all_of(gen.degree.begin(), gen.degree.end(), [](auto a) { return a == 0; });
        if (std::any_of(gen.degree.begin(), gen.degree.end(), [](auto a) { return a < 0; }))
            throw InputError("multidegrees must be nonnegative");
        if (zero_degree && !is_zero(gen.carrier))
            throw InputError("degree-0 monoid generator with nonzero vector");
    }
    std::set<MultiGradedElement> seen;
    std::vector<MultiGradedElement> todo;
    for (const auto& x : module_generators) {
        if (x.degree.size() != d) throw InputError("module generator degree has wrong arity");
        if (t.index.contains(x.degree) && seen.insert(x).second) todo.push_back(x);
    }
    while (!todo.empty()) {
        auto x = std::move(todo.back());
        todo.pop_back();
        for (const auto& gen : monoid_generators) {
            MultiGradedElement y{add(x.degree, gen.degree), add(x.carrier, gen.carrier)};
            if (y == x || !t.index.contains(y.degree)) continue;
            if (seen.insert(y).second) {
                if (seen.size() > opts.max_elements)
                    throw ResourceLimitError("Hilbert count saturation exceeds element cap");
                todo.push_back(std::move(y));
            }
        }
    }
    t.values.assign(t.index.size(), 0);
    for (const auto& x : seen) ++t.values[t.index.flat(x.degree)];
    return t;
}

} // namespace perigrowth
