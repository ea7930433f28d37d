#include "perigrowth/quotient_walks.hpp"

#include "perigrowth/error.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace perigrowth {

SupportSet::SupportSet(std::vector<OrbitId> orbits) : orbits_(std::move(orbits)) {
    std::sort(orbits_.begin(), orbits_.end());
    orbits_.erase(std::unique(orbits_.begin(), orbits_.end()), orbits_.end());
}

SupportSet SupportSet::from_mask(std::uint64_t mask) {
    std::vector<OrbitId> o;
    for (OrbitId i = 0; i < 64; ++i)
        if (mask >> i & 1U) o.push_back(i);
    return SupportSet(std::move(o));
}

std::uint64_t SupportSet::mask() const {
    std::uint64_t m = 0;
    for (auto o : orbits_) {
        if (o >= 64) throw ResourceLimitError("support mask needs orbit indices below 64");
        m |= std::uint64_t{1} << o;
    }
    return m;
}

bool SupportSet::contains(OrbitId o) const { return std::binary_search(orbits_.begin(), orbits_.end(), o); }

bool SupportSet::intersects(const SupportSet& o) const {
    auto a = orbits_.begin();
    auto b = o.orbits_.begin();
    while (a != orbits_.end() && b != o.orbits_.end()) {
        if (*a == *b) return true;
        if (*a < *b) ++a;
        else ++b;
    }
    return false;
}

bool SupportSet::subset_of(const SupportSet& o) const {
    return std::includes(o.orbits_.begin(), o.orbits_.end(), orbits_.begin(), orbits_.end());
}

void SupportSet::insert(OrbitId o) {
    auto it = std::lower_bound(orbits_.begin(), orbits_.end(), o);
    if (it == orbits_.end() || *it != o) orbits_.insert(it, o);
}

SupportSet SupportSet::united(const SupportSet& o) const {
    std::vector<OrbitId> out;
    std::set_union(orbits_.begin(), orbits_.end(), o.orbits_.begin(), o.orbits_.end(), std::back_inserter(out));
    SupportSet s;
    s.orbits_ = std::move(out);
    return s;
}

Cycle canonical_cycle(std::vector<EdgeId> edges) {
    if (edges.empty()) return {};
    std::vector<EdgeId> best = edges;
    const std::size_t n = edges.size();
    for (std::size_t r = 1; r < n; ++r) {
        std::rotate(edges.begin(), edges.begin() + 1, edges.end());
        if (edges < best) best = edges;
    }
    return Cycle{std::move(best)};
}

namespace {

// Johnson's elementary circuit search on the simple digraph underlying the
// quotient (loops and parallel edges are expanded afterwards).
class JohnsonSearch {
public:
    JohnsonSearch(const QuotientGraph& g, std::size_t cap) : g_(g), n_(g.orbit_count()), cap_(cap) {
        adj_.resize(n_);
        parallel_.assign(n_ * n_, {});
        for (const auto& e : g.edges()) {
            if (e.src == e.dst) continue;
            auto& slot = parallel_[e.src * n_ + e.dst];
            if (slot.empty()) adj_[e.src].push_back(e.dst);
            slot.push_back(e.id);
        }
        for (auto& a : adj_) std::sort(a.begin(), a.end());
    }

    void run(std::vector<Cycle>& out) {
        out_ = &out;
        for (const auto& e : g_.edges()) {
            if (e.src == e.dst) emit_edges({e.id});
        }
        for (OrbitId s = 0; s < n_; ++s) {
            in_component_ = component_of(s);
            if (std::count(in_component_.begin(), in_component_.end(), true) < 2) continue;
            start_ = s;
            blocked_.assign(n_, false);
            blocked_by_.assign(n_, {});
            stack_.clear();
            circuit(s);
        }
    }

private:
    // Strongly connected component of s within the subgraph on orbits >= s.
    std::vector<bool> component_of(OrbitId s) const {
        std::vector<bool> fwd(n_, false), bwd(n_, false);
        std::vector<OrbitId> todo{s};
        fwd[s] = true;
        while (!todo.empty()) {
            auto v = todo.back();
            todo.pop_back();
            for (auto w : adj_[v])
                if (w >= s && !fwd[w]) fwd[w] = true, todo.push_back(w);
        }
        todo = {s};
        bwd[s] = true;
        while (!todo.empty()) {
            auto v = todo.back();
            todo.pop_back();
            for (OrbitId u = s; u < n_; ++u)
                if (!bwd[u] && !parallel_[u * n_ + v].empty()) bwd[u] = true, todo.push_back(u);
        }
        std::vector<bool> comp(n_, false);
        for (OrbitId v = s; v < n_; ++v) comp[v] = fwd[v] && bwd[v];
        return comp;
    }

    void unblock(OrbitId u) {
        blocked_[u] = false;
        auto pending = std::move(blocked_by_[u]);
        blocked_by_[u].clear();
        for (auto w : pending)
            if (blocked_[w]) unblock(w);
    }

    bool circuit(OrbitId v) {
        bool found = false;
        stack_.push_back(v);
        blocked_[v] = true;
        for (auto w : adj_[v]) {
            if (!in_component_[w]) continue;
            if (w == start_) {
                emit_vertex_cycle();
                found = true;
            } else if (!blocked_[w] && circuit(w)) {
                found = true;
            }
        }
        if (found) {
            unblock(v);
        } else {
            for (auto w : adj_[v]) {
                if (!in_component_[w]) continue;
                auto& b = blocked_by_[w];
                if (std::find(b.begin(), b.end(), v) == b.end()) b.push_back(v);
            }
        }
        stack_.pop_back();
        return found;
    }

    void emit_vertex_cycle() {
        const std::size_t len = stack_.size();
        std::vector<const std::vector<EdgeId>*> choices(len);
        for (std::size_t i = 0; i < len; ++i) {
            auto a = stack_[i];
            auto b = stack_[(i + 1) % len];
            choices[i] = &parallel_[a * n_ + b];
        }
        std::vector<std::size_t> idx(len, 0);
        std::vector<EdgeId> edges(len);
        while (true) {
            for (std::size_t i = 0; i < len; ++i) edges[i] = (*choices[i])[idx[i]];
            emit_edges(edges);
            std::size_t k = 0;
            while (k < len && ++idx[k] == choices[k]->size()) idx[k++] = 0;
            if (k == len) break;
        }
    }

    void emit_edges(std::vector<EdgeId> edges) {
        if (out_->size() >= cap_)
            throw ResourceLimitError("cycle count exceeds cap of " + std::to_string(cap_));
        out_->push_back(canonical_cycle(std::move(edges)));
    }

    const QuotientGraph& g_;
    std::size_t n_;
    std::size_t cap_;
    std::vector<std::vector<OrbitId>> adj_;
    std::vector<std::vector<EdgeId>> parallel_;
    std::vector<bool> in_component_;
    std::vector<bool> blocked_;
    std::vector<std::vector<OrbitId>> blocked_by_;
    std::vector<OrbitId> stack_;
    OrbitId start_ = 0;
    std::vector<Cycle>* out_ = nullptr;
};

} // namespace

std::vector<Cycle> enumerate_cycles(const QuotientGraph& g, const CycleOptions& opts) {
    std::vector<Cycle> out;
    JohnsonSearch(g, opts.max_cycles).run(out);
    std::sort(out.begin(), out.end());
    return out;
}

bool is_valid_walk(const QuotientGraph& g, const QWalk& q) {
    if (q.base >= g.orbit_count()) return false;
    OrbitId at = q.base;
    for (auto id : q.edges) {
        if (id >= g.edges().size()) return false;
        const auto& e = g.edge(id);
        if (e.src != at) return false;
        at = e.dst;
    }
    return true;
}

OrbitId walk_end(const QuotientGraph& g, const QWalk& q) {
    return q.edges.empty() ? q.base : g.edge(q.edges.back()).dst;
}

std::int64_t walk_weight(const QuotientGraph& g, std::span<const EdgeId> edges) {
    std::int64_t w = 0;
    for (auto id : edges) w = checked_add(w, g.edge(id).weight);
    return w;
}

EdgeChain chain_of_walk(std::span<const EdgeId> edges) {
    EdgeChain c;
    for (auto id : edges) ++c[id];
    return c;
}

EdgeChain chain_add(const EdgeChain& a, const EdgeChain& b) {
    EdgeChain c = a;
    for (const auto& [id, m] : b) {
        auto v = checked_add(c[id], m);
        if (v == 0) c.erase(id);
        else c[id] = v;
    }
    return c;
}

std::vector<std::int64_t> boundary(const QuotientGraph& g, const EdgeChain& c) {
    std::vector<std::int64_t> b(g.orbit_count(), 0);
    for (const auto& [id, m] : c) {
        const auto& e = g.edge(id);
        b[e.dst] = checked_add(b[e.dst], m);
        b[e.src] = checked_add(b[e.src], -m);
    }
    return b;
}

LatticeVector mu(const QuotientGraph& g, const EdgeChain& c) {
    auto b = boundary(g, c);
    for (auto x : b)
        if (x != 0) throw MathError("not a homology class: chain has nonzero boundary");
    LatticeVector v(g.dim(), 0);
    for (const auto& [id, m] : c) add_in_place(v, scale(g.edge(id).shift, m));
    return v;
}

SupportSet support(const QuotientGraph& g, const QWalk& q) {
    std::vector<OrbitId> o{q.base};
    for (auto id : q.edges) {
        o.push_back(g.edge(id).src);
        o.push_back(g.edge(id).dst);
    }
    return SupportSet(std::move(o));
}

SupportSet support(const QuotientGraph& g, const Cycle& c) {
    std::vector<OrbitId> o;
    for (auto id : c.edges) o.push_back(g.edge(id).dst);
    return SupportSet(std::move(o));
}

GammaWalk lift_walk(const QuotientGraph& g, const QWalk& q, const PeriodicVertex& x0) {
    if (q.base != x0.orbit) throw InputError("lift_walk: walk starts at a different orbit than the base vertex");
    if (!is_valid_walk(g, q)) throw InputError("lift_walk: not a valid walk");
    GammaWalk p;
    p.start = x0;
    PeriodicVertex at = x0;
    for (auto id : q.edges) {
        GammaEdge e{id, at.coord};
        at = target(g, e);
        p.edges.push_back(std::move(e));
    }
    p.end = std::move(at);
    return p;
}

bool is_walkable(const QuotientGraph& g, const QWalk& path, std::span<const Cycle> cycles) {
    SupportSet acc = support(g, path);
    std::vector<SupportSet> supps;
    supps.reserve(cycles.size());
    for (const auto& c : cycles) supps.push_back(support(g, c));
    std::vector<bool> used(cycles.size(), false);
    std::size_t remaining = cycles.size();
    bool progress = true;
    while (remaining > 0 && progress) {
        progress = false;
        for (std::size_t i = 0; i < supps.size(); ++i) {
            if (used[i] || !acc.intersects(supps[i])) continue;
            used[i] = true;
            acc = acc.united(supps[i]);
            --remaining;
            progress = true;
        }
    }
    return remaining == 0;
}

WalkDecomposition decompose_walk(const QuotientGraph& g, const QWalk& q) {
    if (!is_valid_walk(g, q)) throw InputError("decompose_walk: not a valid walk");
    WalkDecomposition out;
    // Current path as edge list plus the orbit sequence it visits.
    std::vector<EdgeId> path;
    std::vector<OrbitId> visited{q.base};
    for (auto id : q.edges) {
        OrbitId next = g.edge(id).dst;
        path.push_back(id);
        auto it = std::find(visited.begin(), visited.end(), next);
        if (it == visited.end()) {
            visited.push_back(next);
            continue;
        }
        // The tail of the path from the earlier visit of `next` closes a cycle.
        auto from = static_cast<std::size_t>(it - visited.begin());
        std::vector<EdgeId> cyc(path.begin() + static_cast<std::ptrdiff_t>(from), path.end());
        path.resize(from);
        visited.resize(from + 1);
        out.cycles.push_back(canonical_cycle(std::move(cyc)));
    }
    out.path = QWalk{q.base, std::move(path)};
    return out;
}

} // namespace perigrowth
