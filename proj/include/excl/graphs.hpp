#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "excl/events.hpp"

namespace excl {

/// Simple undirected graph on at most 64 vertices: events are vertices,
/// exclusive pairs are edges. Adjacency is one 64-bit mask per vertex.
/// Immutable after construction.
class ExclusivityGraph {
public:
    static constexpr std::size_t kMaxVertices = 64;

    static ExclusivityGraph from_edges(std::size_t n,
                                       const std::vector<std::pair<int, int>>& edges,
                                       std::vector<std::string> labels = {}) {
        ExclusivityGraph g(n, std::move(labels));
        for (const auto& [i, j] : edges) g.add_edge(i, j);
        return g;
    }

    std::size_t size() const { return n_; }

    bool adjacent(int i, int j) const {
        check_vertex(i);
        check_vertex(j);
        return (adj_[static_cast<std::size_t>(i)] >> j) & 1u;
    }

    std::uint64_t neighbor_mask(int i) const {
        check_vertex(i);
        return adj_[static_cast<std::size_t>(i)];
    }

    int degree(int i) const { return std::popcount(neighbor_mask(i)); }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (std::uint64_t row : adj_) twice += static_cast<std::size_t>(std::popcount(row));
        return twice / 2;
    }

    /// Edges as (i, j) with i < j, lexicographically sorted.
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i < static_cast<int>(n_); ++i)
            for (int j = i + 1; j < static_cast<int>(n_); ++j)
                if (adjacent(i, j)) out.emplace_back(i, j);
        return out;
    }

    const std::vector<std::string>& labels() const { return labels_; }
    bool circulant_tagged() const { return circulant_; }

    friend bool operator==(const ExclusivityGraph& a, const ExclusivityGraph& b) {
        return a.n_ == b.n_ && a.adj_ == b.adj_ && a.labels_ == b.labels_;
    }

    friend ExclusivityGraph complement(const ExclusivityGraph& g);
    friend ExclusivityGraph circulant(std::size_t n, const std::vector<int>& offsets);

private:
    ExclusivityGraph(std::size_t n, std::vector<std::string> labels)
        : n_(n), adj_(n, 0), labels_(std::move(labels)) {
        if (n_ < 1) throw std::invalid_argument("ExclusivityGraph: need at least one vertex");
        if (n_ > kMaxVertices)
            throw std::invalid_argument("ExclusivityGraph: vertex count exceeds 64");
        if (!labels_.empty()) {
            if (labels_.size() != n_)
                throw std::invalid_argument("ExclusivityGraph: labels must cover all vertices");
            std::vector<std::string> sorted = labels_;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw std::invalid_argument("ExclusivityGraph: labels must be distinct");
        }
    }

    void check_vertex(int i) const {
        if (i < 0 || static_cast<std::size_t>(i) >= n_)
            throw std::invalid_argument("ExclusivityGraph: vertex index out of range");
    }

    void add_edge(int i, int j) {
        check_vertex(i);
        check_vertex(j);
        if (i == j) throw std::invalid_argument("ExclusivityGraph: self-loops are not allowed");
        adj_[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
        adj_[static_cast<std::size_t>(j)] |= std::uint64_t{1} << i;
    }

    std::size_t n_;
    std::vector<std::uint64_t> adj_;
    std::vector<std::string> labels_;
    bool circulant_ = false;
};

/// Vertex i of the result is family.events[i]; edges follow the
/// exclusivity relation; labels carry the event notation.
inline ExclusivityGraph from_events(const EventFamily& family) {
    if (family.events.empty()) throw std::invalid_argument("from_events: empty family");
    const std::size_t n = family.size();
    std::vector<std::string> labels;
    labels.reserve(n);
    for (const Event& e : family.events) labels.push_back(e.label());
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < static_cast<int>(n); ++i)
        for (int j = i + 1; j < static_cast<int>(n); ++j)
            if (exclusive(family[i], family[j])) edges.emplace_back(i, j);
    return ExclusivityGraph::from_edges(n, edges, std::move(labels));
}

/// Complement on the same vertex set; labels and the circulant tag carry over
/// (the complement of a circulant graph is the circulant on the remaining offsets).
inline ExclusivityGraph complement(const ExclusivityGraph& g) {
    const std::size_t n = g.size();
    ExclusivityGraph out(n, g.labels());
    for (int i = 0; i < static_cast<int>(n); ++i)
        for (int j = i + 1; j < static_cast<int>(n); ++j)
            if (!g.adjacent(i, j)) out.add_edge(i, j);
    out.circulant_ = g.circulant_;
    return out;
}

/// Circulant graph: vertex i adjacent to i +/- d (mod n) for each offset d.
/// Cycles are circulant(n, {1}); complete graphs circulant(n, {1..n/2}).
inline ExclusivityGraph circulant(std::size_t n, const std::vector<int>& offsets) {
    if (offsets.empty()) throw std::invalid_argument("circulant: offsets must be nonempty");
    for (int d : offsets)
        if (d < 1 || static_cast<std::size_t>(d) > n / 2)
            throw std::invalid_argument("circulant: offset out of range 1..n/2");
    ExclusivityGraph g(n, {});
    for (int i = 0; i < static_cast<int>(n); ++i)
        for (int d : offsets) {
            const int j = (i + d) % static_cast<int>(n);
            if (i != j) g.add_edge(i, j);
        }
    g.circulant_ = true;
    return g;
}

namespace detail {

// Extends a partial vertex map g -> h one vertex at a time, trying target
// candidates in increasing order, so the first complete map found is the
// lexicographically smallest isomorphism.
inline bool extend_isomorphism(const ExclusivityGraph& g, const ExclusivityGraph& h,
                               std::vector<int>& map, std::vector<bool>& used,
                               std::size_t k) {
    const std::size_t n = g.size();
    if (k == n) return true;
    for (int u = 0; u < static_cast<int>(n); ++u) {
        if (used[static_cast<std::size_t>(u)]) continue;
        if (h.degree(u) != g.degree(static_cast<int>(k))) continue;
        bool consistent = true;
        for (std::size_t i = 0; i < k; ++i) {
            if (h.adjacent(map[i], u) != g.adjacent(static_cast<int>(i), static_cast<int>(k))) {
                consistent = false;
                break;
            }
        }
        if (!consistent) continue;
        map[k] = u;
        used[static_cast<std::size_t>(u)] = true;
        if (extend_isomorphism(g, h, map, used, k + 1)) return true;
        used[static_cast<std::size_t>(u)] = false;
    }
    return false;
}

inline bool extend_automorphism(const ExclusivityGraph& g, const std::vector<int>& order,
                                std::vector<int>& assigned, std::vector<bool>& used,
                                std::size_t k, int forced_first) {
    const std::size_t n = g.size();
    if (k == n) return true;
    auto try_candidate = [&](int u) -> bool {
        if (used[static_cast<std::size_t>(u)]) return false;
        if (g.degree(u) != g.degree(order[k])) return false;
        for (std::size_t i = 0; i < k; ++i)
            if (g.adjacent(assigned[i], u) != g.adjacent(order[i], order[k])) return false;
        assigned[k] = u;
        used[static_cast<std::size_t>(u)] = true;
        if (extend_automorphism(g, order, assigned, used, k + 1, forced_first)) return true;
        used[static_cast<std::size_t>(u)] = false;
        return false;
    };
    if (k == 0) return try_candidate(forced_first);
    for (int u = 0; u < static_cast<int>(n); ++u)
        if (try_candidate(u)) return true;
    return false;
}

// Same search restricted to automorphisms of g that send `src` to `dst`.
inline bool automorphism_mapping_exists(const ExclusivityGraph& g, int src, int dst) {
    const std::size_t n = g.size();
    std::vector<int> order;
    order.push_back(src);
    for (int i = 0; i < static_cast<int>(n); ++i)
        if (i != src) order.push_back(i);
    std::vector<int> assigned(n, -1);
    std::vector<bool> used(n, false);
    return extend_automorphism(g, order, assigned, used, 0, dst);
}

} // namespace detail

/// Searches for a vertex permutation pi with
/// h.adjacent(pi(i), pi(j)) == g.adjacent(i, j) for all i, j.
/// Returns the lexicographically smallest such pi, or nullopt.
inline std::optional<std::vector<int>> is_isomorphic(const ExclusivityGraph& g,
                                                     const ExclusivityGraph& h) {
    if (g.size() != h.size()) return std::nullopt;
    const std::size_t n = g.size();
    std::vector<int> dg(n), dh(n);
    for (std::size_t i = 0; i < n; ++i) {
        dg[i] = g.degree(static_cast<int>(i));
        dh[i] = h.degree(static_cast<int>(i));
    }
    std::sort(dg.begin(), dg.end());
    std::sort(dh.begin(), dh.end());
    if (dg != dh) return std::nullopt;

    std::vector<int> map(n, -1);
    std::vector<bool> used(n, false);
    if (detail::extend_isomorphism(g, h, map, used, 0)) return map;
    return std::nullopt;
}

struct IndependenceResult {
    int size = 0;
    std::vector<int> witness; // one maximum independent set, ascending
};

/// Exact maximum independent set by branch and bound on bitsets.
/// The returned witness is re-verified pairwise non-adjacent.
inline IndependenceResult independence_number(const ExclusivityGraph& g) {
    const std::size_t n = g.size();
    struct Search {
        const ExclusivityGraph& g;
        int best = 0;
        std::uint64_t best_set = 0;

        void run(std::uint64_t candidates, std::uint64_t current, int current_size) {
            if (current_size + std::popcount(candidates) <= best) return;
            if (candidates == 0) {
                best = current_size;
                best_set = current;
                return;
            }
            // Branch on the candidate with the most candidate-neighbors
            // (lowest index on ties); including it prunes the most.
            int pick = -1;
            int pick_deg = -1;
            for (std::uint64_t m = candidates; m != 0; m &= m - 1) {
                const int v = std::countr_zero(m);
                const int d = std::popcount(g.neighbor_mask(v) & candidates);
                if (d > pick_deg) {
                    pick_deg = d;
                    pick = v;
                }
            }
            const std::uint64_t bit = std::uint64_t{1} << pick;
            run(candidates & ~(g.neighbor_mask(pick) | bit), current | bit, current_size + 1);
            run(candidates & ~bit, current, current_size);
        }
    } search{g};

    const std::uint64_t all =
        (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    search.run(all, 0, 0);

    IndependenceResult result;
    result.size = search.best;
    for (std::uint64_t m = search.best_set; m != 0; m &= m - 1)
        result.witness.push_back(std::countr_zero(m));
    for (std::size_t a = 0; a < result.witness.size(); ++a)
        for (std::size_t b = a + 1; b < result.witness.size(); ++b)
            if (g.adjacent(result.witness[a], result.witness[b]))
                throw std::logic_error("independence_number: witness failed verification");
    return result;
}

/// All maximal cliques (Bron-Kerbosch with pivoting). Each clique is
/// ascending; the sequence is sorted lexicographically.
inline std::vector<std::vector<int>> max_cliques(const ExclusivityGraph& g) {
    const std::size_t n = g.size();
    std::vector<std::uint64_t> found;

    struct Search {
        const ExclusivityGraph& g;
        std::vector<std::uint64_t>& out;

        void expand(std::uint64_t r, std::uint64_t p, std::uint64_t x) {
            if (p == 0 && x == 0) {
                out.push_back(r);
                return;
            }
            // Tomita pivot: vertex of P|X covering the most of P.
            int pivot = -1;
            int best_cover = -1;
            for (std::uint64_t m = p | x; m != 0; m &= m - 1) {
                const int u = std::countr_zero(m);
                const int cover = std::popcount(p & g.neighbor_mask(u));
                if (cover > best_cover) {
                    best_cover = cover;
                    pivot = u;
                }
            }
            std::uint64_t candidates = p & ~g.neighbor_mask(pivot);
            while (candidates != 0) {
                const int v = std::countr_zero(candidates);
                const std::uint64_t bit = std::uint64_t{1} << v;
                candidates &= candidates - 1;
                expand(r | bit, p & g.neighbor_mask(v), x & g.neighbor_mask(v));
                p &= ~bit;
                x |= bit;
            }
        }
    } search{g, found};

    const std::uint64_t all =
        (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    search.expand(0, all, 0);

    std::vector<std::vector<int>> cliques;
    cliques.reserve(found.size());
    for (std::uint64_t mask : found) {
        std::vector<int> c;
        for (std::uint64_t m = mask; m != 0; m &= m - 1) c.push_back(std::countr_zero(m));
        for (std::size_t a = 0; a < c.size(); ++a)
            for (std::size_t b = a + 1; b < c.size(); ++b)
                if (!g.adjacent(c[a], c[b]))
                    throw std::logic_error("max_cliques: clique failed verification");
        cliques.push_back(std::move(c));
    }
    std::sort(cliques.begin(), cliques.end());
    return cliques;
}

/// True iff every vertex can be mapped to every other by an automorphism.
/// Circulant-constructed graphs are transitive by construction; otherwise
/// an exhaustive search is run, capped at 10 vertices.
inline bool is_vertex_transitive(const ExclusivityGraph& g) {
    if (g.circulant_tagged()) return true;
    if (g.size() > 10)
        throw std::invalid_argument(
            "is_vertex_transitive: exhaustive search capped at 10 vertices");
    const int d0 = g.degree(0);
    for (int v = 1; v < static_cast<int>(g.size()); ++v)
        if (g.degree(v) != d0) return false;
    // The automorphisms form a group, so transitivity on the orbit of
    // vertex 0 is transitivity everywhere.
    for (int v = 1; v < static_cast<int>(g.size()); ++v)
        if (!detail::automorphism_mapping_exists(g, 0, v)) return false;
    return true;
}

inline bool is_self_complementary(const ExclusivityGraph& g) {
    return is_isomorphic(g, complement(g)).has_value();
}

} // namespace excl
