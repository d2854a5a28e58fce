#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "realtree/errors.hpp"
#include "realtree/finite_metric.hpp"
#include "realtree/scalar.hpp"

namespace realtree {

/*
 * A connected weighted graph, sharing the tree edge schema without the
 * acyclicity requirement. Geodesics are realized by treating each edge as an
 * interval; all-pairs vertex distances are precomputed on construction.
 */
template <class S>
class WeightedGraph {
public:
    struct Edge {
        std::size_t u, v;
        S len;
    };

    struct RawEdge {
        std::string u, v;
        S len;
    };

    WeightedGraph(std::vector<std::string> vertex_ids, const std::vector<RawEdge>& raw_edges) {
        std::sort(vertex_ids.begin(), vertex_ids.end());
        ids_ = std::move(vertex_ids);
        for (std::size_t i = 0; i < ids_.size(); ++i) {
            if (i > 0 && ids_[i] == ids_[i - 1])
                throw ValidationError("duplicate_vertex", {i}, "vertex id " + ids_[i] + " repeats");
            index_.emplace(ids_[i], i);
        }
        if (ids_.empty()) throw ValidationError("nonempty", {}, "graph has no vertices");

        for (const auto& e : raw_edges) {
            std::size_t u = vertex(e.u), v = vertex(e.v);
            if (u == v) throw Cyclic(e.u, e.v);
            if (!(e.len > scalar_traits<S>::zero())) throw NonpositiveLength(e.u, e.v);
            if (u > v) std::swap(u, v);
            edges_.push_back(Edge{u, v, e.len});
        }
        std::sort(edges_.begin(), edges_.end(), [&](const Edge& a, const Edge& b) {
            return std::pair(a.u, a.v) < std::pair(b.u, b.v);
        });
        for (std::size_t e = 1; e < edges_.size(); ++e)
            if (edges_[e].u == edges_[e - 1].u && edges_[e].v == edges_[e - 1].v)
                throw ValidationError("parallel_edge", {e},
                                      "duplicate edge {" + ids_[edges_[e].u] + ", " +
                                          ids_[edges_[e].v] + "}");

        adj_.assign(ids_.size(), {});
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            adj_[edges_[e].u].push_back(e);
            adj_[edges_[e].v].push_back(e);
        }

        // Floyd-Warshall; absent paths surface as Disconnected
        const std::size_t n = ids_.size();
        const S zero = scalar_traits<S>::zero();
        dist_.assign(n, std::vector<std::optional<S>>(n));
        for (std::size_t i = 0; i < n; ++i) dist_[i][i] = zero;
        for (const auto& e : edges_) {
            if (!dist_[e.u][e.v] || e.len < *dist_[e.u][e.v])
                dist_[e.u][e.v] = dist_[e.v][e.u] = e.len;
        }
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i) {
                if (!dist_[i][k]) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (!dist_[k][j]) continue;
                    S through = *dist_[i][k] + *dist_[k][j];
                    if (!dist_[i][j] || through < *dist_[i][j]) dist_[i][j] = through;
                }
            }
        for (std::size_t i = 0; i < n; ++i)
            if (!dist_[0][i]) throw Disconnected(ids_[0], ids_[i]);
    }

    std::size_t size() const { return ids_.size(); }
    const std::vector<std::string>& vertex_ids() const { return ids_; }
    const std::string& id(std::size_t v) const { return ids_[v]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::size_t>& incident_edges(std::size_t v) const { return adj_[v]; }

    std::size_t vertex(std::string_view id) const {
        auto it = index_.find(std::string(id));
        if (it == index_.end()) throw UnknownLabel(std::string(id));
        return it->second;
    }

    const S& d(std::size_t a, std::size_t b) const { return *dist_[a][b]; }

    std::size_t other_end(std::size_t e, std::size_t v) const {
        return edges_[e].u == v ? edges_[e].v : edges_[e].u;
    }

    std::optional<std::size_t> edge_between(std::size_t a, std::size_t b) const {
        for (std::size_t e : adj_[a])
            if (other_end(e, a) == b) return e;
        return std::nullopt;
    }

private:
    std::vector<std::string> ids_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> adj_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::vector<std::optional<S>>> dist_;
};

// A point of the geodesic realization: on edge e at offset from e's u end.
template <class S>
struct GraphPoint {
    std::size_t edge;
    S offset;
};

namespace detail {

// Distance from a realization point to a vertex.
template <class S>
S point_vertex_distance(const WeightedGraph<S>& g, const GraphPoint<S>& p, std::size_t w) {
    const auto& e = g.edges()[p.edge];
    return std::min(p.offset + g.d(e.u, w), e.len - p.offset + g.d(e.v, w));
}

// Distance between two realization points (same-edge shortcut included).
template <class S>
S point_point_distance(const WeightedGraph<S>& g, const GraphPoint<S>& p, const GraphPoint<S>& q) {
    const auto& ep = g.edges()[p.edge];
    const auto& eq = g.edges()[q.edge];
    S best = p.offset + g.d(ep.u, eq.u) + q.offset;
    best = std::min(best, p.offset + g.d(ep.u, eq.v) + (eq.len - q.offset));
    best = std::min(best, (ep.len - p.offset) + g.d(ep.v, eq.u) + q.offset);
    best = std::min(best, (ep.len - p.offset) + g.d(ep.v, eq.v) + (eq.len - q.offset));
    if (p.edge == q.edge) best = std::min(best, scalar_traits<S>::abs(p.offset - q.offset));
    return best;
}

}  // namespace detail

/*
 * A side of a triangle: a shortest path given as a vertex sequence.
 * arc(t) resolves the realization point at arc length t from the front.
 */
template <class S>
class SidePath {
public:
    SidePath(const WeightedGraph<S>& g, std::vector<std::size_t> vertices, const std::string& name)
        : g_(&g), vertices_(std::move(vertices)) {
        S len = scalar_traits<S>::zero();
        cum_.push_back(len);
        for (std::size_t k = 0; k + 1 < vertices_.size(); ++k) {
            auto e = g.edge_between(vertices_[k], vertices_[k + 1]);
            if (!e) throw NotAShortestPath(name + " (consecutive vertices not adjacent)");
            edges_.push_back(*e);
            len = len + g.edges()[*e].len;
            cum_.push_back(len);
        }
        if (len > g.d(vertices_.front(), vertices_.back()) + scalar_traits<S>::default_tol())
            throw NotAShortestPath(name + " (length exceeds the graph distance)");
    }

    S length() const { return cum_.back(); }
    const std::vector<std::size_t>& vertices() const { return vertices_; }
    const std::vector<std::size_t>& edge_ids() const { return edges_; }
    std::size_t front() const { return vertices_.front(); }
    std::size_t back() const { return vertices_.back(); }
    bool degenerate() const { return edges_.empty(); }

    GraphPoint<S> arc(const S& t) const {
        std::size_t k = 0;
        while (k + 1 < edges_.size() && !(t < cum_[k + 1])) ++k;
        const auto& e = g_->edges()[edges_[k]];
        S local = t - cum_[k];
        S off = (e.u == vertices_[k]) ? local : e.len - local;
        return GraphPoint<S>{edges_[k], off};
    }

    // Arc positions of all subdivision points: every edge cut into `subdiv`
    // equal pieces, plus the endpoints.
    std::vector<S> sample_arcs(unsigned subdiv) const {
        std::vector<S> out{scalar_traits<S>::zero()};
        for (std::size_t k = 0; k < edges_.size(); ++k) {
            S step = g_->edges()[edges_[k]].len / scalar_traits<S>::from_int(subdiv);
            for (unsigned j = 1; j <= subdiv; ++j)
                out.push_back(cum_[k] + step * scalar_traits<S>::from_int(j));
        }
        return out;
    }

    // Exact distance from a realization point to this side as a subset: the
    // nearest approach to any edge of the side is attained at one of the
    // edge's endpoints, unless the point lies on a side edge itself.
    S distance_from(const GraphPoint<S>& p) const {
        for (std::size_t e : edges_)
            if (e == p.edge) return scalar_traits<S>::zero();
        if (degenerate()) return detail::point_vertex_distance(*g_, p, vertices_.front());
        std::optional<S> best;
        for (std::size_t v : vertices_) {
            S d = detail::point_vertex_distance(*g_, p, v);
            if (!best || d < *best) best = d;
        }
        return *best;
    }

private:
    const WeightedGraph<S>* g_;
    std::vector<std::size_t> vertices_;
    std::vector<std::size_t> edges_;
    std::vector<S> cum_;
};

// Three vertices with one chosen shortest path per pair: sides[0] joins
// corners[0],corners[1]; sides[1] joins corners[0],corners[2]; sides[2]
// joins corners[1],corners[2].
template <class S>
struct GeodesicTriangle {
    std::array<std::size_t, 3> corners;
    std::array<std::vector<std::size_t>, 3> sides;
};

namespace detail {

template <class S>
std::array<SidePath<S>, 3> resolve_sides(const WeightedGraph<S>& g,
                                         const GeodesicTriangle<S>& tri) {
    static const char* names[3] = {"side xy", "side xz", "side yz"};
    std::array<std::pair<std::size_t, std::size_t>, 3> ends = {
        std::pair{tri.corners[0], tri.corners[1]},
        std::pair{tri.corners[0], tri.corners[2]},
        std::pair{tri.corners[1], tri.corners[2]},
    };
    std::array<std::optional<SidePath<S>>, 3> out;
    for (std::size_t s = 0; s < 3; ++s) {
        std::vector<std::size_t> verts = tri.sides[s];
        if (verts.empty()) throw NotAShortestPath(std::string(names[s]) + " (empty)");
        if (verts.front() == ends[s].second && verts.back() == ends[s].first)
            std::reverse(verts.begin(), verts.end());
        if (verts.front() != ends[s].first || verts.back() != ends[s].second)
            throw NotAShortestPath(std::string(names[s]) + " (endpoints differ from corners)");
        out[s].emplace(g, std::move(verts), names[s]);
    }
    return {*out[0], *out[1], *out[2]};
}

template <class S>
SidePath<S> reversed(const WeightedGraph<S>& g, const SidePath<S>& side) {
    std::vector<std::size_t> verts(side.vertices().rbegin(), side.vertices().rend());
    return SidePath<S>(g, std::move(verts), "reversed side");
}

}  // namespace detail

/*
 * Thin constant of one triangle: each side splits at the Gromov products of
 * its endpoints; points in matching parts at equal arc lengths from the
 * shared corner are compared. The split arc itself is matched both ways.
 * Sampling resolution: subdiv points per edge.
 */
template <class S>
S triangle_thinness(const WeightedGraph<S>& g, const GeodesicTriangle<S>& tri, unsigned subdiv) {
    if (subdiv < 1) throw ValidationError("subdiv", {}, "subdiv must be >= 1");
    auto sides = detail::resolve_sides(g, tri);
    S out = scalar_traits<S>::zero();
    const S two = scalar_traits<S>::from_int(2);

    // corner-anchored comparison of two sides leaving the same corner
    auto compare = [&](const SidePath<S>& s1, const SidePath<S>& s2, const S& split) {
        if (s1.degenerate() || s2.degenerate()) return;  // split is 0, both points coincide
        std::vector<S> arcs = s1.sample_arcs(subdiv);
        arcs.push_back(split);
        for (S t : arcs) {
            if (t > split) continue;
            if (t > s2.length()) t = s2.length();
            S d = detail::point_point_distance(g, s1.arc(t), s2.arc(t));
            if (d > out) out = d;
        }
    };

    for (int corner = 0; corner < 3; ++corner) {
        // the two sides incident to this corner, oriented to leave it
        int sa, sb;
        if (corner == 0) { sa = 0; sb = 1; }
        else if (corner == 1) { sa = 0; sb = 2; }
        else { sa = 1; sb = 2; }
        std::size_t c = tri.corners[corner];
        SidePath<S> p = sides[sa].front() == c ? sides[sa] : detail::reversed(g, sides[sa]);
        SidePath<S> q = sides[sb].front() == c ? sides[sb] : detail::reversed(g, sides[sb]);
        std::size_t oa = p.back(), ob = q.back();
        // split of side p at this corner: (other endpoint of q, far corner)_c
        S split = (g.d(c, oa) + g.d(c, ob) - g.d(oa, ob)) / two;
        compare(p, q, split);
        compare(q, p, split);
    }
    return out;
}

// Slim constant: largest distance from a sampled side point to the union of
// the two other sides (side-to-point distances are exact; only the sampled
// side is discretized).
template <class S>
S triangle_slimness(const WeightedGraph<S>& g, const GeodesicTriangle<S>& tri, unsigned subdiv) {
    if (subdiv < 1) throw ValidationError("subdiv", {}, "subdiv must be >= 1");
    auto sides = detail::resolve_sides(g, tri);
    S out = scalar_traits<S>::zero();
    for (std::size_t s = 0; s < 3; ++s) {
        const SidePath<S>& side = sides[s];
        if (side.degenerate()) continue;  // its only point is a corner of the other sides
        const SidePath<S>& o1 = sides[(s + 1) % 3];
        const SidePath<S>& o2 = sides[(s + 2) % 3];
        for (const S& t : side.sample_arcs(subdiv)) {
            GraphPoint<S> p = side.arc(t);
            S d = std::min(o1.distance_from(p), o2.distance_from(p));
            if (d > out) out = d;
        }
    }
    return out;
}

// All shortest paths between two vertices, as vertex sequences; DFS over the
// shortest-path relation. Guarded by a vertex cap since the count can grow
// exponentially.
template <class S>
std::vector<std::vector<std::size_t>> all_shortest_paths(const WeightedGraph<S>& g, std::size_t a,
                                                         std::size_t b,
                                                         std::size_t max_vertices = 12) {
    if (g.size() > max_vertices) throw TooLarge(g.size(), max_vertices);
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur{a};
    std::function<void(std::size_t)> dfs = [&](std::size_t v) {
        if (v == b) {
            out.push_back(cur);
            return;
        }
        const S tol = scalar_traits<S>::default_tol();
        for (std::size_t e : g.incident_edges(v)) {
            std::size_t w = g.other_end(e, v);
            S through = g.d(a, v) + g.edges()[e].len;
            if (scalar_traits<S>::abs(through + g.d(w, b) - g.d(a, b)) <= tol &&
                scalar_traits<S>::abs(g.d(a, w) - through) <= tol) {
                cur.push_back(w);
                dfs(w);
                cur.pop_back();
            }
        }
    };
    dfs(a);
    return out;
}

// Largest over vertex triples, chosen geodesics and sampled base points of
// min((x,z)_w, (y,z)_w) with w on a geodesic from x to y; a zero value at
// mesh resolution certifies tree-likeness of the geodesic structure.
template <class S>
S geodesic_base_product_sup(const WeightedGraph<S>& g, unsigned subdiv,
                            std::size_t max_vertices = 12) {
    S out = scalar_traits<S>::zero();
    const S two = scalar_traits<S>::from_int(2);
    for (std::size_t x = 0; x < g.size(); ++x)
        for (std::size_t y = x + 1; y < g.size(); ++y) {
            auto paths = all_shortest_paths(g, x, y, max_vertices);
            for (std::size_t z = 0; z < g.size(); ++z) {
                for (const auto& verts : paths) {
                    SidePath<S> side(g, verts, "geodesic");
                    for (const S& t : side.sample_arcs(subdiv)) {
                        GraphPoint<S> w = side.arc(t);
                        S dwx = detail::point_vertex_distance(g, w, x);
                        S dwy = detail::point_vertex_distance(g, w, y);
                        S dwz = detail::point_vertex_distance(g, w, z);
                        S px = (dwx + dwz - g.d(x, z)) / two;
                        S py = (dwy + dwz - g.d(y, z)) / two;
                        S v = std::min(px, py);
                        if (v > out) out = v;
                    }
                }
            }
        }
    return out;
}

// Hausdorff distance between two paths (as subsets of the realization),
// sampled on one side and exact on the other.
template <class S>
S path_hausdorff_distance(const WeightedGraph<S>& g, const std::vector<std::size_t>& p1,
                          const std::vector<std::size_t>& p2, unsigned subdiv) {
    SidePath<S> a(g, p1, "path one");
    SidePath<S> b(g, p2, "path two");
    if (a.degenerate() && b.degenerate()) return g.d(a.front(), b.front());
    S out = scalar_traits<S>::zero();
    if (!a.degenerate())
        for (const S& t : a.sample_arcs(subdiv)) {
            S d = b.degenerate() ? detail::point_vertex_distance(g, a.arc(t), b.front())
                                 : b.distance_from(a.arc(t));
            if (d > out) out = d;
        }
    if (!b.degenerate())
        for (const S& t : b.sample_arcs(subdiv)) {
            S d = a.degenerate() ? detail::point_vertex_distance(g, b.arc(t), a.front())
                                 : a.distance_from(b.arc(t));
            if (d > out) out = d;
        }
    return out;
}

// One subdivision step: the sampling resolution all triangle inequalities
// are asserted at.
template <class S>
S mesh_step(const WeightedGraph<S>& g, unsigned subdiv) {
    S m = scalar_traits<S>::zero();
    for (const auto& e : g.edges())
        if (e.len > m) m = e.len;
    return m / scalar_traits<S>::from_int(subdiv);
}

// Vertex metric of the graph, labeled by vertex identifiers.
template <class S>
FiniteMetric<S> metric_of_graph(const WeightedGraph<S>& g) {
    const std::size_t n = g.size();
    std::vector<S> d(n * n, scalar_traits<S>::zero());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i * n + j] = g.d(i, j);
    return FiniteMetric<S>(g.vertex_ids(), std::move(d));
}

}  // namespace realtree
