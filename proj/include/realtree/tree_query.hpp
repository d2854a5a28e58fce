#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "realtree/errors.hpp"
#include "realtree/finite_metric.hpp"
#include "realtree/weighted_tree.hpp"

namespace realtree {

// The unique geodesic between two points: its endpoints plus every vertex it
// traverses, with strictly increasing cumulative lengths. step_edge[k] is the
// edge carrying the leg from points[k] to points[k+1].
template <class S>
struct Segment {
    std::vector<TreePoint<S>> points;
    std::vector<S> cumulative;
    std::vector<std::size_t> step_edge;

    S length() const { return cumulative.back(); }
};

namespace detail {

template <class S>
std::vector<S> distances_from_vertex(const WeightedTree<S>& t, std::size_t src) {
    std::vector<S> dist(t.size(), scalar_traits<S>::zero());
    std::vector<char> seen(t.size(), 0);
    std::vector<std::size_t> stack{src};
    seen[src] = 1;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t e : t.incident_edges(v)) {
            std::size_t w = t.other_end(e, v);
            if (seen[w]) continue;
            seen[w] = 1;
            dist[w] = dist[v] + t.edge(e).len;
            stack.push_back(w);
        }
    }
    return dist;
}

template <class S>
std::vector<std::size_t> vertex_path(const WeightedTree<S>& t, std::size_t a, std::size_t b) {
    std::vector<std::size_t> parent(t.size(), TreePoint<S>::npos);
    std::vector<std::size_t> stack{a};
    parent[a] = a;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        if (v == b) break;
        for (std::size_t e : t.incident_edges(v)) {
            std::size_t w = t.other_end(e, v);
            if (parent[w] != TreePoint<S>::npos) continue;
            parent[w] = v;
            stack.push_back(w);
        }
    }
    std::vector<std::size_t> path;
    for (std::size_t v = b; v != a; v = parent[v]) path.push_back(v);
    path.push_back(a);
    std::reverse(path.begin(), path.end());
    return path;
}

// Anchor candidates of a point: (vertex, distance from the point to it).
template <class S>
std::vector<std::pair<std::size_t, S>> anchors(const WeightedTree<S>& t, const TreePoint<S>& p) {
    if (p.is_vertex()) return {{p.vertex, scalar_traits<S>::zero()}};
    const auto& e = t.edge(p.edge);
    return {{e.u, p.offset}, {e.v, e.len - p.offset}};
}

template <class S>
void check_point(const WeightedTree<S>& t, const TreePoint<S>& p) {
    if (p.is_vertex()) {
        if (p.vertex >= t.size()) throw InvalidPoint("vertex index out of range");
        return;
    }
    if (p.edge >= t.edge_count()) throw InvalidPoint("edge index out of range");
    if (!(p.offset > scalar_traits<S>::zero()) || !(p.offset < t.edge(p.edge).len))
        throw InvalidPoint("offset outside the open edge interval");
}

}  // namespace detail

template <class S>
bool points_equal(const WeightedTree<S>& t, const TreePoint<S>& p, const TreePoint<S>& q,
                  const S& tol = scalar_traits<S>::default_tol()) {
    (void)t;
    if (p.is_vertex() != q.is_vertex()) return false;
    if (p.is_vertex()) return p.vertex == q.vertex;
    return p.edge == q.edge && scalar_traits<S>::abs(p.offset - q.offset) <= tol;
}

template <class S>
S distance(const WeightedTree<S>& t, const TreePoint<S>& p, const TreePoint<S>& q) {
    detail::check_point(t, p);
    detail::check_point(t, q);
    if (!p.is_vertex() && !q.is_vertex() && p.edge == q.edge)
        return scalar_traits<S>::abs(p.offset - q.offset);
    // the geodesic leaves each carrying edge through one endpoint; take the
    // cheapest anchor combination (unique in a tree)
    auto ap = detail::anchors(t, p);
    auto aq = detail::anchors(t, q);
    std::optional<S> best;
    for (const auto& [vq, dq] : aq) {
        auto dist = detail::distances_from_vertex(t, vq);
        for (const auto& [vp, dp] : ap) {
            S total = dp + dist[vp] + dq;
            if (!best || total < *best) best = total;
        }
    }
    return *best;
}

template <class S>
Segment<S> segment(const WeightedTree<S>& t, const TreePoint<S>& p, const TreePoint<S>& q,
                   const S& tol = scalar_traits<S>::default_tol()) {
    detail::check_point(t, p);
    detail::check_point(t, q);
    Segment<S> seg;
    if (points_equal(t, p, q, tol)) {
        seg.points = {p};
        seg.cumulative = {scalar_traits<S>::zero()};
        return seg;
    }
    if (!p.is_vertex() && !q.is_vertex() && p.edge == q.edge) {
        seg.points = {p, q};
        seg.cumulative = {scalar_traits<S>::zero(), scalar_traits<S>::abs(p.offset - q.offset)};
        seg.step_edge = {p.edge};
        return seg;
    }

    auto ap = detail::anchors(t, p);
    auto aq = detail::anchors(t, q);
    std::optional<S> best;
    std::size_t best_p = 0, best_q = 0;
    for (std::size_t j = 0; j < aq.size(); ++j) {
        auto dist = detail::distances_from_vertex(t, aq[j].first);
        for (std::size_t i = 0; i < ap.size(); ++i) {
            S total = ap[i].second + dist[ap[i].first] + aq[j].second;
            if (!best || total < *best) {
                best = total;
                best_p = i;
                best_q = j;
            }
        }
    }

    auto path = detail::vertex_path(t, ap[best_p].first, aq[best_q].first);
    S cum = scalar_traits<S>::zero();
    seg.points.reserve(path.size() + 2);
    seg.cumulative.reserve(path.size() + 2);
    if (!p.is_vertex()) {
        seg.points.push_back(p);
        seg.cumulative.push_back(cum);
        seg.step_edge.push_back(p.edge);
        cum = cum + ap[best_p].second;
    }
    for (std::size_t k = 0; k < path.size(); ++k) {
        seg.points.push_back(TreePoint<S>::at_vertex(path[k]));
        seg.cumulative.push_back(cum);
        if (k + 1 < path.size()) {
            std::size_t e = *t.edge_between(path[k], path[k + 1]);
            seg.step_edge.push_back(e);
            cum = cum + t.edge(e).len;
        }
    }
    if (!q.is_vertex()) {
        seg.step_edge.push_back(q.edge);
        cum = cum + aq[best_q].second;
        seg.points.push_back(q);
        seg.cumulative.push_back(cum);
    }
    return seg;
}

namespace detail {

template <class S>
S position_on_edge(const WeightedTree<S>& t, std::size_t e, const TreePoint<S>& p) {
    if (!p.is_vertex()) return p.offset;
    return p.vertex == t.edge(e).u ? scalar_traits<S>::zero() : t.edge(e).len;
}

}  // namespace detail

// Point at arc length s along a segment; offsets within tol of an edge end
// collapse to the vertex.
template <class S>
TreePoint<S> point_at(const WeightedTree<S>& t, const Segment<S>& seg, const S& s,
                      const S& tol = scalar_traits<S>::default_tol()) {
    if (s <= tol) return seg.points.front();
    if (s >= seg.length() - tol) return seg.points.back();
    std::size_t k = 0;
    while (k + 1 < seg.cumulative.size() && !(s < seg.cumulative[k + 1])) ++k;
    if (k + 1 == seg.points.size()) return seg.points.back();
    std::size_t e = seg.step_edge[k];
    S pos_a = detail::position_on_edge(t, e, seg.points[k]);
    S pos_b = detail::position_on_edge(t, e, seg.points[k + 1]);
    S along = s - seg.cumulative[k];
    S off = pos_b > pos_a ? pos_a + along : pos_a - along;
    return TreePoint<S>::on_edge(t, e, off, tol);
}

// The unique common point of the three pairwise geodesics, located at
// half(d(x,y)+d(x,z)-d(y,z)) from x along [x,y]. Symmetric in its arguments.
template <class S>
TreePoint<S> median(const WeightedTree<S>& t, const TreePoint<S>& x, const TreePoint<S>& y,
                    const TreePoint<S>& z, const S& tol = scalar_traits<S>::default_tol()) {
    S dxy = distance(t, x, y);
    S dxz = distance(t, x, z);
    S dyz = distance(t, y, z);
    S reach = scalar_traits<S>::half(dxy + dxz - dyz);
    return point_at(t, segment(t, x, y, tol), reach, tol);
}

// Greatest common lower bound in the root order: median(root, x, y).
template <class S>
TreePoint<S> meet(const WeightedTree<S>& t, const TreePoint<S>& x, const TreePoint<S>& y,
                  const S& tol = scalar_traits<S>::default_tol()) {
    if (!t.root()) throw NoRoot();
    return median(t, TreePoint<S>::at_vertex(*t.root()), x, y, tol);
}

template <class S>
bool on_segment(const WeightedTree<S>& t, const TreePoint<S>& z, const TreePoint<S>& x,
                const TreePoint<S>& y, const S& tol = scalar_traits<S>::default_tol()) {
    S gap = distance(t, x, z) + distance(t, z, y) - distance(t, x, y);
    return scalar_traits<S>::abs(gap) <= tol;
}

// a <= b in the partial order rooted at the tree's root.
template <class S>
bool in_root_order(const WeightedTree<S>& t, const TreePoint<S>& a, const TreePoint<S>& b,
                   const S& tol = scalar_traits<S>::default_tol()) {
    if (!t.root()) throw NoRoot();
    return on_segment(t, a, TreePoint<S>::at_vertex(*t.root()), b, tol);
}

// Number of branches at a point: graph degree at a vertex, 2 inside an edge.
template <class S>
std::size_t degree(const WeightedTree<S>& t, const TreePoint<S>& p) {
    detail::check_point(t, p);
    if (p.is_vertex()) return t.degree_of_vertex(p.vertex);
    return 2;
}

template <class S>
struct LeafSkeletonReport {
    std::vector<std::size_t> leaves;  // degree <= 1 vertices
    bool root_among_leaves = false;   // by convention the root is often not counted as a leaf

    struct SkeletonEdge {
        std::size_t edge;
        bool includes_u;
        bool includes_v;
    };
    std::vector<SkeletonEdge> skeleton;  // the tree minus its leaves, as half-open edges
};

template <class S>
LeafSkeletonReport<S> leaves_and_skeleton(const WeightedTree<S>& t) {
    LeafSkeletonReport<S> out;
    for (std::size_t v = 0; v < t.size(); ++v)
        if (t.degree_of_vertex(v) <= 1) {
            out.leaves.push_back(v);
            if (t.root() && *t.root() == v) out.root_among_leaves = true;
        }
    for (std::size_t e = 0; e < t.edge_count(); ++e)
        out.skeleton.push_back({e, t.degree_of_vertex(t.edge(e).u) >= 2,
                                t.degree_of_vertex(t.edge(e).v) >= 2});
    return out;
}

// False exactly when z lies on [x,y], i.e. when x and y sit in different
// branches at z. Requires z distinct from both.
template <class S>
bool same_branch(const WeightedTree<S>& t, const TreePoint<S>& z, const TreePoint<S>& x,
                 const TreePoint<S>& y, const S& tol = scalar_traits<S>::default_tol()) {
    if (points_equal(t, z, x, tol) || points_equal(t, z, y, tol))
        throw InvalidPoint("branch test requires x != z and y != z");
    return !on_segment(t, z, x, y, tol);
}

/*
 * Minimal connected subset containing the given points, returned as a tree of
 * its own. Traversed vertices keep their identifiers; geodesic endpoints that
 * fall inside an edge become new vertices named by their textual point form.
 */
template <class S>
WeightedTree<S> spanned_subtree(const WeightedTree<S>& t, const std::vector<TreePoint<S>>& points,
                                const S& tol = scalar_traits<S>::default_tol()) {
    if (points.empty()) throw EmptySet();
    std::vector<TreePoint<S>> pts;
    for (const auto& p : points) {
        detail::check_point(t, p);
        bool dup = false;
        for (const auto& q : pts) dup = dup || points_equal(t, p, q, tol);
        if (!dup) pts.push_back(p);
    }

    if (pts.size() == 1) {
        std::string name =
            pts[0].is_vertex() ? t.id(pts[0].vertex) : format_tree_point(t, pts[0]);
        std::optional<std::string> root;
        if (t.root() && pts[0].is_vertex() && pts[0].vertex == *t.root()) root = name;
        return WeightedTree<S>({name}, {}, root);
    }

    // union of [base, p] over all p: per edge a single covered interval
    struct Interval {
        S lo, hi;
        bool used = false;
    };
    std::vector<Interval> cov(t.edge_count());
    std::vector<char> vertex_used(t.size(), 0);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        Segment<S> seg = segment(t, pts[0], pts[i], tol);
        for (const auto& p : seg.points)
            if (p.is_vertex()) vertex_used[p.vertex] = 1;
        for (std::size_t k = 0; k + 1 < seg.points.size(); ++k) {
            std::size_t e = seg.step_edge[k];
            S a = detail::position_on_edge(t, e, seg.points[k]);
            S b = detail::position_on_edge(t, e, seg.points[k + 1]);
            if (b < a) std::swap(a, b);
            if (a <= tol) a = scalar_traits<S>::zero();
            if (b >= t.edge(e).len - tol) b = t.edge(e).len;
            if (!cov[e].used) {
                cov[e] = {a, b, true};
            } else {
                cov[e].lo = std::min(cov[e].lo, a);
                cov[e].hi = std::max(cov[e].hi, b);
            }
        }
    }

    std::set<std::string> names;
    std::vector<typename WeightedTree<S>::RawEdge> edges;
    for (std::size_t v = 0; v < t.size(); ++v)
        if (vertex_used[v]) names.insert(t.id(v));
    for (std::size_t e = 0; e < t.edge_count(); ++e) {
        if (!cov[e].used || !(cov[e].hi > cov[e].lo)) continue;
        const auto& ed = t.edge(e);
        auto end_name = [&](const S& pos) {
            if (pos == scalar_traits<S>::zero()) return t.id(ed.u);
            if (pos == ed.len) return t.id(ed.v);
            TreePoint<S> cut;
            cut.edge = e;
            cut.offset = pos;
            return format_tree_point(t, cut);
        };
        std::string a = end_name(cov[e].lo);
        std::string b = end_name(cov[e].hi);
        names.insert(a);
        names.insert(b);
        edges.push_back({a, b, cov[e].hi - cov[e].lo});
    }

    std::optional<std::string> root;
    if (t.root() && vertex_used[*t.root()]) root = t.id(*t.root());
    return WeightedTree<S>(std::vector<std::string>(names.begin(), names.end()), edges, root);
}

/*
 * Rooted isometry signature: degree-2 non-root vertices are contracted, then
 * subtrees are encoded with sorted child lists and exact length strings. Two
 * rooted trees are isometric (up to relabeling) iff their signatures match.
 */
template <class S>
std::string canonical_signature(const WeightedTree<S>& t, std::size_t root) {
    std::function<std::string(std::size_t, std::size_t, S)> rec =
        [&](std::size_t v, std::size_t in_edge, S acc) -> std::string {
        for (;;) {
            std::vector<std::pair<std::size_t, std::size_t>> kids;  // (edge, child)
            for (std::size_t e : t.incident_edges(v))
                if (e != in_edge) kids.emplace_back(e, t.other_end(e, v));
            if (kids.size() == 1) {  // pass through degree-2 vertices
                acc = acc + t.edge(kids[0].first).len;
                in_edge = kids[0].first;
                v = kids[0].second;
                continue;
            }
            std::vector<std::string> parts;
            for (const auto& [e, w] : kids) parts.push_back(rec(w, e, t.edge(e).len));
            std::sort(parts.begin(), parts.end());
            std::string out = "(" + format_length(acc) + "|";
            for (const auto& p : parts) out += p;
            out += ")";
            return out;
        }
    };
    std::vector<std::string> parts;
    for (std::size_t e : t.incident_edges(root))
        parts.push_back(rec(t.other_end(e, root), e, t.edge(e).len));
    std::sort(parts.begin(), parts.end());
    std::string out = "[";
    for (const auto& p : parts) out += p;
    out += "]";
    return out;
}

/*
 * Euler-tour LCA index for O(1) vertex distance queries on rooted trees.
 * Off by default; cmake option REALTREE_EULER_INDEX routes the all-pairs
 * metric through it.
 */
template <class S>
class EulerTourIndex {
public:
    explicit EulerTourIndex(const WeightedTree<S>& t) : tree_(&t) {
        if (!t.root()) throw NoRoot();
        first_.assign(t.size(), TreePoint<S>::npos);
        depth_.assign(t.size(), scalar_traits<S>::zero());
        level_.assign(t.size(), 0);
        std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t v, std::size_t pe) {
            first_[v] = tour_.size();
            tour_.push_back(v);
            for (std::size_t e : t.incident_edges(v)) {
                if (e == pe) continue;
                std::size_t w = t.other_end(e, v);
                depth_[w] = depth_[v] + t.edge(e).len;
                level_[w] = level_[v] + 1;
                dfs(w, e);
                tour_.push_back(v);
            }
        };
        dfs(*t.root(), TreePoint<S>::npos);

        std::size_t m = tour_.size(), logs = 1;
        while ((std::size_t(1) << logs) <= m) ++logs;
        sparse_.assign(logs, std::vector<std::size_t>(m));
        for (std::size_t i = 0; i < m; ++i) sparse_[0][i] = i;
        for (std::size_t j = 1; j < logs; ++j)
            for (std::size_t i = 0; i + (std::size_t(1) << j) <= m; ++i) {
                std::size_t a = sparse_[j - 1][i];
                std::size_t b = sparse_[j - 1][i + (std::size_t(1) << (j - 1))];
                sparse_[j][i] = level_[tour_[a]] <= level_[tour_[b]] ? a : b;
            }
    }

    std::size_t lca(std::size_t u, std::size_t v) const {
        std::size_t lo = first_[u], hi = first_[v];
        if (lo > hi) std::swap(lo, hi);
        ++hi;
        std::size_t j = 0;
        while ((std::size_t(2) << j) <= hi - lo) ++j;
        std::size_t a = sparse_[j][lo];
        std::size_t b = sparse_[j][hi - (std::size_t(1) << j)];
        return level_[tour_[a]] <= level_[tour_[b]] ? tour_[a] : tour_[b];
    }

    S distance(std::size_t u, std::size_t v) const {
        return depth_[u] + depth_[v] - depth_[lca(u, v)] - depth_[lca(u, v)];
    }

private:
    const WeightedTree<S>* tree_;
    std::vector<std::size_t> tour_, first_, level_;
    std::vector<S> depth_;
    std::vector<std::vector<std::size_t>> sparse_;
};

// All-pairs vertex metric of the tree, labeled by vertex identifiers.
template <class S>
FiniteMetric<S> metric_of_tree(const WeightedTree<S>& t) {
    const std::size_t n = t.size();
    std::vector<S> d(n * n, scalar_traits<S>::zero());
#ifdef REALTREE_EULER_INDEX
    if (t.root()) {
        EulerTourIndex<S> index(t);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = index.distance(i, j);
    } else
#endif
    {
        for (std::size_t i = 0; i < n; ++i) {
            auto row = detail::distances_from_vertex(t, i);
            for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = row[j];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d[j * n + i] = d[i * n + j];
    return FiniteMetric<S>(t.vertex_ids(), std::move(d));
}

}  // namespace realtree
