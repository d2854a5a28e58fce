#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "realtree/errors.hpp"
#include "realtree/hyperbolicity.hpp"
#include "realtree/tree_query.hpp"
#include "realtree/weighted_tree.hpp"

namespace realtree {

template <class S>
struct Realization {
    WeightedTree<S> tree;
    std::map<std::string, TreePoint<S>> embedding;
};

template <class S>
struct RealizationReport {
    S max_abs = scalar_traits<S>::zero();
    S mean_abs = scalar_traits<S>::zero();
    bool pass = false;
};

namespace detail {

// Mutable scaffold; queries run on a rebuilt immutable tree after each
// insertion (cheap at the scales this is for).
template <class S>
struct GrowingTree {
    std::vector<std::string> names;
    std::vector<typename WeightedTree<S>::RawEdge> edges;
    std::optional<WeightedTree<S>> built;

    void rebuild() { built.emplace(names, edges); }

    std::string split_at(const TreePoint<S>& q, const std::string& new_name) {
        const auto& e = built->edge(q.edge);
        std::string u = built->id(e.u), v = built->id(e.v);
        for (auto& re : edges)
            if ((re.u == u && re.v == v) || (re.u == v && re.v == u)) {
                S len = re.len;
                re.v = new_name;
                re.len = (re.u == u) ? q.offset : len - q.offset;
                edges.push_back({new_name, (re.u == u) ? v : u,
                                 (re.u == u) ? len - q.offset : q.offset});
                names.push_back(new_name);
                return new_name;
            }
        throw InvalidPoint("split target edge not found");
    }
};

}  // namespace detail

/*
 * Reconstructs a tree realizing a four-point-clean metric, by incremental
 * insertion. Each new label z is attached at its projection onto the tree
 * spanned so far: with base x fixed, the projection sits on [x, y*] at
 * distance max_y half(d(x,z)+d(x,y)-d(y,z)) from x, the max running over the
 * labels y embedded so far, and z hangs from it by an arc of the remaining
 * length. Attachments within tol of an existing vertex reuse that vertex;
 * new interior vertices are named "w#k" with a deterministic counter.
 */
template <class S>
Realization<S> realize_tree(const FiniteMetric<S>& m,
                            const S& tol = scalar_traits<S>::default_tol()) {
    if (auto bad = four_point_witness(m, tol)) {
        std::vector<std::string> labels;
        for (std::size_t i : *bad) labels.push_back(m.label(i));
        throw FourPointViolation(labels);
    }

    const std::size_t n = m.size();
    detail::GrowingTree<S> g;
    g.names.push_back(m.label(0));
    if (n >= 2) g.edges.push_back({m.label(0), m.label(1), m.d(0, 1)});
    if (n >= 2) g.names.push_back(m.label(1));
    g.rebuild();

    std::map<std::string, std::string> landed;  // labels that merged with an existing vertex
    std::size_t steiner = 0;
    for (std::size_t z = 2; z < n; ++z) {
        const WeightedTree<S>& t = *g.built;
        TreePoint<S> px = TreePoint<S>::at_vertex(t.vertex(m.label(0)));

        S reach = scalar_traits<S>::zero();
        std::size_t pick = 1;
        for (std::size_t y = 1; y < z; ++y) {
            S cand = scalar_traits<S>::half(m.d(0, z) + m.d(0, y) - m.d(y, z));
            if (y == 1 || cand > reach) {
                reach = cand;
                pick = y;
            }
        }
        if (reach < scalar_traits<S>::zero()) reach = scalar_traits<S>::zero();
        if (reach > m.d(0, pick)) reach = m.d(0, pick);
        S arc = m.d(0, z) - reach;

        TreePoint<S> py = TreePoint<S>::at_vertex(t.vertex(m.label(pick)));
        TreePoint<S> q = point_at(t, segment(t, px, py, tol), reach, tol);

        if (arc <= tol) {
            if (q.is_vertex()) {
                // cannot be another label (validated metrics have no zero
                // distances), so z coincides with an interior vertex
                landed.emplace(m.label(z), t.id(q.vertex));
            } else {
                g.split_at(q, m.label(z));
            }
        } else {
            std::string attach;
            if (q.is_vertex()) {
                attach = t.id(q.vertex);
            } else {
                attach = g.split_at(q, "w#" + std::to_string(++steiner));
            }
            g.names.push_back(m.label(z));
            g.edges.push_back({attach, m.label(z), arc});
        }
        g.rebuild();
    }

    Realization<S> out{*g.built, {}};
    const WeightedTree<S>& t = out.tree;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& lbl = m.label(i);
        auto hit = landed.find(lbl);
        const std::string& name = hit == landed.end() ? lbl : hit->second;
        out.embedding.emplace(lbl, TreePoint<S>::at_vertex(t.vertex(name)));
    }
    return out;
}

// Entrywise deviation between the tree metric of the embedded images and the
// target metric.
template <class S>
RealizationReport<S> verify_realization(const WeightedTree<S>& t,
                                        const std::map<std::string, TreePoint<S>>& embedding,
                                        const FiniteMetric<S>& m,
                                        const S& tol = scalar_traits<S>::default_tol()) {
    RealizationReport<S> out;
    const std::size_t n = m.size();
    std::vector<const TreePoint<S>*> points;
    for (std::size_t i = 0; i < n; ++i) {
        auto it = embedding.find(m.label(i));
        if (it == embedding.end()) throw MissingLabel(m.label(i));
        points.push_back(&it->second);
    }
    S sum = scalar_traits<S>::zero();
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            S dev = scalar_traits<S>::abs(distance(t, *points[i], *points[j]) - m.d(i, j));
            if (dev > out.max_abs) out.max_abs = dev;
            sum = sum + dev;
            ++pairs;
        }
    if (pairs > 0) out.mean_abs = sum / scalar_traits<S>::from_int(static_cast<long long>(pairs));
    out.pass = out.max_abs <= tol;
    return out;
}

}  // namespace realtree
