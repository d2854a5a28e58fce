#pragma once

// Shared test utilities: independent oracles (Floyd-Warshall shortest paths,
// exhaustive tiny Gromov-Hausdorff search, Dyck path enumeration) and
// deterministic random generators for trees and metrics. Oracles deliberately
// avoid the library code paths they are used to check.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "realtree/excursion.hpp"
#include "realtree/finite_metric.hpp"
#include "realtree/random_trees.hpp"
#include "realtree/scalar.hpp"
#include "realtree/weighted_tree.hpp"

namespace testsupport {

using realtree::Excursion;
using realtree::FiniteMetric;
using realtree::Rat;
using realtree::Rng;
using realtree::WeightedTree;

// ---- oracle: all-pairs shortest paths over an explicit edge list ----

template <class S>
std::vector<std::vector<S>> floyd_warshall(std::size_t n,
                                           const std::vector<std::tuple<std::size_t, std::size_t, S>>& edges) {
    const S inf = realtree::scalar_traits<S>::from_int(1) * realtree::scalar_traits<S>::from_int(1 << 30);
    std::vector<std::vector<S>> d(n, std::vector<S>(n, inf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = realtree::scalar_traits<S>::zero();
    for (const auto& [u, v, len] : edges) {
        if (len < d[u][v]) d[u][v] = d[v][u] = len;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
    return d;
}

// ---- oracle: d_g from the defining formula ----

template <class S>
S dg_oracle(const Excursion<S>& g, std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    S m = g.samples[i];
    for (std::size_t k = i; k <= j; ++k) m = std::min(m, g.samples[k]);
    return g.samples[i] + g.samples[j] - m - m;
}

// ---- oracle: every Dyck path of 2n steps ----

inline std::vector<std::vector<long long>> enumerate_dyck(std::size_t n) {
    std::vector<std::vector<long long>> out;
    std::vector<long long> path{0};
    auto rec = [&](auto&& self) -> void {
        if (path.size() == 2 * n + 1) {
            if (path.back() == 0) out.push_back(path);
            return;
        }
        std::size_t left = 2 * n + 1 - path.size();
        if (path.back() + 1 <= static_cast<long long>(left)) {
            path.push_back(path.back() + 1);
            self(self);
            path.pop_back();
        }
        if (path.back() >= 1) {
            path.push_back(path.back() - 1);
            self(self);
            path.pop_back();
        }
    };
    rec(rec);
    return out;
}

// ---- oracle: exhaustive GH over all covering relations (tiny inputs) ----

template <class S>
S gh_oracle(const FiniteMetric<S>& a, const FiniteMetric<S>& b) {
    const std::size_t na = a.size(), nb = b.size();
    const std::size_t bits = na * nb;
    S best = realtree::scalar_traits<S>::from_int(1) * realtree::scalar_traits<S>::from_int(1 << 30);
    for (std::size_t mask = 1; mask < (std::size_t(1) << bits); ++mask) {
        bool cover = true;
        for (std::size_t i = 0; i < na && cover; ++i) {
            bool any = false;
            for (std::size_t j = 0; j < nb; ++j) any = any || (mask >> (i * nb + j)) & 1;
            cover = any;
        }
        for (std::size_t j = 0; j < nb && cover; ++j) {
            bool any = false;
            for (std::size_t i = 0; i < na; ++i) any = any || (mask >> (i * nb + j)) & 1;
            cover = any;
        }
        if (!cover) continue;
        S dis = realtree::scalar_traits<S>::zero();
        for (std::size_t i = 0; i < na; ++i)
            for (std::size_t j = 0; j < nb; ++j) {
                if (!((mask >> (i * nb + j)) & 1)) continue;
                for (std::size_t k = 0; k < na; ++k)
                    for (std::size_t l = 0; l < nb; ++l) {
                        if (!((mask >> (k * nb + l)) & 1)) continue;
                        S gap = realtree::scalar_traits<S>::abs(a.d(i, k) - b.d(j, l));
                        if (gap > dis) dis = gap;
                    }
            }
        if (dis < best) best = dis;
    }
    return realtree::scalar_traits<S>::half(best);
}

// ---- generators ----

// Random tree by uniform attachment; dyadic lengths k/8 with k in 1..16 keep
// both rational and double arithmetic exact.
inline WeightedTree<Rat> random_rat_tree(Rng& rng, std::size_t n, bool rooted = true) {
    std::vector<std::string> names;
    std::vector<WeightedTree<Rat>::RawEdge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        std::string name = "t";
        if (i < 10) name += "0";
        name += std::to_string(i);
        names.push_back(name);
        if (i > 0) {
            std::size_t parent = rng.below(i);
            long long k = 1 + static_cast<long long>(rng.below(16));
            edges.push_back({names[parent], names[i], Rat(k, 8)});
        }
    }
    return WeightedTree<Rat>(names, edges, rooted ? std::optional<std::string>(names[0])
                                                  : std::nullopt);
}

inline WeightedTree<double> to_double_tree(const WeightedTree<Rat>& t) {
    std::vector<WeightedTree<double>::RawEdge> edges;
    for (const auto& e : t.edges())
        edges.push_back({t.id(e.u), t.id(e.v), boost::rational_cast<double>(e.len)});
    std::optional<std::string> root;
    if (t.root()) root = t.id(*t.root());
    return WeightedTree<double>(t.vertex_ids(), edges, root);
}

template <class S>
FiniteMetric<S> to_scalar_metric(const FiniteMetric<Rat>& m) {
    std::vector<S> d;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
            if constexpr (std::is_same_v<S, double>) {
                d.push_back(boost::rational_cast<double>(m.d(i, j)));
            } else {
                d.push_back(m.d(i, j));
            }
        }
    return FiniteMetric<S>(m.labels(), std::move(d));
}

// Entries 10..19 over a small denominator: triangle inequality holds with
// room to spare, so these are generic non-tree metrics.
inline FiniteMetric<Rat> random_rat_metric(Rng& rng, std::size_t n) {
    std::vector<Rat> d(n * n, Rat(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Rat v(10 + static_cast<long long>(rng.below(10)), 4);
            d[i * n + j] = d[j * n + i] = v;
        }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    return FiniteMetric<Rat>(std::move(labels), std::move(d));
}

// chi-square upper critical values at significance 0.01, by degrees of freedom
inline double chi_square_crit_01(std::size_t df) {
    static const std::map<std::size_t, double> table = {
        {1, 6.6349}, {2, 9.2103}, {3, 11.3449}, {4, 13.2767}, {5, 15.0863},
        {6, 16.8119}, {7, 18.4753}, {8, 20.0902}, {9, 21.6660}, {10, 23.2093},
        {11, 24.7250}, {12, 26.2170}, {13, 27.6882}, {14, 29.1412},
    };
    return table.at(df);
}

}  // namespace testsupport
