#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "realtree/tree_query.hpp"
#include "realtree/weighted_tree.hpp"

namespace realtree {

// Total length measure of a finite representation: leaves are finitely many
// points and carry no length, so this is simply the sum of edge lengths.
template <class S>
S total_length(const WeightedTree<S>& t) {
    S acc = scalar_traits<S>::zero();
    for (const auto& e : t.edges()) acc = acc + e.len;
    return acc;
}

// Length measure of a segment equals its endpoints' distance; open and
// closed segments get the same value since points are null sets.
template <class S>
S segment_measure(const WeightedTree<S>& t, const TreePoint<S>& p, const TreePoint<S>& q) {
    return distance(t, p, q);
}

template <class S>
struct LengthMeasureReport {
    S total = scalar_traits<S>::zero();
    std::vector<std::pair<std::size_t, S>> per_edge;           // edge index -> its length
    std::vector<std::pair<std::string, S>> queried_sets;       // description -> measure
};

template <class S>
LengthMeasureReport<S> length_measure_report(const WeightedTree<S>& t) {
    LengthMeasureReport<S> out;
    out.total = total_length(t);
    for (std::size_t e = 0; e < t.edge_count(); ++e) out.per_edge.emplace_back(e, t.edge(e).len);
    return out;
}

/*
 * Diagnostics for the binary family with level lengths 2^(-gamma n): the
 * truncated total length sum_{n<=N} 2^{n(1-gamma)} and a box-counting
 * estimate of the boundary dimension. At level k the boundary splits into
 * 2^k balls of radius c 2^(-gamma k) with c = 2/(1 - 2^(-gamma)); the
 * log-count/log-scale ratio at k = N tends to 1/gamma, the constant c only
 * shifting the offset.
 */
struct DimensionProbe {
    struct Row {
        unsigned k;
        double count;
        double scale;
    };

    double gamma = 0.0;
    unsigned depth = 0;
    double partial_length = 0.0;
    double dimension_estimate = 0.0;
    std::vector<Row> rows;
};

inline DimensionProbe dimension_probe(double gamma, unsigned depth) {
    if (!(gamma > 0.0)) throw ValidationError("gamma", {}, "gamma must be positive");
    if (depth < 1) throw ValidationError("depth", {}, "depth must be at least 1");
    DimensionProbe out;
    out.gamma = gamma;
    out.depth = depth;
    const double c = 2.0 / (1.0 - std::pow(2.0, -gamma));
    for (unsigned n = 1; n <= depth; ++n) {
        out.partial_length += std::pow(2.0, double(n) * (1.0 - gamma));
        out.rows.push_back({n, std::pow(2.0, double(n)), c * std::pow(2.0, -gamma * double(n))});
    }
    const double ln2 = std::log(2.0);
    out.dimension_estimate = double(depth) * ln2 / (gamma * double(depth) * ln2 - std::log(c));
    return out;
}

}  // namespace realtree
