#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "realtree/errors.hpp"
#include "realtree/tree_query.hpp"
#include "realtree/weighted_tree.hpp"

namespace realtree {

/*
 * A nonnegative function sampled on a uniform grid with zero endpoints: the
 * seed of the quotient construction d_g(s,t) = g(s)+g(t)-2 min g over [s,t].
 * total_time may be 0 only for the degenerate single-sample excursion.
 */
template <class S>
struct Excursion {
    S total_time = scalar_traits<S>::zero();
    std::vector<S> samples;

    std::size_t steps() const { return samples.empty() ? 0 : samples.size() - 1; }

    void validate(const S& tol = scalar_traits<S>::default_tol()) const {
        if (samples.empty()) throw ValidationError("nonempty", {}, "excursion has no samples");
        if (samples.size() == 1) {
            if (!(scalar_traits<S>::abs(total_time) <= tol))
                throw ValidationError("grid", {0}, "single-sample excursion must have time 0");
        } else if (!(total_time > scalar_traits<S>::zero())) {
            throw ValidationError("grid", {0}, "total time must be positive");
        }
        if (scalar_traits<S>::abs(samples.front()) > tol)
            throw ValidationError("endpoint_zero", {0}, "g(0) != 0");
        if (scalar_traits<S>::abs(samples.back()) > tol)
            throw ValidationError("endpoint_zero", {samples.size() - 1}, "g(end) != 0");
        for (std::size_t i = 0; i < samples.size(); ++i)
            if (samples[i] < -tol)
                throw ValidationError("nonnegative", {i}, "negative sample");
    }

    // d_g between two grid indices, directly from the defining formula.
    S grid_distance(std::size_t i, std::size_t j) const {
        if (i > j) std::swap(i, j);
        S m = samples[i];
        for (std::size_t k = i; k <= j; ++k)
            if (samples[k] < m) m = samples[k];
        return samples[i] + samples[j] - m - m;
    }
};

template <class S>
struct ExcursionTree {
    WeightedTree<S> tree;
    std::vector<TreePoint<S>> projection;  // grid index -> its image in the tree
};

/*
 * Quotient of the grid by d_g = 0 (within tol in floating mode), returned as
 * a rooted tree whose metric restricted to projected indices equals d_g.
 * Grid images of degree 2 are contracted away, so the representation is
 * minimal: vertices are the root, branch points, and local maxima.
 *
 * Sweep: a stack holds the classes on the path from the root to the current
 * point, with strictly increasing heights. Rising by h spawns a child class;
 * falling pops finished classes and either lands on an existing class (same
 * height: the d_g = 0 identification) or splits the edge to the last popped
 * class at the new height.
 */
template <class S>
ExcursionTree<S> tree_from_excursion(const Excursion<S>& g,
                                     const S& tol = scalar_traits<S>::default_tol()) {
    g.validate(tol);
    const std::size_t npos = TreePoint<S>::npos;

    std::vector<std::size_t> parent{npos};  // class tree, class 0 = root
    std::vector<S> height{scalar_traits<S>::zero()};
    std::vector<std::size_t> child_count{0};
    std::vector<std::size_t> cls(g.samples.size());  // grid index -> class
    std::vector<std::size_t> stack{0};
    cls[0] = 0;

    auto new_class = [&](std::size_t par, const S& h) {
        parent.push_back(par);
        height.push_back(h);
        child_count.push_back(0);
        if (par != npos) ++child_count[par];
        return parent.size() - 1;
    };

    for (std::size_t i = 1; i < g.samples.size(); ++i) {
        const S h = g.samples[i];
        if (h > height[stack.back()] + tol) {
            stack.push_back(new_class(stack.back(), h));
        } else {
            std::size_t popped = npos;
            while (height[stack.back()] > h + tol) {
                popped = stack.back();
                stack.pop_back();
            }
            if (height[stack.back()] < h - tol) {
                // land inside the edge from stack top up to `popped`
                std::size_t mid = new_class(stack.back(), h);
                --child_count[stack.back()];
                ++child_count[mid];
                parent[popped] = mid;
                stack.push_back(mid);
            }
        }
        cls[i] = stack.back();
    }

    // contract degree-2 non-root classes
    const std::size_t k = parent.size();
    std::vector<char> keep(k, 0);
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t deg = child_count[c] + (parent[c] == npos ? 0 : 1);
        keep[c] = (c == 0) || deg != 2;
    }
    std::vector<std::size_t> kept_index(k, npos);
    std::vector<std::string> names;
    std::size_t kept = 0;
    for (std::size_t c = 0; c < k; ++c)
        if (keep[c]) {
            kept_index[c] = kept++;
            names.push_back("v" + std::to_string(kept_index[c]));
        }

    // nearest kept ancestor of each class, and the offset below it
    std::vector<std::size_t> anchor(k, npos);
    std::vector<S> drop(k, scalar_traits<S>::zero());
    std::function<void(std::size_t)> resolve = [&](std::size_t c) {
        if (c == 0 || anchor[c] != npos) return;
        std::size_t p = parent[c];
        resolve(p);
        if (keep[p]) {
            anchor[c] = p;
            drop[c] = height[c] - height[p];
        } else {
            anchor[c] = anchor[p];
            drop[c] = drop[p] + (height[c] - height[p]);
        }
    };
    for (std::size_t c = 1; c < k; ++c) resolve(c);

    std::vector<typename WeightedTree<S>::RawEdge> raw;
    for (std::size_t c = 1; c < k; ++c)
        if (keep[c])
            raw.push_back({names[kept_index[anchor[c]]], names[kept_index[c]], drop[c]});

    ExcursionTree<S> out{WeightedTree<S>(names, raw, names[0]), {}};
    const auto& tree = out.tree;
    out.projection.reserve(g.samples.size());
    for (std::size_t i = 0; i < g.samples.size(); ++i) {
        std::size_t c = cls[i];
        if (keep[c]) {
            out.projection.push_back(TreePoint<S>::at_vertex(tree.vertex(names[kept_index[c]])));
        } else {
            // contracted class: a point inside the edge from its kept anchor
            // down the chain to the kept descendant below it
            std::size_t below = c;
            while (!keep[below]) {
                // unique child of a contracted class
                std::size_t ch = npos;
                for (std::size_t x = 0; x < k; ++x)
                    if (parent[x] == below) {
                        ch = x;
                        break;
                    }
                below = ch;
            }
            std::size_t a = tree.vertex(names[kept_index[anchor[c]]]);
            std::size_t b = tree.vertex(names[kept_index[below]]);
            std::size_t e = *tree.edge_between(a, b);
            S off = tree.edge(e).u == a ? drop[c] : tree.edge(e).len - drop[c];
            out.projection.push_back(TreePoint<S>::on_edge(tree, e, off, scalar_traits<S>::zero()));
        }
    }
    return out;
}

/*
 * Contour of a rooted tree: the height of a unit-speed traversal along the
 * outside of the tree, children visited in ascending identifier order. The
 * samples live on the uniform grid whose step is the gcd of the edge lengths;
 * lengths with no common step (possible only in floating mode) are rejected.
 */
template <class S>
Excursion<S> contour_of_tree(const WeightedTree<S>& t, std::size_t root) {
    if (root >= t.size()) throw InvalidPoint("contour root out of range");
    if (t.edge_count() == 0) return Excursion<S>{scalar_traits<S>::zero(), {scalar_traits<S>::zero()}};

    S step = scalar_traits<S>::zero();
    S total = scalar_traits<S>::zero();
    for (const auto& e : t.edges()) {
        step = length_gcd(step, e.len);
        total = total + e.len + e.len;
    }
    // refine to the unit tick of the traversal clock
    step = length_gcd(step, scalar_traits<S>::from_int(1));
    if (!(step > scalar_traits<S>::zero())) throw IncommensurableLengths();
    double grid_points = scalar_traits<S>::to_double(total) / scalar_traits<S>::to_double(step);
    if (grid_points > 4e6) throw IncommensurableLengths();

    // depth-first turning heights
    std::vector<S> turns{scalar_traits<S>::zero()};
    std::function<void(std::size_t, std::size_t, const S&)> dfs = [&](std::size_t v,
                                                                      std::size_t in_edge,
                                                                      const S& depth) {
        std::vector<std::pair<std::string, std::size_t>> kids;
        for (std::size_t e : t.incident_edges(v))
            if (e != in_edge) kids.emplace_back(t.id(t.other_end(e, v)), e);
        std::sort(kids.begin(), kids.end());
        for (const auto& [id, e] : kids) {
            turns.push_back(depth + t.edge(e).len);
            dfs(t.other_end(e, v), e, depth + t.edge(e).len);
            turns.push_back(depth);
        }
    };
    dfs(root, TreePoint<S>::npos, scalar_traits<S>::zero());

    Excursion<S> out;
    out.total_time = total;
    out.samples.push_back(turns[0]);
    for (std::size_t i = 1; i < turns.size(); ++i) {
        S lo = std::min(turns[i - 1], turns[i]);
        S hi = std::max(turns[i - 1], turns[i]);
        long long legs = static_cast<long long>(
            scalar_traits<S>::to_double(hi - lo) / scalar_traits<S>::to_double(step) + 0.5);
        bool rising = turns[i] > turns[i - 1];
        for (long long j = 1; j <= legs; ++j) {
            S prev = out.samples.back();
            out.samples.push_back(rising ? prev + step : prev - step);
        }
    }
    return out;
}

// Excursion text format: first line "<total_time> <steps>", second line the
// steps+1 samples, whitespace-separated.
template <class S>
std::string format_excursion(const Excursion<S>& g) {
    std::string out = format_length(g.total_time) + " " + std::to_string(g.steps()) + "\n";
    for (std::size_t i = 0; i < g.samples.size(); ++i) {
        if (i) out += " ";
        out += format_length(g.samples[i]);
    }
    out += "\n";
    return out;
}

template <class S>
Excursion<S> parse_excursion(const std::string& text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char c : text) {
        if (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
            if (!cur.empty()) tokens.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    if (tokens.size() < 2) throw ValidationError("excursion_format", {}, "missing header");
    Excursion<S> g;
    long long n = 0;
    if (!parse_length(tokens[0], g.total_time) || !parse_length(tokens[1], n) || n < 0)
        throw ValidationError("excursion_format", {}, "bad header line");
    if (tokens.size() != static_cast<std::size_t>(n) + 3)
        throw ValidationError("excursion_format", {tokens.size()},
                              "expected " + std::to_string(n + 1) + " samples");
    for (std::size_t i = 2; i < tokens.size(); ++i) {
        S v;
        if (!parse_length(tokens[i], v))
            throw ValidationError("excursion_format", {i}, "bad sample " + tokens[i]);
        g.samples.push_back(v);
    }
    g.validate();
    return g;
}

}  // namespace realtree
