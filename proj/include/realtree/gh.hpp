#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "realtree/errors.hpp"
#include "realtree/finite_metric.hpp"

namespace realtree {

template <class S>
struct GhResult {
    S value = scalar_traits<S>::zero();
    // one optimal correspondence (the first one met in enumeration order,
    // which is the lexicographically least of the searched family)
    std::vector<std::pair<std::size_t, std::size_t>> witness;
};

namespace detail {

/*
 * Exact distortion minimization over correspondences. A minimal
 * correspondence is the union of a map X->Y and a map Y->X, so it suffices
 * to branch over those (any covering relation contains such a union with no
 * larger distortion). Depth-first over f then g with the running max
 * distortion as the pruning bound.
 */
template <class S>
class GhSearch {
public:
    GhSearch(const FiniteMetric<S>& a, const FiniteMetric<S>& b,
             std::optional<std::pair<std::size_t, std::size_t>> root_pair)
        : a_(a), b_(b), na_(a.size()), nb_(b.size()), root_(root_pair) {
        f_.assign(na_, 0);
        g_.assign(nb_, 0);
    }

    GhResult<S> run(bool want_witness) {
        best_.reset();
        assign_f(0, scalar_traits<S>::zero());
        GhResult<S> out;
        out.value = scalar_traits<S>::half(*best_);
        if (want_witness) {
            std::vector<std::pair<std::size_t, std::size_t>> pairs;
            for (std::size_t i = 0; i < na_; ++i) pairs.emplace_back(i, best_f_[i]);
            for (std::size_t j = 0; j < nb_; ++j) pairs.emplace_back(best_g_[j], j);
            std::sort(pairs.begin(), pairs.end());
            pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
            out.witness = std::move(pairs);
        }
        return out;
    }

private:
    void assign_f(std::size_t i, S dist) {
        if (best_ && !(dist < *best_)) return;
        if (i == na_) {
            assign_g(0, dist);
            return;
        }
        if (root_ && i == root_->first) {
            try_f(i, root_->second, dist);
            return;
        }
        for (std::size_t y = 0; y < nb_; ++y) try_f(i, y, dist);
    }

    void try_f(std::size_t i, std::size_t y, S dist) {
        S d = dist;
        for (std::size_t k = 0; k < i; ++k) {
            S gap = scalar_traits<S>::abs(a_.d(i, k) - b_.d(y, f_[k]));
            if (gap > d) d = gap;
        }
        if (best_ && !(d < *best_)) return;
        f_[i] = y;
        assign_f(i + 1, d);
    }

    void assign_g(std::size_t j, S dist) {
        if (best_ && !(dist < *best_)) return;
        if (j == nb_) {
            best_ = dist;
            best_f_ = f_;
            best_g_ = g_;
            return;
        }
        if (root_ && j == root_->second) {
            try_g(j, root_->first, dist);
            return;
        }
        for (std::size_t x = 0; x < na_; ++x) try_g(j, x, dist);
    }

    void try_g(std::size_t j, std::size_t x, S dist) {
        S d = dist;
        for (std::size_t k = 0; k < j; ++k) {
            S gap = scalar_traits<S>::abs(b_.d(j, k) - a_.d(x, g_[k]));
            if (gap > d) d = gap;
        }
        // the new pair (x, j) against every f-pair (i, f_i)
        for (std::size_t i = 0; i < na_; ++i) {
            S gap = scalar_traits<S>::abs(a_.d(x, i) - b_.d(j, f_[i]));
            if (gap > d) d = gap;
        }
        if (best_ && !(d < *best_)) return;
        g_[j] = x;
        assign_g(j + 1, d);
    }

    const FiniteMetric<S>& a_;
    const FiniteMetric<S>& b_;
    std::size_t na_, nb_;
    std::optional<std::pair<std::size_t, std::size_t>> root_;
    std::vector<std::size_t> f_, g_;
    std::optional<S> best_;
    std::vector<std::size_t> best_f_, best_g_;
};

}  // namespace detail

// Half the minimal distortion over correspondences with full coverage on
// both sides; exact by exhaustive search, so sizes are capped.
template <class S>
GhResult<S> gh_distance(const FiniteMetric<S>& a, const FiniteMetric<S>& b,
                        std::size_t max_points = 7, bool want_witness = false) {
    if (a.size() > max_points) throw TooLarge(a.size(), max_points);
    if (b.size() > max_points) throw TooLarge(b.size(), max_points);
    detail::GhSearch<S> search(a, b, std::nullopt);
    return search.run(want_witness);
}

// Same objective restricted to correspondences relating root to root.
template <class S>
GhResult<S> rooted_gh_distance(const FiniteMetric<S>& a, const std::string& root_a,
                               const FiniteMetric<S>& b, const std::string& root_b,
                               std::size_t max_points = 7, bool want_witness = false) {
    if (a.size() > max_points) throw TooLarge(a.size(), max_points);
    if (b.size() > max_points) throw TooLarge(b.size(), max_points);
    std::pair<std::size_t, std::size_t> roots{a.index(root_a), b.index(root_b)};
    detail::GhSearch<S> search(a, b, roots);
    return search.run(want_witness);
}

}  // namespace realtree
