#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <thread>
#include <vector>

#include "realtree/finite_metric.hpp"

namespace realtree {

// Least additive slack delta making the space delta-hyperbolic, plus the
// quadruple that forces it (absent when no quadruple needs slack).
template <class S>
struct Delta {
    S value = scalar_traits<S>::zero();
    std::optional<std::array<std::size_t, 4>> witness;
};

template <class S>
S gromov_product(const FiniteMetric<S>& m, std::size_t x, std::size_t y, std::size_t base) {
    return scalar_traits<S>::half(m.d(base, x) + m.d(base, y) - m.d(x, y));
}

template <class S>
S gromov_product(const FiniteMetric<S>& m, std::string_view x, std::string_view y,
                 std::string_view base) {
    return gromov_product(m, m.index(x), m.index(y), m.index(base));
}

// Twice the slack a single quadruple needs: the largest of the three pairing
// sums minus the middle one. Zero for every quadruple exactly when the metric
// embeds in a tree. Uses only additions, so it is exact for integer lengths.
template <class S>
S four_point_excess_doubled(const FiniteMetric<S>& m, std::size_t x, std::size_t y, std::size_t z,
                            std::size_t w) {
    S s0 = m.d(x, y) + m.d(z, w);
    S s1 = m.d(x, z) + m.d(y, w);
    S s2 = m.d(x, w) + m.d(y, z);
    if (s0 > s1) std::swap(s0, s1);
    if (s1 > s2) std::swap(s1, s2);
    if (s0 > s1) std::swap(s0, s1);
    return s2 - s1;
}

// Sum form of the four-point inequality at slack delta.
template <class S>
bool four_point_holds(const FiniteMetric<S>& m, std::size_t x, std::size_t y, std::size_t z,
                      std::size_t w, const S& delta) {
    return m.d(x, y) + m.d(z, w) <=
           std::max(m.d(x, z) + m.d(y, w), m.d(x, w) + m.d(y, z)) + delta + delta;
}

template <class S>
bool four_point_holds(const FiniteMetric<S>& m, std::string_view x, std::string_view y,
                      std::string_view z, std::string_view w, const S& delta) {
    return four_point_holds(m, m.index(x), m.index(y), m.index(z), m.index(w), delta);
}

// Gromov-product form: (x,y)_w >= min((x,z)_w, (y,z)_w) - delta. Agrees with
// the sum form on every quadruple and every delta; the unit tests assert the
// agreement exactly in rational mode.
template <class S>
bool four_point_holds_gromov(const FiniteMetric<S>& m, std::size_t x, std::size_t y, std::size_t z,
                             std::size_t w, const S& delta) {
    return gromov_product(m, x, y, w) >=
           std::min(gromov_product(m, x, z, w), gromov_product(m, y, z, w)) - delta;
}

namespace detail {

// Scans first indices i = start, start+stride, ...; keeps the first maximum
// in lexicographic quadruple order.
template <class S>
void scan_quadruples(const FiniteMetric<S>& m, std::size_t start, std::size_t stride,
                     S& best_excess, std::optional<std::array<std::size_t, 4>>& witness) {
    const std::size_t n = m.size();
    for (std::size_t i = start; i + 3 < n; i += stride)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                for (std::size_t l = k + 1; l < n; ++l) {
                    S e = four_point_excess_doubled(m, i, j, k, l);
                    if (e > best_excess) {
                        best_excess = e;
                        witness = std::array<std::size_t, 4>{i, j, k, l};
                    }
                }
}

}  // namespace detail

/*
 * Exhaustive quadruple scan for the least delta such that the Gromov form of
 * the four-point inequality holds everywhere. Optionally partitioned over
 * worker threads; the reduction keeps the lexicographically earliest witness,
 * so the result does not depend on the partition.
 */
template <class S>
Delta<S> hyperbolicity_delta(const FiniteMetric<S>& m, unsigned threads = 1) {
    const std::size_t n = m.size();
    Delta<S> out;
    if (n < 4) return out;

    S excess = scalar_traits<S>::zero();
    std::optional<std::array<std::size_t, 4>> witness;
    if (threads <= 1 || n < 16) {
        detail::scan_quadruples(m, 0, 1, excess, witness);
    } else {
        // round-robin over the first index balances the load; the merge takes
        // the lexicographically least witness among the maxima, which is
        // exactly what the serial scan reports
        unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(n - 3));
        std::vector<S> local_excess(workers, scalar_traits<S>::zero());
        std::vector<std::optional<std::array<std::size_t, 4>>> local_witness(workers);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t)
            pool.emplace_back([&, t] {
                detail::scan_quadruples(m, t, workers, local_excess[t], local_witness[t]);
            });
        for (auto& th : pool) th.join();
        for (unsigned t = 0; t < workers; ++t) {
            if (!local_witness[t]) continue;
            if (local_excess[t] > excess ||
                (local_excess[t] == excess && witness && *local_witness[t] < *witness)) {
                excess = local_excess[t];
                witness = local_witness[t];
            }
        }
    }
    out.value = scalar_traits<S>::half(excess);
    out.witness = witness;
    return out;
}

// Least delta for the Gromov form restricted to a fixed base point. For each
// triple this is the gap between the smallest and middle Gromov product.
template <class S>
Delta<S> based_delta(const FiniteMetric<S>& m, std::size_t base) {
    const std::size_t n = m.size();
    Delta<S> out;
    S best = scalar_traits<S>::zero();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                S p0 = gromov_product(m, i, j, base);
                S p1 = gromov_product(m, i, k, base);
                S p2 = gromov_product(m, j, k, base);
                if (p0 > p1) std::swap(p0, p1);
                if (p1 > p2) std::swap(p1, p2);
                if (p0 > p1) std::swap(p0, p1);
                if (p1 - p0 > best) {
                    best = p1 - p0;
                    out.witness = std::array<std::size_t, 4>{i, j, k, base};
                }
            }
    out.value = best;
    return out;
}

template <class S>
Delta<S> based_delta(const FiniteMetric<S>& m, std::string_view base) {
    return based_delta(m, m.index(base));
}

template <class S>
bool is_tree_metric(const FiniteMetric<S>& m, const S& tol, unsigned threads = 1) {
    return hyperbolicity_delta(m, threads).value <= tol;
}

// First quadruple whose doubled excess exceeds 2*tol, if any. Cheaper than a
// full scan when the caller only needs a pass/fail with a witness.
template <class S>
std::optional<std::array<std::size_t, 4>> four_point_witness(const FiniteMetric<S>& m,
                                                             const S& tol) {
    const std::size_t n = m.size();
    for (std::size_t i = 0; i + 3 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                for (std::size_t l = k + 1; l < n; ++l)
                    if (four_point_excess_doubled(m, i, j, k, l) > tol + tol)
                        return std::array<std::size_t, 4>{i, j, k, l};
    return std::nullopt;
}

}  // namespace realtree
