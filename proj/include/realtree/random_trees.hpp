#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "realtree/excursion.hpp"
#include "realtree/tree_query.hpp"

namespace realtree {

/*
 * Deterministic random source. mt19937_64 is fully specified by the
 * standard; bounded draws use rejection sampling and unit doubles take the
 * top 53 bits, so identical seeds give bit-identical streams everywhere
 * (std::uniform_int_distribution and friends are implementation-defined and
 * deliberately avoided).
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        for (;;) {
            std::uint64_t x = gen_();
            if (x < limit) return x % bound;
        }
    }

    double unit() { return double(gen_() >> 11) * 0x1.0p-53; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 gen_;
};

// Stable per-batch seed derivation (splitmix64 of seed xor stream).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/*
 * Uniform nonnegative lattice excursion of 2n unit steps (a Dyck path),
 * sampled by the cycle lemma: shuffle n+1 rises and n falls, rotate to the
 * unique dominating position (just past the last prefix minimum), drop the
 * leading rise. Exactly uniform over the Catalan-counted set, interior zeros
 * permitted. O(n), no rejection.
 */
inline Excursion<long long> sample_dyck_excursion(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<int> steps(2 * n + 1, -1);
    for (std::size_t i = 0; i <= n; ++i) steps[i] = 1;
    rng.shuffle(steps);

    long long sum = 0, min_sum = 1;
    std::size_t rotate = 0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        sum += steps[i];
        if (sum <= min_sum) {
            min_sum = sum;
            rotate = i + 1;
        }
    }

    Excursion<long long> out;
    out.total_time = static_cast<long long>(2 * n);
    out.samples.reserve(2 * n + 1);
    out.samples.push_back(0);
    for (std::size_t i = 1; i < steps.size(); ++i) {
        int s = steps[(rotate + i) % steps.size()];
        out.samples.push_back(out.samples.back() + s);
    }
    return out;
}

// The Dyck excursion rescaled to a discrete approximation of the normalized
// excursion: time by 1/(2n), height by 1/sqrt(2n).
inline Excursion<double> sample_brownian_excursion(std::size_t n, std::uint64_t seed) {
    Excursion<long long> walk = sample_dyck_excursion(n, seed);
    Excursion<double> out;
    out.total_time = 1.0;
    const double scale = 1.0 / std::sqrt(double(2 * n));
    out.samples.reserve(walk.samples.size());
    for (long long h : walk.samples) out.samples.push_back(double(h) * scale);
    return out;
}

// Finite approximation of the continuum random tree: the quotient tree of a
// rescaled excursion.
inline ExcursionTree<double> sample_crt(std::size_t n, std::uint64_t seed) {
    return tree_from_excursion(sample_brownian_excursion(n, seed), 0.0);
}

template <class S>
Excursion<double> to_double_excursion(const Excursion<S>& g) {
    Excursion<double> out;
    out.total_time = scalar_traits<S>::to_double(g.total_time);
    out.samples.reserve(g.samples.size());
    for (const S& h : g.samples) out.samples.push_back(scalar_traits<S>::to_double(h));
    return out;
}

/*
 * Push-forward of the uniform measure on [0, total_time] through the
 * quotient: draw a uniform time, interpolate the height between its two grid
 * neighbours, and return the corresponding point on the monotone arc joining
 * their images.
 */
inline TreePoint<double> project_time(const ExcursionTree<double>& et, const Excursion<double>& g,
                                      double time01, double tol = 1e-9) {
    const std::size_t n = g.steps();
    if (n == 0) return et.projection[0];
    double pos = time01 * double(n);
    std::size_t i = static_cast<std::size_t>(pos);
    if (i >= n) i = n - 1;
    double target = g.samples[i] + (g.samples[i + 1] - g.samples[i]) * (pos - double(i));
    double along = std::fabs(target - g.samples[i]);
    Segment<double> seg = segment(et.tree, et.projection[i], et.projection[i + 1], tol);
    return point_at(et.tree, seg, along, tol);
}

inline TreePoint<double> sample_leaf(const ExcursionTree<double>& et, const Excursion<double>& g,
                                     std::uint64_t seed, double tol = 1e-9) {
    Rng rng(seed);
    return project_time(et, g, rng.unit(), tol);
}

// Single-shot entry point: builds the quotient internally.
inline TreePoint<double> sample_leaf(const Excursion<double>& g, std::uint64_t seed,
                                     double tol = 1e-9) {
    ExcursionTree<double> et = tree_from_excursion(g, tol);
    return sample_leaf(et, g, seed, tol);
}

}  // namespace realtree
