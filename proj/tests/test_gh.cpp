#include <doctest.h>

#include <cmath>

#include "realtree/gh.hpp"
#include "support.hpp"

using namespace realtree;
using namespace testsupport;

namespace {

FiniteMetric<double> segment_space(std::vector<double> coords) {
    const std::size_t n = coords.size();
    std::vector<double> d(n * n, 0.0);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::fabs(coords[i] - coords[j]);
    return FiniteMetric<double>(labels, d);
}

FiniteMetric<double> random_small_metric(Rng& rng, std::size_t n) {
    return to_scalar_metric<double>(random_rat_metric(rng, n));
}

}  // namespace

TEST_CASE("frozen examples") {
    FiniteMetric<double> point({"p"}, {0.0});
    auto seg = segment_space({0, 1, 2});

    CHECK(gh_distance(point, seg).value == doctest::Approx(1.0));  // half the diameter
    CHECK(gh_distance(seg, segment_space({0, 2, 4})).value == doctest::Approx(1.0));
    CHECK(gh_distance(seg, seg).value == 0.0);

    // agreement with the exhaustive relation oracle on tiny inputs
    CHECK(gh_oracle(point, seg) == doctest::Approx(gh_distance(point, seg).value));
    auto seg2 = segment_space({0, 3});
    CHECK(gh_oracle(seg2, seg) == doctest::Approx(gh_distance(seg2, seg).value));

    Rng rng(313);
    for (int it = 0; it < 10; ++it) {
        auto a = random_small_metric(rng, 1 + rng.below(3));
        auto b = random_small_metric(rng, 1 + rng.below(3));
        CHECK(gh_oracle(a, b) == doctest::Approx(gh_distance(a, b).value));
    }
}

TEST_CASE("witness is a covering correspondence achieving the value") {
    auto a = segment_space({0, 1, 2});
    auto b = segment_space({0, 2, 4});
    auto res = gh_distance(a, b, 7, true);
    REQUIRE_FALSE(res.witness.empty());
    std::vector<bool> ca(a.size(), false), cb(b.size(), false);
    double dis = 0.0;
    for (auto [i, j] : res.witness) {
        ca[i] = cb[j] = true;
        for (auto [k, l] : res.witness)
            dis = std::max(dis, std::fabs(a.d(i, k) - b.d(j, l)));
    }
    for (bool c : ca) CHECK(c);
    for (bool c : cb) CHECK(c);
    CHECK(0.5 * dis == doctest::Approx(res.value));

    // deterministic tie-break
    auto again = gh_distance(a, b, 7, true);
    CHECK(res.witness == again.witness);
}

TEST_CASE("size cap") {
    Rng rng(317);
    auto big = random_small_metric(rng, 8);
    auto small = random_small_metric(rng, 3);
    CHECK_THROWS_AS(gh_distance(big, small), TooLarge);
    CHECK_NOTHROW(gh_distance(big, small, 8));
}

TEST_CASE("symmetry, self-distance, diameter bound") {
    Rng rng(331);
    for (int it = 0; it < 25; ++it) {
        auto a = random_small_metric(rng, 1 + rng.below(5));
        auto b = random_small_metric(rng, 1 + rng.below(5));
        CHECK(gh_distance(a, a).value == 0.0);
        double ab = gh_distance(a, b).value;
        CHECK(ab == gh_distance(b, a).value);
        CHECK(ab + 1e-12 >= 0.5 * std::fabs(a.diameter() - b.diameter()));
    }
}

TEST_CASE("triangle inequality on small spaces") {
    Rng rng(337);
    for (int it = 0; it < 12; ++it) {
        auto a = random_small_metric(rng, 1 + rng.below(4));
        auto b = random_small_metric(rng, 1 + rng.below(4));
        auto c = random_small_metric(rng, 1 + rng.below(4));
        double ab = gh_distance(a, b).value;
        double bc = gh_distance(b, c).value;
        double ac = gh_distance(a, c).value;
        CHECK(ac <= ab + bc + 1e-12);
    }
}

TEST_CASE("rooted variant") {
    auto seg = segment_space({0, 1, 2});
    FiniteMetric<double> point({"p"}, {0.0});
    CHECK(rooted_gh_distance(point, "p", seg, "s0").value == doctest::Approx(1.0));
    CHECK(rooted_gh_distance(seg, "s0", seg, "s0").value == 0.0);

    // rooting can only increase the distance
    Rng rng(347);
    for (int it = 0; it < 15; ++it) {
        auto a = random_small_metric(rng, 2 + rng.below(3));
        auto b = random_small_metric(rng, 2 + rng.below(3));
        double plain = gh_distance(a, b).value;
        double rooted = rooted_gh_distance(a, a.label(0), b, b.label(0)).value;
        CHECK(plain <= rooted + 1e-12);
    }

    // moving the root changes the value: the segment {0,1,2} against itself,
    // rooted at an end versus at the center. Rooted at the center, the far
    // end forces a distortion of at least |d(s0,s2) - d(s1,y)| = 1.
    double same_root = rooted_gh_distance(seg, "s0", seg, "s0").value;
    double center_root = rooted_gh_distance(seg, "s0", seg, "s1").value;
    CHECK(same_root == 0.0);
    CHECK(center_root == doctest::Approx(0.5));
}
