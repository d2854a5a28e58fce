#include <doctest.h>

#include <cmath>

#include "realtree/realization.hpp"
#include "support.hpp"

using namespace realtree;
using namespace testsupport;

TEST_CASE("three-point star") {
    // d(x,y)=3, d(x,z)=4, d(y,z)=5: arms are the three Gromov products
    FiniteMetric<Rat> m({"x", "y", "z"}, {Rat(0), Rat(3), Rat(4), Rat(3), Rat(0), Rat(5), Rat(4),
                                          Rat(5), Rat(0)});
    auto r = realize_tree(m, Rat(0));
    auto report = verify_realization(r.tree, r.embedding, m, Rat(0));
    CHECK(report.max_abs == Rat(0));
    CHECK(report.pass);
    REQUIRE(r.tree.has_vertex("w#1"));
    auto hub = TreePoint<Rat>::at_vertex(r.tree.vertex("w#1"));
    CHECK(distance(r.tree, hub, r.embedding.at("x")) == Rat(1));
    CHECK(distance(r.tree, hub, r.embedding.at("y")) == Rat(2));
    CHECK(distance(r.tree, hub, r.embedding.at("z")) == Rat(3));
}

TEST_CASE("cherry metric reconstructs the cherry") {
    WeightedTree<Rat> cherry({"root", "v", "a", "b"},
                             {{"root", "v", Rat(1)}, {"v", "a", Rat(1)}, {"v", "b", Rat(1)}},
                             "root");
    auto m = metric_of_tree(cherry);
    auto r = realize_tree(m, Rat(0));
    CHECK(verify_realization(r.tree, r.embedding, m, Rat(0)).max_abs == Rat(0));
    CHECK(r.tree.size() == 4);  // three labels stay leaves, one hub appears
    CHECK(r.tree.edge_count() == 3);
}

TEST_CASE("square metric raises a four-point violation") {
    const double r2 = std::sqrt(2.0);
    FiniteMetric<double> sq({"a", "b", "c", "d"},
                            {0, 1, r2, 1, 1, 0, 1, r2, r2, 1, 0, 1, 1, r2, 1, 0});
    CHECK_THROWS_AS(realize_tree(sq), FourPointViolation);
    try {
        realize_tree(sq);
    } catch (const FourPointViolation& e) {
        CHECK(e.witness().size() == 4);
    }
}

TEST_CASE("round trip on random trees is exact in rational mode") {
    Rng rng(211);
    for (int it = 0; it < 60; ++it) {
        auto t = random_rat_tree(rng, 2 + rng.below(11), false);
        auto m = metric_of_tree(t);
        auto r = realize_tree(m, Rat(0));
        auto report = verify_realization(r.tree, r.embedding, m, Rat(0));
        CHECK(report.max_abs == Rat(0));
        CHECK(report.mean_abs == Rat(0));
        CHECK(report.pass);

        // minimality: no unlabeled degree-2 vertices, every leaf labeled
        for (std::size_t v = 0; v < r.tree.size(); ++v) {
            bool steiner = r.tree.id(v).rfind("w#", 0) == 0;
            if (steiner) CHECK(r.tree.degree_of_vertex(v) >= 3);
            if (r.tree.degree_of_vertex(v) <= 1) CHECK(m.has_label(r.tree.id(v)));
        }
        // all edges strictly positive
        for (const auto& e : r.tree.edges()) CHECK(e.len > Rat(0));
    }
}

TEST_CASE("restrictions of tree metrics revive their hidden branch points") {
    // realizing the metric of a vertex subset must reinvent the meets the
    // subset does not contain
    Rng rng(229);
    for (int it = 0; it < 40; ++it) {
        auto t = random_rat_tree(rng, 6 + rng.below(10), false);
        auto full = metric_of_tree(t);
        std::size_t keep = 2 + rng.below(t.size() - 2);
        std::vector<std::size_t> chosen;
        for (std::size_t v = 0; v < t.size() && chosen.size() < keep; ++v)
            if (rng.below(2) || t.size() - v <= keep - chosen.size()) chosen.push_back(v);

        std::vector<std::string> labels;
        std::vector<Rat> d(chosen.size() * chosen.size(), Rat(0));
        for (std::size_t i = 0; i < chosen.size(); ++i) labels.push_back(full.label(chosen[i]));
        for (std::size_t i = 0; i < chosen.size(); ++i)
            for (std::size_t j = 0; j < chosen.size(); ++j)
                d[i * chosen.size() + j] = full.d(chosen[i], chosen[j]);
        FiniteMetric<Rat> sub(labels, d);

        auto r = realize_tree(sub, Rat(0));
        CHECK(verify_realization(r.tree, r.embedding, sub, Rat(0)).max_abs == Rat(0));
        for (std::size_t v = 0; v < r.tree.size(); ++v) {
            if (r.tree.id(v).rfind("w#", 0) == 0) CHECK(r.tree.degree_of_vertex(v) >= 3);
            if (r.tree.degree_of_vertex(v) <= 1) CHECK(sub.has_label(r.tree.id(v)));
        }
    }
}

TEST_CASE("round trip within tolerance in floating mode") {
    Rng rng(223);
    for (int it = 0; it < 40; ++it) {
        auto t = to_double_tree(random_rat_tree(rng, 2 + rng.below(11), false));
        auto m = metric_of_tree(t);
        auto r = realize_tree(m, 1e-9);
        CHECK(verify_realization(r.tree, r.embedding, m, 1e-9).pass);
    }
}

TEST_CASE("insertion order does not change the realized metric") {
    Rng rng(227);
    for (int it = 0; it < 20; ++it) {
        auto t = random_rat_tree(rng, 4 + rng.below(7), false);
        auto m = metric_of_tree(t);

        // a fixed label permutation of the same metric
        std::vector<std::size_t> perm(m.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
        std::vector<Rat> d(m.size() * m.size());
        std::vector<std::string> labels(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) labels[i] = m.label(perm[i]);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m.size(); ++j)
                d[i * m.size() + j] = m.d(perm[i], perm[j]);
        FiniteMetric<Rat> shuffled(labels, d);

        auto r1 = realize_tree(m, Rat(0));
        auto r2 = realize_tree(shuffled, Rat(0));
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m.size(); ++j) {
                Rat d1 = distance(r1.tree, r1.embedding.at(m.label(i)),
                                  r1.embedding.at(m.label(j)));
                Rat d2 = distance(r2.tree, r2.embedding.at(m.label(i)),
                                  r2.embedding.at(m.label(j)));
                CHECK(d1 == d2);
            }
    }
}

TEST_CASE("labels landing on interior points are embedded, not duplicated") {
    // path a--m--b with m exactly between: the middle label lands on the
    // segment seeded by a and b when inserted last
    FiniteMetric<Rat> m({"a", "b", "m"},
                        {Rat(0), Rat(4), Rat(2), Rat(4), Rat(0), Rat(2), Rat(2), Rat(2), Rat(0)});
    auto r = realize_tree(m, Rat(0));
    CHECK(r.tree.size() == 3);
    CHECK(verify_realization(r.tree, r.embedding, m, Rat(0)).pass);
    CHECK(r.tree.has_vertex("m"));
}

TEST_CASE("tiny metrics") {
    FiniteMetric<Rat> one({"only"}, {Rat(0)});
    auto r1 = realize_tree(one, Rat(0));
    CHECK(r1.tree.size() == 1);
    CHECK(r1.embedding.at("only").is_vertex());

    FiniteMetric<Rat> two({"a", "b"}, {Rat(0), Rat(5, 2), Rat(5, 2), Rat(0)});
    auto r2 = realize_tree(two, Rat(0));
    CHECK(r2.tree.edge_count() == 1);
    CHECK(r2.tree.edge(0).len == Rat(5, 2));
}

TEST_CASE("verification reports deviations and missing labels") {
    WeightedTree<Rat> t({"a", "b"}, {{"a", "b", Rat(2)}});
    FiniteMetric<Rat> m({"a", "b"}, {Rat(0), Rat(2), Rat(2), Rat(0)});
    std::map<std::string, TreePoint<Rat>> emb{
        {"a", TreePoint<Rat>::at_vertex(t.vertex("a"))},
        {"b", TreePoint<Rat>::at_vertex(t.vertex("b"))},
    };
    CHECK(verify_realization(t, emb, m, Rat(0)).max_abs == Rat(0));

    WeightedTree<Rat> longer({"a", "b"}, {{"a", "b", Rat(2001, 1000)}});
    std::map<std::string, TreePoint<Rat>> emb2{
        {"a", TreePoint<Rat>::at_vertex(longer.vertex("a"))},
        {"b", TreePoint<Rat>::at_vertex(longer.vertex("b"))},
    };
    auto rep = verify_realization(longer, emb2, m, Rat(0));
    CHECK(rep.max_abs == Rat(1, 1000));
    CHECK_FALSE(rep.pass);

    emb2.erase("b");
    CHECK_THROWS_AS(verify_realization(longer, emb2, m, Rat(0)), MissingLabel);
}
