#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "soupfall/cluster.hpp"
#include "soupfall/stats.hpp"

using namespace soupfall;

namespace {

std::vector<uint32_t> canonical_partition(const std::vector<uint32_t>& labels) {
    std::vector<uint32_t> remap(labels.size(), UINT32_MAX), out(labels.size());
    uint32_t next = 0;
    for (size_t i = 0; i < labels.size(); ++i) {
        if (remap[labels[i]] == UINT32_MAX) remap[labels[i]] = next++;
        out[i] = remap[labels[i]];
    }
    return out;
}

Soup random_circle_soup(double c, double eps_min, uint64_t seed) {
    SoupSpec spec;
    spec.c = c;
    spec.shape = ShapeMeasure{ShapeKind::Circle};
    spec.domain = UnitDisk{};
    spec.eps_min = eps_min;
    spec.rho_max = 2.0;
    return sample_soup(spec, seed);
}

}  // namespace

TEST_CASE("crossing graph equals brute force") {
    for (uint64_t seed : {1u, 2u, 3u}) {
        Soup s = random_circle_soup(0.4, 0.03, seed);
        CrossingGraph fast = crossing_graph(s.curves);
        CrossingGraph slow = crossing_graph_bruteforce(s.curves);
        CHECK(fast.n == slow.n);
        CHECK(fast.edges == slow.edges);
    }
}

TEST_CASE("cluster partition invariant under edge shuffles") {
    Soup s = random_circle_soup(0.4, 0.04, 5);
    CrossingGraph g = crossing_graph(s.curves);
    ClusterSet ref = clusters_from_edges(s.curves, g, 0);
    std::mt19937 mt(99);
    for (int trial = 0; trial < 5; ++trial) {
        CrossingGraph shuffled = g;
        std::shuffle(shuffled.edges.begin(), shuffled.edges.end(), mt);
        ClusterSet cs = clusters_from_edges(s.curves, shuffled, 0);
        CHECK(canonical_partition(cs.labels) == canonical_partition(ref.labels));
    }
}

TEST_CASE("hand-built clusters") {
    std::vector<Curve> curves{
        Circle{{0, 0}, 1.0}, Circle{{0.8, 0}, 1.0},  // crossing pair
        Circle{{5, 5}, 1.0},                          // far singleton
    };
    Soup s;
    s.curves = curves;
    s.spec.domain = Rect{-10, -10, 10, 10};
    ClusterSet cs = clusters(s, 256);
    REQUIRE(cs.clusters.size() == 2);
    CHECK(cs.labels[0] == cs.labels[1]);
    CHECK(cs.labels[2] != cs.labels[0]);
    // pair filling matches the two-disk union area
    const ClusterInfo& pair = cs.clusters[0];
    CHECK(pair.members.size() == 2);
    CHECK(pair.filled_area == doctest::Approx(1.4890458).epsilon(0.02));
    CHECK(pair.diameter == doctest::Approx(1.8));
    // singleton circle area is exact
    CHECK(cs.clusters[1].filled_area == doctest::Approx(M_PI / 4).epsilon(1e-9));
}

TEST_CASE("cluster_filling re-rasterizes") {
    Soup s;
    s.curves = {Circle{{0, 0}, 1.0}, Circle{{0.8, 0}, 1.0}};
    s.spec.domain = Rect{-2, -2, 3, 2};
    ClusterSet cs = clusters(s, 64);
    CHECK(cluster_filling(cs, s.curves, 0, 0.002) ==
          doctest::Approx(1.4890458).epsilon(0.005));
}

TEST_CASE("sequential exploration matches direct statistics") {
    // quick mean-level smoke; the full two-sample KS is an acceptance check
    const int reps = 120;
    RunningStat direct, sequential;
    for (int i = 0; i < reps; ++i) {
        Soup s = random_circle_soup(0.3, 0.05, 3000 + i);
        ClusterSet cs = clusters(s, 0);
        double big = 0;
        for (const auto& cl : cs.clusters) big += (cl.diameter >= 0.2);
        direct.push(big);
        auto seq = explore_clusters_sequential(UnitDisk{}, 0.3,
                                               ShapeMeasure{ShapeKind::Circle},
                                               0.05, 7000 + i);
        double sbig = 0;
        for (const auto& cl : seq) sbig += (cl.diameter >= 0.2);
        sequential.push(sbig);
    }
    double se = std::hypot(direct.stderr_mean(), sequential.stderr_mean());
    CHECK(std::abs(direct.mean - sequential.mean) < 4 * se);
}

TEST_CASE("gamma star at tiny intensity is the seed filling") {
    ShapeMeasure circ{ShapeKind::Circle};
    for (uint64_t seed : {1u, 2u, 3u}) {
        GammaStar g = sample_gamma_star(1e-6, circ, 8.0, 0.05, 0.004, seed);
        CHECK_FALSE(g.truncated);
        CHECK(g.cluster_members.size() == 1);
        CHECK(g.filled_area == doctest::Approx(M_PI / 4).epsilon(0.02));
        CHECK(g.diameter == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(sample_gamma_star(0.1, circ, 2.0, 0.05, 0.01, 1),
                    window_too_small_error);
}

TEST_CASE("coupled gamma star is monotone in c") {
    ShapeMeasure circ{ShapeKind::Circle};
    std::vector<double> cs{0.005, 0.01, 0.02, 0.05};
    for (uint64_t seed = 0; seed < 8; ++seed) {
        auto draws = sample_gamma_star_coupled(cs, circ, 6.0, 0.05, 0.01, seed);
        REQUIRE(draws.size() == cs.size());
        for (size_t i = 1; i < draws.size(); ++i) {
            CHECK(draws[i].filled_area >= draws[i - 1].filled_area - 1e-12);
            CHECK(draws[i].cluster_members.size() >=
                  draws[i - 1].cluster_members.size());
        }
    }
}

TEST_CASE("beta star at c=0 is exactly beta") {
    ShapeMeasure circ{ShapeKind::Circle};
    BetaStarResult r = estimate_beta_star(0.0, circ, 8.0, 0.05, 0.01, 100, 1);
    CHECK(r.estimate.mean == doctest::Approx(M_PI / 4));
    CHECK(r.truncated_fraction == doctest::Approx(0.0));
}
