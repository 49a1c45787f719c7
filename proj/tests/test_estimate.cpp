#include <cmath>
#include <random>

#include "doctest.h"
#include "soupfall/estimate.hpp"

using namespace soupfall;

TEST_CASE("wilson interval") {
    WilsonInterval w = wilson(50, 100);
    CHECK(w.p_hat == doctest::Approx(0.5));
    CHECK(w.lo == doctest::Approx(0.4038315).epsilon(1e-4));
    CHECK(w.hi == doctest::Approx(0.5961685).epsilon(1e-4));
    // degenerate counts stay inside [0,1]
    WilsonInterval z = wilson(0, 10);
    CHECK(z.lo == doctest::Approx(0.0));
    CHECK(z.hi < 0.35);
    WilsonInterval o = wilson(10, 10);
    CHECK(o.hi == doctest::Approx(1.0));
    CHECK(o.lo > 0.65);
}

TEST_CASE("weighted least squares recovers planted lines") {
    std::vector<double> x{0, 1, 2, 3, 4};
    std::vector<double> y, w(5, 1.0);
    for (double xi : x) y.push_back(3.0 - 2.0 * xi);
    LineFit f = weighted_least_squares(x, y, w);
    CHECK(f.slope == doctest::Approx(-2.0));
    CHECK(f.intercept == doctest::Approx(3.0));
    CHECK(f.r2 == doctest::Approx(1.0));
    // known-variance WLS stderr: sqrt(sum w / (sum w * sum w x^2 - (sum w x)^2))
    CHECK(f.slope_stderr == doctest::Approx(std::sqrt(5.0 / 50.0)));

    // a heavily weighted outlier dominates the fit
    std::vector<double> y2 = y;
    y2[4] += 10.0;
    std::vector<double> w2{1, 1, 1, 1, 1e9};
    LineFit g = weighted_least_squares(x, y2, w2);
    CHECK(std::abs(g.slope + 2.0) > 0.5);
}

TEST_CASE("kolmogorov and ks tests") {
    CHECK(kolmogorov_q(1.36) == doctest::Approx(0.0495).epsilon(0.01));
    CHECK(kolmogorov_q(0.5) == doctest::Approx(0.9639).epsilon(0.01));

    std::mt19937 mt(2);
    std::uniform_real_distribution<double> unif(0, 1);
    std::vector<double> a, b, c;
    for (int i = 0; i < 800; ++i) {
        a.push_back(unif(mt));
        b.push_back(unif(mt));
        c.push_back(0.5 + 0.5 * unif(mt));  // shifted
    }
    auto [d1, p1] = ks_two_sample(a, b);
    CHECK(p1 > 0.01);
    auto [d2, p2] = ks_two_sample(a, c);
    CHECK(p2 < 1e-6);
    auto [d3, p3] = ks_uniform01(a);
    CHECK(p3 > 0.01);
}

TEST_CASE("gamma_q and chi2") {
    CHECK(gamma_q(0.5, 1.0) == doctest::Approx(std::erfc(1.0)).epsilon(1e-6));
    CHECK(gamma_q(1.0, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-9));
    // independent 2x2 table
    auto [s1, p1] = chi2_independence({{50, 50}, {50, 50}});
    CHECK(p1 > 0.99);
    auto [s2, p2] = chi2_independence({{90, 10}, {10, 90}});
    CHECK(p2 < 1e-6);
}

TEST_CASE("fit_alpha recovers a planted power law") {
    PTable pt;
    for (double eps : {0.4, 0.2, 0.1, 0.05}) {
        PTableRow row;
        row.eps = eps;
        row.trials = 1000000;
        row.successes = uint64_t(std::llround(row.trials * std::pow(eps, 0.5)));
        WilsonInterval w = wilson(row.successes, row.trials);
        row.p_hat = w.p_hat;
        row.ci_lo = w.lo;
        row.ci_hi = w.hi;
        pt.rows.push_back(row);
    }
    ExponentReport rep = fit_alpha(pt);
    CHECK(rep.alpha_hat == doctest::Approx(0.5).epsilon(0.01));
    CHECK(rep.dim_hat == doctest::Approx(1.5).epsilon(0.01));
    CHECK(rep.r2 > 0.999);
    CHECK(rep.bracket_ok);

    PTable empty;
    CHECK_THROWS_AS(fit_alpha(empty), insufficient_data_error);
    PTable sparse;
    PTableRow r;
    r.eps = 0.1;
    r.trials = 100;
    r.successes = 2;  // below the 10-success floor
    sparse.rows = {r, r};
    CHECK_THROWS_AS(fit_alpha(sparse), insufficient_data_error);
}

TEST_CASE("box_dimension on exact scalings") {
    // full square: N(eps) = eps^-2
    std::vector<BoxCount> square;
    for (double eps : {1.0 / 64, 1.0 / 32, 1.0 / 16, 1.0 / 8})
        square.push_back({eps, 1.0 / (eps * eps)});
    ExponentReport sq = box_dimension(square);
    CHECK(sq.dim_hat == doctest::Approx(2.0).epsilon(1e-9));

    // straight segment: N(eps) = eps^-1
    std::vector<BoxCount> seg;
    for (double eps : {1.0 / 64, 1.0 / 32, 1.0 / 16, 1.0 / 8})
        seg.push_back({eps, 1.0 / eps});
    ExponentReport sg = box_dimension(seg);
    CHECK(sg.dim_hat == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(box_dimension({{0.5, 1.0}, {0.25, 2.0}}),
                    degenerate_input_error);  // fewer than 3 scales
    CHECK_THROWS_AS(box_dimension({{0.5, 0.0}, {0.25, 0.0}, {0.125, 0.0}}),
                    degenerate_input_error);
}

TEST_CASE("estimate_p coupled monotonicity and thread determinism") {
    ShapeMeasure circ{ShapeKind::Circle};
    std::vector<double> eps{0.1, 0.2, 0.4};
    PTable one = estimate_p_coupled(0.25, circ, eps, 300, 8.0, 9, 1);
    PTable two = estimate_p_coupled(0.25, circ, eps, 300, 8.0, 9, 2);
    REQUIRE(one.rows.size() == 3);
    for (size_t i = 0; i < one.rows.size(); ++i) {
        CHECK(one.rows[i].successes == two.rows[i].successes);
        CHECK(one.rows[i].trials == two.rows[i].trials);
    }
    // rows sorted by decreasing eps with p_hat non-increasing toward small eps
    CHECK(one.rows[0].eps == doctest::Approx(0.4));
    CHECK(one.rows[0].p_hat >= one.rows[1].p_hat);
    CHECK(one.rows[1].p_hat >= one.rows[2].p_hat);

    CHECK_THROWS_AS(estimate_p(0.25, circ, eps, 10, 2.0, 1), invalid_spec_error);
}

TEST_CASE("phase scan") {
    ShapeMeasure circ{ShapeKind::Circle};
    std::vector<double> grid{0.05, 0.2, 0.5, 1.0, 2.0};
    PhaseScan ps = phase_scan(circ, grid, 0.25, 200, 11);
    REQUIRE(ps.rows.size() == grid.size());
    for (size_t i = 1; i < ps.rows.size(); ++i) {
        CHECK(ps.rows[i].c > ps.rows[i - 1].c);
        CHECK(ps.rows[i].p_hat <= ps.rows[i - 1].p_hat + 1e-12);
    }
    if (ps.half_bracket) {
        auto [lo, hi] = *ps.half_bracket;
        CHECK(lo < hi);
        CHECK(lo >= grid.front());
        CHECK(hi <= grid.back());
    }
}

TEST_CASE("cle closed forms") {
    CleValues v = cle_values(1.0);
    CHECK(v.kappa == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(v.d == doctest::Approx(1.875).epsilon(1e-12));
    CHECK(v.boundary_dim == doctest::Approx(1.5).epsilon(1e-12));

    // the kappa-form and the closed c-form agree across the range
    for (int k = 1; k <= 100; ++k) {
        double c = k / 100.0;
        CleValues w = cle_values(c);
        double kp = w.kappa;
        double from_kappa = 2 - (3 * kp - 8) * (8 - kp) / (32 * kp);
        CHECK(std::abs(w.d - from_kappa) < 1e-9);
    }

    // d(c) = 2 - c/10 + o(c)
    double h = 1e-4;
    double slope = (cle_values(h).d - 2.0) / h;
    CHECK(slope == doctest::Approx(-0.1).epsilon(5e-3));

    CHECK_THROWS_AS(cle_values(0.0), domain_error);
    CHECK_THROWS_AS(cle_values(1.5), domain_error);
    CHECK_THROWS_AS(cle_values(-1.0), domain_error);

    CleValues with_beta = cle_values(0.5, M_PI / 4);
    CHECK(with_beta.delta == doctest::Approx(2 - 0.5 * M_PI / 4));
}
