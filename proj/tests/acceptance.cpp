// Acceptance gate: eleven go/no-go checks, one PASS/FAIL line each.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "soupfall/carpet.hpp"
#include "soupfall/cluster.hpp"
#include "soupfall/estimate.hpp"
#include "soupfall/io.hpp"

using namespace soupfall;

namespace {

int g_failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d (%s): %s\n", ok ? "PASS" : "FAIL", id, title,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double se_from_ci(double lo, double hi) { return (hi - lo) / (2 * 1.959964); }

// ---- 1: closed-form CLE values ---------------------------------------------

void criterion_cle() {
    CleValues v = cle_values(1.0);
    bool ok = std::abs(v.kappa - 4.0) <= 1e-12 && std::abs(v.d - 1.875) <= 1e-12 &&
              std::abs(v.boundary_dim - 1.5) <= 1e-12;
    double worst = 0;
    for (int k = 1; k <= 100; ++k) {
        CleValues w = cle_values(k / 100.0);
        double from_kappa = 2 - (3 * w.kappa - 8) * (8 - w.kappa) / (32 * w.kappa);
        worst = std::max(worst, std::abs(w.d - from_kappa));
    }
    ok = ok && worst <= 1e-9;
    double h = 1e-4;
    double slope = (cle_values(h).d - 2.0) / h;
    ok = ok && std::abs(slope + 0.1) <= 5e-4;
    report(1, "cle closed forms", ok,
           "kappa(1)=" + fmt(v.kappa) + " d(1)=" + fmt(v.d) +
               " bdim(1)=" + fmt(v.boundary_dim) + " max|d-d_kappa|=" + fmt(worst) +
               " d'(0+)=" + fmt(slope));
}

// ---- 2: sampler intensity law ----------------------------------------------

void criterion_sampler_law() {
    bool ok = true;
    std::ostringstream detail;
    const int reps = 10000;
    for (double a : {0.25, 0.5, 1.0}) {
        SoupSpec spec;
        spec.c = 1.0;
        spec.shape = ShapeMeasure{ShapeKind::Circle};
        // pad the domain so every curve with diameter <= 2a and anchor in
        // [0,2]^2 is contained (circle bbox = anchor + [0,2r] x [-r,r])
        spec.domain = Rect{-0.1, -2 * a - 0.1, 2 + 4 * a + 0.1, 2 + 2 * a + 0.1};
        spec.eps_min = a;
        spec.rho_max = 2 * a;
        long long hits = 0;
        for (int i = 0; i < reps; ++i) {
            Soup s = sample_soup(spec, 20000 + i);
            for (const Curve& c : s.curves) {
                Point z = anchor(c);
                if (z.x >= 0 && z.x <= 2 && z.y >= 0 && z.y <= 2) ++hits;
            }
        }
        double mean = double(hits) / reps;
        double target = 1.5 / (a * a);
        double sigma = std::sqrt(target / reps);  // Poisson counts
        ok = ok && std::abs(mean - target) < 3 * sigma;
        detail << "a=" << a << ": " << fmt(mean) << " vs " << fmt(target)
               << " (3sigma " << fmt(3 * sigma) << ")  ";
    }
    report(2, "sampler intensity law", ok, detail.str());
}

// ---- 3: thinness oracle ------------------------------------------------------

void criterion_thinness() {
    ShapeMeasure circ{ShapeKind::Circle};
    ShapeMeasure stick{ShapeKind::Stick};
    double c4 = mu_L_R(circ, 4.0, 0.002).value;
    double c4n = mu_L_R_numeric(circ, 4.0, 0.002).value;
    double s4 = mu_L_R(stick, 4.0, 0.002).value;
    double s4n = mu_L_R_numeric(stick, 4.0, 0.002).value;
    double ratio = mu_L_R(circ, 8.0, 0.002).value / c4;
    bool ok = std::abs(c4 - M_PI / 2) <= 1e-9 &&
              std::abs(s4 - (2.0 / 4 + M_PI / 32)) <= 1e-9 &&
              std::abs(c4n / c4 - 1) <= 0.005 && std::abs(s4n / s4 - 1) <= 0.005 &&
              std::abs(ratio - 0.5) <= 1e-6;
    report(3, "thinness oracle", ok,
           "circle " + fmt(c4) + "/" + fmt(c4n) + " stick " + fmt(s4) + "/" +
               fmt(s4n) + " halving ratio " + fmt(ratio));
}

// ---- 4: remaining-set one-point law and box dimension ------------------------

void criterion_one_point() {
    const double c = 0.5, eps_cut = 0.05, rho = 2.0;
    const double target = std::pow(eps_cut / rho, c * M_PI / 4);

    SoupSpec spec;
    spec.c = c;
    spec.shape = ShapeMeasure{ShapeKind::Circle};
    spec.domain = Rect{-2.5, -2.5, 20.5, 20.5};
    spec.eps_min = eps_cut;
    spec.rho_max = rho;
    long long survive = 0, total = 0;
    for (int rep = 0; rep < 100; ++rep) {
        Soup s = sample_soup(spec, 31000 + rep);
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 10; ++j) {
                Point x{i * 2.0, j * 2.0};
                bool covered = false;
                for (const Curve& cv : s.curves)
                    if (interior_contains(cv, x)) { covered = true; break; }
                survive += !covered;
                ++total;
            }
    }
    double p = double(survive) / double(total);
    double sigma = std::sqrt(target * (1 - target) / double(total));
    bool ok_point = std::abs(p - target) < 3 * sigma;

    // box dimension from the remaining-set raster sequence on [0,1]^2:
    // at scale eps, drop curves larger than eps and rasterize at pitch eps,
    // so E[N(eps)] = eps^-2 * (eps/rho)^{c pi/4} exactly
    std::vector<double> scales{1.0 / 256, 1.0 / 128, 1.0 / 64, 1.0 / 32, 1.0 / 16};
    SoupSpec bspec;
    bspec.c = c;
    bspec.shape = ShapeMeasure{ShapeKind::Circle};
    bspec.domain = Rect{-2.5, -2.5, 3.5, 3.5};
    bspec.eps_min = scales.front();
    bspec.rho_max = rho;
    std::vector<double> mean_counts(scales.size(), 0.0);
    const int breps = 8;
    for (int rep = 0; rep < breps; ++rep) {
        Soup s = sample_soup(bspec, 32000 + rep);
        for (size_t k = 0; k < scales.size(); ++k) {
            Raster rem = remaining_raster(s, scales[k], Rect{0, 0, 1, 1},
                                          scales[k]);
            mean_counts[k] += double(rem.count_occupied());
        }
    }
    std::vector<BoxCount> counts;
    for (size_t k = 0; k < scales.size(); ++k)
        counts.push_back({scales[k], mean_counts[k] / breps});
    ExponentReport dim = box_dimension(counts);
    double dim_target = 2 - c * M_PI / 4;
    bool ok_dim = std::abs(dim.dim_hat - dim_target) <= 0.05;

    report(4, "one-point law + box dimension", ok_point && ok_dim,
           "p=" + fmt(p) + " vs " + fmt(target) + " (3sigma " + fmt(3 * sigma) +
               "); dim=" + fmt(dim.dim_hat) + " vs " + fmt(dim_target));
}

// ---- 5 & 6: submultiplicativity and power-law fit ----------------------------

void criteria_submult_and_fit() {
    ShapeMeasure circ{ShapeKind::Circle};
    const uint64_t reps = 10000;
    PTable pt = estimate_p_coupled(0.2, circ, {0.04, 0.05, 0.1, 0.2}, reps, 8.0,
                                   41000);
    auto row = [&](double eps) {
        for (const PTableRow& r : pt.rows)
            if (std::abs(r.eps - eps) < 1e-12) return r;
        return PTableRow{};
    };
    PTableRow r004 = row(0.04), r005 = row(0.05), r01 = row(0.1), r02 = row(0.2);
    double se004 = se_from_ci(r004.ci_lo, r004.ci_hi);
    double se02 = se_from_ci(r02.ci_lo, r02.ci_hi);
    double sigma = std::sqrt(se004 * se004 +
                             4 * r02.p_hat * r02.p_hat * se02 * se02);
    bool sub_ok = r004.p_hat <= r02.p_hat * r02.p_hat + 3 * sigma;
    // coupled-seed monotonicity holds exactly, not just within error
    bool mono_ok = r005.successes <= r01.successes && r01.successes <= r02.successes;
    report(5, "submultiplicativity of P(A_eps)", sub_ok && mono_ok,
           "p(0.04)=" + fmt(r004.p_hat) + " vs p(0.2)^2+3sigma=" +
               fmt(r02.p_hat * r02.p_hat + 3 * sigma) + "; monotone " +
               fmt(r005.p_hat) + " <= " + fmt(r01.p_hat) + " <= " + fmt(r02.p_hat));

    ExponentReport fit = fit_alpha(pt);
    bool fit_ok = fit.r2 >= 0.95 && fit.bracket_ok && fit.alpha_hat > 0 &&
                  fit.dim_hat < 2;
    report(6, "power-law fit quality", fit_ok,
           "alpha=" + fmt(fit.alpha_hat) + " r2=" + fmt(fit.r2) + " bracket_ok=" +
               (fit.bracket_ok ? "yes" : "no") + " dim=" + fmt(fit.dim_hat));
}

// ---- 7: sequential exploration equivalence -----------------------------------

void criterion_sequential() {
    const int reps = 2000;
    std::vector<double> direct, sequential;
    direct.reserve(reps);
    sequential.reserve(reps);
    SoupSpec spec;
    spec.c = 0.3;
    spec.shape = ShapeMeasure{ShapeKind::Circle};
    spec.domain = UnitDisk{};
    spec.eps_min = 0.05;
    spec.rho_max = 2.0;
    for (int i = 0; i < reps; ++i) {
        Soup s = sample_soup(spec, 51000 + i);
        ClusterSet cs = clusters(s, 0);
        double n = 0;
        for (const auto& cl : cs.clusters) n += (cl.diameter >= 0.2);
        direct.push_back(n);
        auto seq = explore_clusters_sequential(UnitDisk{}, 0.3,
                                               ShapeMeasure{ShapeKind::Circle},
                                               0.05, 61000 + i);
        double m = 0;
        for (const auto& cl : seq) m += (cl.diameter >= 0.2);
        sequential.push_back(m);
    }
    auto [d, p] = ks_two_sample(direct, sequential);
    report(7, "sequential exploration equivalence", p > 0.01,
           "KS D=" + fmt(d) + " p=" + fmt(p));
}

// ---- 8: beta*(c) near beta ---------------------------------------------------

void criterion_beta_star() {
    ShapeMeasure circ{ShapeKind::Circle};
    BetaStarResult res =
        estimate_beta_star(0.02, circ, 8.0, 0.05, 0.01, 1000, 71000);
    double ci = res.estimate.half_width;
    double lo = M_PI / 4 - ci, hi = 1.1 * M_PI / 4 + ci;
    bool band_ok = res.estimate.mean >= lo && res.estimate.mean <= hi;
    bool trunc_ok = res.truncated_fraction < 0.01;

    // empirical tail P(|gamma*| > x) on x in [4, 8]: fit only where the
    // survival is observed, vacuous when the cluster never grows that far
    std::vector<double> xs, ys;
    for (double x : {4.0, 5.0, 6.0, 8.0}) {
        size_t k = 0;
        for (const GammaStar& g : res.samples) k += (g.diameter > x);
        if (k > 0) {
            xs.push_back(std::log(x));
            ys.push_back(std::log(double(k) / res.samples.size()));
        }
    }
    bool tail_ok = true;
    std::string tail_note = "no tail mass beyond x=4 (slope check vacuous)";
    if (xs.size() >= 2) {
        LineFit f = weighted_least_squares(xs, ys, std::vector<double>(xs.size(), 1.0));
        tail_ok = f.slope <= -3.0;
        tail_note = "tail slope " + fmt(f.slope);
    }
    report(8, "beta*(c) -> beta", band_ok && trunc_ok && tail_ok,
           "beta*=" + fmt(res.estimate.mean) + " in [" + fmt(lo) + ", " + fmt(hi) +
               "], truncated " + fmt(res.truncated_fraction) + "; " + tail_note);
}

// ---- 9: small-c expansion ----------------------------------------------------

void criterion_small_c() {
    ShapeMeasure circ{ShapeKind::Circle};
    auto rows = small_c_report(circ, {0.05}, {0.08, 0.04, 0.02, 0.01}, 1200, 81000);
    const SmallCRow& r = rows.at(0);
    bool band_ok = r.ratio >= 0.5 * r.beta && r.ratio <= 2.0 * r.beta;
    report(9, "small-c expansion", r.subset_inequality_ok && band_ok,
           "alpha=" + fmt(r.alpha_hat) + "+-" + fmt(r.alpha_stderr) +
               " alpha/c=" + fmt(r.ratio) + " beta=" + fmt(r.beta) +
               " subset_ok=" + (r.subset_inequality_ok ? "yes" : "no"));
}

// ---- 10: random-walk loop mean area ------------------------------------------

void criterion_rw_area() {
    RwAreaReport rep = rw_area_check(200, 2000, 91000);
    bool ok = std::abs(rep.ratio - 1.0) <= 0.10;
    report(10, "rw loop mean area", ok,
           "ratio=" + fmt(rep.ratio) + "+-" + fmt(rep.ratio_half_width) +
               " (mean " + fmt(rep.mean_area) + " vs " + fmt(rep.expected) + ")");
}

// ---- 11: engineering invariants ----------------------------------------------

void criterion_engineering() {
    ShapeMeasure circ{ShapeKind::Circle};
    bool ok = true;
    std::ostringstream detail;

    // identical results independent of thread count
    PTable t1 = estimate_p_coupled(0.25, circ, {0.1, 0.2, 0.4}, 400, 8.0, 5, 1);
    PTable t3 = estimate_p_coupled(0.25, circ, {0.1, 0.2, 0.4}, 400, 8.0, 5, 3);
    for (size_t i = 0; i < t1.rows.size(); ++i)
        if (t1.rows[i].successes != t3.rows[i].successes) ok = false;
    BetaStarResult b1 = estimate_beta_star(0.02, circ, 8.0, 0.05, 0.02, 100, 6, 1);
    BetaStarResult b2 = estimate_beta_star(0.02, circ, 8.0, 0.05, 0.02, 100, 6, 2);
    if (b1.estimate.mean != b2.estimate.mean) ok = false;
    detail << "threads ok=" << (ok ? "yes" : "no");

    // JSONL round trip
    SoupSpec spec;
    spec.c = 0.6;
    spec.shape = circ;
    spec.domain = UnitDisk{};
    spec.eps_min = 0.02;
    spec.rho_max = 2.0;
    Soup soup = sample_soup(spec, 12345);
    std::string path = "acceptance_roundtrip.jsonl";
    save_soup(soup, path);
    bool rt = structurally_equal(soup, load_soup(path));
    std::remove(path.c_str());
    ok = ok && rt;
    detail << ", roundtrip(" << soup.curves.size() << " curves)="
           << (rt ? "yes" : "no");

    // spatial-hash crossing graph equals brute force on ~10^3 curves
    SoupSpec mix = spec;
    mix.c = 0.25;
    Soup pool = sample_soup(mix, 777);
    CounterRng extra(778, 0, 0);
    ShapeMeasure stick{ShapeKind::Stick};
    while (pool.curves.size() < 1000) {
        Curve s = place(sample_shape(stick, extra),
                        {extra.uniform(-0.7, 0.7), extra.uniform(-0.7, 0.7)},
                        extra.uniform(0.02, 0.3));
        pool.curves.push_back(s);
    }
    CrossingGraph fast = crossing_graph(pool.curves);
    CrossingGraph slow = crossing_graph_bruteforce(pool.curves);
    bool graph_ok = fast.edges == slow.edges;
    ok = ok && graph_ok;
    detail << ", graph(" << pool.curves.size() << " curves, " << fast.edges.size()
           << " edges)=" << (graph_ok ? "yes" : "no");

    // union-find partition invariant under edge order
    auto canon = [](const std::vector<uint32_t>& labels) {
        std::vector<uint32_t> remap(labels.size(), UINT32_MAX), out(labels.size());
        uint32_t next = 0;
        for (size_t i = 0; i < labels.size(); ++i) {
            if (remap[labels[i]] == UINT32_MAX) remap[labels[i]] = next++;
            out[i] = remap[labels[i]];
        }
        return out;
    };
    ClusterSet ref = clusters_from_edges(pool.curves, fast, 0);
    std::mt19937 mt(4);
    bool part_ok = true;
    for (int trial = 0; trial < 10; ++trial) {
        CrossingGraph shuffled = fast;
        std::shuffle(shuffled.edges.begin(), shuffled.edges.end(), mt);
        ClusterSet cs = clusters_from_edges(pool.curves, shuffled, 0);
        if (canon(cs.labels) != canon(ref.labels)) part_ok = false;
    }
    ok = ok && part_ok;
    detail << ", partition=" << (part_ok ? "yes" : "no");

    report(11, "engineering invariants", ok, detail.str());
}

}  // namespace

int main() {
    criterion_cle();
    criterion_sampler_law();
    criterion_thinness();
    criterion_one_point();
    criteria_submult_and_fit();
    criterion_sequential();
    criterion_beta_star();
    criterion_small_c();
    criterion_rw_area();
    criterion_engineering();
    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria failed\n", g_failures);
    return 1;
}
