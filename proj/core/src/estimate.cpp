#include "soupfall/estimate.hpp"

#include "soupfall/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace soupfall {

namespace {

uint64_t trial_seed(uint64_t seed, uint64_t stream, uint64_t replica) {
    CounterRng rng(seed, stream, replica);
    return rng();
}

PTableRow make_row(double eps, uint64_t successes, uint64_t trials) {
    PTableRow row;
    row.eps = eps;
    row.trials = trials;
    row.successes = successes;
    WilsonInterval w = wilson(successes, trials);
    row.p_hat = w.p_hat;
    row.ci_lo = w.lo;
    row.ci_hi = w.hi;
    return row;
}

std::vector<double> sorted_desc(std::vector<double> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

}  // namespace

PTable estimate_p(double c, const ShapeMeasure& shape,
                  const std::vector<double>& eps_list, uint64_t replicas,
                  double pitch_divisor, uint64_t seed, unsigned threads) {
    if (!(pitch_divisor >= 4))
        throw invalid_spec_error("estimate_p: pitch_divisor must be >= 4");
    std::vector<double> eps = sorted_desc(eps_list);
    PTable pt;
    for (size_t k = 0; k < eps.size(); ++k) {
        double pitch = eps[k] / pitch_divisor;
        double eps_min = 2 * pitch;
        std::vector<uint8_t> hits(replicas, 0);
        parallel_for_index(replicas, threads, [&](size_t i) {
            CrossingTrial t = event_A_eps(c, shape, eps[k], pitch, eps_min,
                                          trial_seed(seed, 100 + k, i));
            hits[i] = t.success ? 1 : 0;
        });
        uint64_t succ = 0;
        for (uint8_t h : hits) succ += h;
        pt.rows.push_back(make_row(eps[k], succ, replicas));
    }
    return pt;
}

PTable estimate_p_coupled(double c, const ShapeMeasure& shape,
                          const std::vector<double>& eps_list, uint64_t replicas,
                          double pitch_divisor, uint64_t seed, unsigned threads) {
    if (!(pitch_divisor >= 4))
        throw invalid_spec_error("estimate_p_coupled: pitch_divisor must be >= 4");
    std::vector<double> eps = sorted_desc(eps_list);
    double pitch = eps.back() / pitch_divisor;  // shared, from the finest scale
    double eps_min = 2 * pitch;
    std::vector<std::vector<uint8_t>> hits(replicas);
    parallel_for_index(replicas, threads, [&](size_t i) {
        std::vector<CrossingTrial> ts = event_A_eps_coupled(
            c, shape, eps, pitch, eps_min, trial_seed(seed, 99, i));
        hits[i].resize(ts.size());
        for (size_t k = 0; k < ts.size(); ++k) hits[i][k] = ts[k].success ? 1 : 0;
    });
    PTable pt;
    for (size_t k = 0; k < eps.size(); ++k) {
        uint64_t succ = 0;
        for (uint64_t i = 0; i < replicas; ++i) succ += hits[i][k];
        pt.rows.push_back(make_row(eps[k], succ, replicas));
    }
    return pt;
}

ExponentReport fit_alpha(const PTable& pt) {
    std::vector<double> x, y, w;
    for (const PTableRow& r : pt.rows) {
        if (r.successes < 10 || r.successes == r.trials) continue;
        x.push_back(std::log(r.eps));
        y.push_back(std::log(r.p_hat));
        // var(log p_hat) ~ (1-p)/(n p)
        w.push_back(static_cast<double>(r.trials) * r.p_hat / (1.0 - r.p_hat));
    }
    if (x.size() < 2)
        throw insufficient_data_error(
            "fit_alpha: need >= 2 scales with >= 10 successes and p_hat < 1");
    LineFit f = weighted_least_squares(x, y, w);
    ExponentReport rep;
    rep.alpha_hat = f.slope;
    rep.stderr_ = f.slope_stderr;
    rep.r2 = f.r2;
    rep.dim_hat = 2.0 - f.slope;
    rep.bracket_ok = true;
    for (const PTableRow& r : pt.rows) {
        if (r.trials == 0) continue;
        double se = std::sqrt(r.p_hat * (1 - r.p_hat) /
                              static_cast<double>(r.trials));
        if (std::pow(r.eps, rep.alpha_hat) > r.p_hat + 3 * se)
            rep.bracket_ok = false;
    }
    return rep;
}

ExponentReport box_dimension(const std::vector<BoxCount>& counts) {
    if (counts.size() < 3)
        throw degenerate_input_error("box_dimension: need >= 3 scales");
    std::vector<double> x, y, w;
    for (const BoxCount& bc : counts) {
        if (!(bc.count > 0) || !(bc.eps > 0))
            throw degenerate_input_error("box_dimension: non-positive scale or count");
        x.push_back(std::log(1.0 / bc.eps));
        y.push_back(std::log(bc.count));
        w.push_back(1.0);
    }
    LineFit f = weighted_least_squares(x, y, w);
    ExponentReport rep;
    rep.alpha_hat = 2.0 - f.slope;
    rep.stderr_ = f.slope_stderr;
    rep.r2 = f.r2;
    rep.dim_hat = f.slope;
    rep.bracket_ok = true;
    return rep;
}

PhaseScan phase_scan(const ShapeMeasure& shape, const std::vector<double>& c_grid,
                     double eps_fixed, uint64_t replicas, uint64_t seed,
                     unsigned threads) {
    if (c_grid.empty() || !std::is_sorted(c_grid.begin(), c_grid.end()))
        throw invalid_spec_error("phase_scan: c_grid must be increasing");
    double c_max = c_grid.back();
    double pitch = eps_fixed / 8;
    double eps_min = 2 * pitch;

    std::vector<std::vector<uint8_t>> hits(replicas);
    parallel_for_index(replicas, threads, [&](size_t rep) {
        SoupSpec spec;
        spec.c = c_max;
        spec.shape = shape;
        spec.domain = UnitDisk{};
        spec.eps_min = eps_min;
        spec.rho_max = 2.0;
        CounterRng rng(seed, 20, rep);
        Soup soup = sample_soup(spec, rng);
        // uniform time marks couple the whole c-grid on this realization
        CounterRng mark_rng(seed, 21, rep);
        std::vector<double> marks(soup.curves.size());
        for (double& m : marks) m = mark_rng.uniform(0.0, c_max);

        hits[rep].resize(c_grid.size());
        for (size_t k = 0; k < c_grid.size(); ++k) {
            std::vector<Curve> sub;
            for (size_t i = 0; i < soup.curves.size(); ++i)
                if (marks[i] <= c_grid[k]) sub.push_back(soup.curves[i]);
            CrossingTrial t = annulus_crossing_trial(sub, eps_fixed, pitch, seed);
            hits[rep][k] = t.success ? 1 : 0;
        }
    });

    PhaseScan scan;
    for (size_t k = 0; k < c_grid.size(); ++k) {
        uint64_t succ = 0;
        for (uint64_t i = 0; i < replicas; ++i) succ += hits[i][k];
        PhaseScanRow row;
        row.c = c_grid[k];
        row.trials = replicas;
        row.successes = succ;
        WilsonInterval w = wilson(succ, replicas);
        row.p_hat = w.p_hat;
        row.ci_lo = w.lo;
        row.ci_hi = w.hi;
        scan.rows.push_back(row);
    }
    for (size_t k = 0; k + 1 < scan.rows.size(); ++k) {
        if (scan.rows[k].p_hat >= 0.5 && scan.rows[k + 1].p_hat < 0.5) {
            scan.half_bracket = {scan.rows[k].c, scan.rows[k + 1].c};
            break;
        }
    }
    return scan;
}

CleValues cle_values(double c, std::optional<double> beta) {
    if (!(c > 0) || c > 1.0)
        throw domain_error("cle_values: c must be in (0, 1]");
    CleValues v;
    v.c = c;
    double b = 26.0 - 2.0 * c;
    v.kappa = (b - std::sqrt(b * b - 576.0)) / 6.0;
    double d_kappa =
        2.0 - (3 * v.kappa - 8) * (8 - v.kappa) / (32 * v.kappa);
    double d_closed = 2.0 - c / 16.0 -
                      (5.0 + c - std::sqrt(25.0 + c * c - 26.0 * c)) / 96.0;
    if (std::abs(d_kappa - d_closed) > 1e-9)
        throw domain_error("cle_values: kappa-form and c-form disagree");
    v.d = d_closed;
    v.boundary_dim = 1.0 + v.kappa / 8.0;
    if (beta) v.delta = 2.0 - c * (*beta);
    return v;
}

std::vector<SmallCRow> small_c_report(const ShapeMeasure& shape,
                                      const std::vector<double>& c_list,
                                      const std::vector<double>& eps_list,
                                      uint64_t replicas, uint64_t seed,
                                      unsigned threads) {
    double b = beta(shape, 2000, 0.01, seed).mean;
    std::vector<SmallCRow> out;
    for (double c : c_list) {
        PTable pt = estimate_p(c, shape, eps_list, replicas, 8.0, seed, threads);
        ExponentReport rep = fit_alpha(pt);
        SmallCRow row;
        row.c = c;
        row.alpha_hat = rep.alpha_hat;
        row.alpha_stderr = rep.stderr_;
        row.ratio = rep.alpha_hat / c;
        row.beta = b;
        row.subset_inequality_ok =
            rep.alpha_hat >= c * b - 3 * rep.stderr_;
        out.push_back(row);
    }
    return out;
}

}  // namespace soupfall
