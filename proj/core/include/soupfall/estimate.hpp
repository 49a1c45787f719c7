#pragma once

// Monte Carlo engine: P(A_eps) tables, exponent and box-dimension fits,
// the coupled phase scan, the small-c report, and the closed-form CLE
// evaluator.

#include <cstdint>
#include <optional>
#include <vector>

#include "soupfall/carpet.hpp"
#include "soupfall/stats.hpp"

namespace soupfall {

struct PTableRow {
    double eps = 0.0;
    uint64_t trials = 0;
    uint64_t successes = 0;
    double p_hat = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 1.0;
};

struct PTable {
    std::vector<PTableRow> rows;  // sorted by decreasing eps
};

// Default pitch rule: pitch = eps / 8, eps_min = 2 * pitch.
PTable estimate_p(double c, const ShapeMeasure& shape,
                  const std::vector<double>& eps_list, uint64_t replicas,
                  double pitch_divisor, uint64_t seed, unsigned threads = 1);

// Coupled variant: per-replica shared soup and shared pitch
// (min eps / pitch_divisor), successes exactly monotone across eps.
PTable estimate_p_coupled(double c, const ShapeMeasure& shape,
                          const std::vector<double>& eps_list, uint64_t replicas,
                          double pitch_divisor, uint64_t seed,
                          unsigned threads = 1);

struct ExponentReport {
    double alpha_hat = 0.0;
    double stderr_ = 0.0;
    double r2 = 0.0;
    double dim_hat = 2.0;     // 2 - alpha_hat
    bool bracket_ok = false;  // eps^alpha_hat <= p_hat * (1 + 3 sigma) on all rows
};

struct insufficient_data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Weighted least squares of log p_hat on log eps; rows need >= 10 successes.
ExponentReport fit_alpha(const PTable& pt);

struct degenerate_input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BoxCount {
    double eps = 0.0;   // box side
    double count = 0.0; // occupied boxes (may be a replica mean)
};

// Slope of log N(eps) vs log(1/eps); dim_hat = slope.
ExponentReport box_dimension(const std::vector<BoxCount>& counts);

struct PhaseScanRow {
    double c = 0.0;
    uint64_t trials = 0;
    uint64_t successes = 0;
    double p_hat = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 1.0;
};

struct PhaseScan {
    std::vector<PhaseScanRow> rows;  // c increasing, p_hat non-increasing
    // Bracket [c_lo, c_hi] where p_hat crosses 1/2 (unset if no crossing).
    std::optional<std::pair<double, double>> half_bracket;
};

// Crossing probability of A_{eps_fixed} as a function of c, on realizations
// coupled via uniform time marks (monotone in c by construction).
PhaseScan phase_scan(const ShapeMeasure& shape, const std::vector<double>& c_grid,
                     double eps_fixed, uint64_t replicas, uint64_t seed,
                     unsigned threads = 1);

struct CleValues {
    double c = 0.0;
    double kappa = 0.0;         // in (8/3, 4]
    double d = 2.0;             // carpet dimension
    double delta = 0.0;         // remaining-set dimension 2 - c*beta (if beta given)
    double boundary_dim = 0.0;  // 1 + kappa/8
};

struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Closed-form CLE values for c in (0, 1]; the kappa-form and the closed
// c-form of d must agree to 1e-9.
CleValues cle_values(double c, std::optional<double> beta = std::nullopt);

struct SmallCRow {
    double c = 0.0;
    double alpha_hat = 0.0;
    double alpha_stderr = 0.0;
    double ratio = 0.0;  // alpha_hat / c
    double beta = 0.0;
    bool subset_inequality_ok = false;  // alpha_hat >= c*beta - 3*stderr
};

std::vector<SmallCRow> small_c_report(const ShapeMeasure& shape,
                                      const std::vector<double>& c_list,
                                      const std::vector<double>& eps_list,
                                      uint64_t replicas, uint64_t seed,
                                      unsigned threads = 1);

}  // namespace soupfall
