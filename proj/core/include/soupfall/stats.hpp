#pragma once

// Small statistics toolbox: Wilson intervals, weighted log-log fits,
// KS and chi-square tests.

#include <cstdint>
#include <utility>
#include <vector>

namespace soupfall {

struct WilsonInterval {
    double p_hat = 0.0;
    double lo = 0.0;
    double hi = 1.0;
};

WilsonInterval wilson(uint64_t successes, uint64_t trials, double z = 1.959964);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r2 = 0.0;
};

// Weighted least squares of y on x (weights = inverse variances).
LineFit weighted_least_squares(const std::vector<double>& x,
                               const std::vector<double>& y,
                               const std::vector<double>& w);

// Kolmogorov survival function Q_KS(lambda) = 2 sum (-1)^{k-1} e^{-2k^2 l^2}.
double kolmogorov_q(double lambda);

// Two-sample KS test; returns (statistic, asymptotic p-value).
std::pair<double, double> ks_two_sample(std::vector<double> a,
                                        std::vector<double> b);

// One-sample KS test against U[0,1) after mapping samples through the CDF.
std::pair<double, double> ks_uniform01(std::vector<double> u);

// Upper regularized incomplete gamma Q(a, x).
double gamma_q(double a, double x);

// Chi-square independence test on a contingency table (rows x cols counts);
// returns (statistic, p-value).
std::pair<double, double> chi2_independence(
    const std::vector<std::vector<uint64_t>>& table);

struct RunningStat {
    uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;
    void push(double x) {
        ++n;
        double d = x - mean;
        mean += d / n;
        m2 += d * (x - mean);
    }
    double variance() const { return n > 1 ? m2 / (n - 1) : 0.0; }
    double stderr_mean() const;
};

}  // namespace soupfall
