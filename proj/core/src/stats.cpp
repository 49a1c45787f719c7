#include "soupfall/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace soupfall {

WilsonInterval wilson(uint64_t successes, uint64_t trials, double z) {
    WilsonInterval w;
    if (trials == 0) return w;
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    w.p_hat = p;
    double z2 = z * z;
    double denom = 1 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    w.lo = std::max(0.0, center - half);
    w.hi = std::min(1.0, center + half);
    return w;
}

LineFit weighted_least_squares(const std::vector<double>& x,
                               const std::vector<double>& y,
                               const std::vector<double>& w) {
    if (x.size() != y.size() || x.size() != w.size() || x.size() < 2)
        throw std::invalid_argument("weighted_least_squares: need >= 2 matched points");
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        sx += w[i] * x[i];
        sy += w[i] * y[i];
        sxx += w[i] * x[i] * x[i];
        sxy += w[i] * x[i] * y[i];
    }
    double det = sw * sxx - sx * sx;
    if (det <= 0) throw std::invalid_argument("weighted_least_squares: degenerate x");
    LineFit f;
    f.slope = (sw * sxy - sx * sy) / det;
    f.intercept = (sxx * sy - sx * sxy) / det;
    f.slope_stderr = std::sqrt(sw / det);
    // weighted R^2
    double ybar = sy / sw, ss_tot = 0, ss_res = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        double fit = f.intercept + f.slope * x[i];
        ss_tot += w[i] * (y[i] - ybar) * (y[i] - ybar);
        ss_res += w[i] * (y[i] - fit) * (y[i] - fit);
    }
    f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

double kolmogorov_q(double lambda) {
    if (lambda <= 0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

std::pair<double, double> ks_two_sample(std::vector<double> a,
                                        std::vector<double> b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double na = static_cast<double>(a.size());
    double nb = static_cast<double>(b.size());
    size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    double ne = std::sqrt(na * nb / (na + nb));
    double lambda = (ne + 0.12 + 0.11 / ne) * d;
    return {d, kolmogorov_q(lambda)};
}

std::pair<double, double> ks_uniform01(std::vector<double> u) {
    if (u.empty()) throw std::invalid_argument("ks_uniform01: empty sample");
    std::sort(u.begin(), u.end());
    double n = static_cast<double>(u.size());
    double d = 0.0;
    for (size_t i = 0; i < u.size(); ++i) {
        d = std::max(d, std::abs((i + 1) / n - u[i]));
        d = std::max(d, std::abs(u[i] - i / n));
    }
    double sn = std::sqrt(n);
    double lambda = (sn + 0.12 + 0.11 / sn) * d;
    return {d, kolmogorov_q(lambda)};
}

namespace {

// Lanczos log-gamma.
double lgamma_pos(double x) { return std::lgamma(x); }

// series for P(a,x), continued fraction for Q(a,x)
double gamma_p_series(double a, double x) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - lgamma_pos(a));
}

double gamma_q_cf(double a, double x) {
    double tiny = 1e-300;
    double b = x + 1 - a, c = 1 / tiny, d = 1 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - lgamma_pos(a));
}

}  // namespace

double gamma_q(double a, double x) {
    if (!(a > 0) || x < 0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0) return 1.0;
    if (x < a + 1) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

std::pair<double, double> chi2_independence(
    const std::vector<std::vector<uint64_t>>& table) {
    size_t nr = table.size();
    if (nr < 2) throw std::invalid_argument("chi2_independence: need >= 2 rows");
    size_t nc = table[0].size();
    if (nc < 2) throw std::invalid_argument("chi2_independence: need >= 2 cols");
    std::vector<double> row(nr, 0.0), col(nc, 0.0);
    double total = 0;
    for (size_t i = 0; i < nr; ++i) {
        if (table[i].size() != nc)
            throw std::invalid_argument("chi2_independence: ragged table");
        for (size_t j = 0; j < nc; ++j) {
            row[i] += static_cast<double>(table[i][j]);
            col[j] += static_cast<double>(table[i][j]);
            total += static_cast<double>(table[i][j]);
        }
    }
    if (total == 0) throw std::invalid_argument("chi2_independence: empty table");
    double stat = 0;
    for (size_t i = 0; i < nr; ++i)
        for (size_t j = 0; j < nc; ++j) {
            double e = row[i] * col[j] / total;
            if (e > 0) {
                double d = static_cast<double>(table[i][j]) - e;
                stat += d * d / e;
            }
        }
    double dof = static_cast<double>((nr - 1) * (nc - 1));
    return {stat, gamma_q(dof / 2, stat / 2)};
}

double RunningStat::stderr_mean() const {
    return n > 1 ? std::sqrt(variance() / n) : 0.0;
}

}  // namespace soupfall
