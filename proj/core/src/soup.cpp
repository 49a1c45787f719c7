#include "soupfall/soup.hpp"

#include "soupfall/raster.hpp"
#include "lattice_fill.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace soupfall {

namespace {

void check_shape(const ShapeMeasure& s) {
    if (!(s.mass > 0)) throw invalid_spec_error("shape: mass must be > 0");
    if (s.kind == ShapeKind::DiscreteStick && s.n < 3)
        throw invalid_spec_error("discrete_stick: n must be >= 3");
    if (s.kind == ShapeKind::RwLoop && s.n_max < 1)
        throw invalid_spec_error("rw_loop: n_max must be >= 1");
}

Curve unit_stick(double angle) {
    // endpoints u and -u, |u| = 1/2, re-anchored so the leftmost point sits
    // at the origin
    Point u{std::cos(angle) / 2, std::sin(angle) / 2};
    Curve c = Stick{u, {-u.x, -u.y}};
    Point a = anchor(c);
    return place(c, {-a.x, -a.y}, 1.0);
}

}  // namespace

Curve normalize_unit(const Curve& c) {
    double d = diameter(c);
    if (!(d > 0)) throw invalid_curve_error("normalize_unit: zero diameter");
    Curve scaled = place(c, {0, 0}, 1.0 / d);
    Point a = anchor(scaled);
    return place(scaled, {-a.x, -a.y}, 1.0);
}

Curve sample_shape(const ShapeMeasure& shape, CounterRng& rng) {
    check_shape(shape);
    switch (shape.kind) {
        case ShapeKind::Circle:
            return Circle{{0.5, 0.0}, 1.0};
        case ShapeKind::Stick:
            return unit_stick(rng.uniform(0.0, 2 * M_PI));
        case ShapeKind::DiscreteStick: {
            uint64_t k = rng.below(static_cast<uint64_t>(shape.n));
            return unit_stick(2 * M_PI * static_cast<double>(k) / shape.n);
        }
        case ShapeKind::RwLoop: {
            // half-length n weighted by the per-site loop mass
            double total = rw_loop_total_mass(shape.n_max);
            double u = rng.uniform() * total;
            int n = shape.n_max;
            double acc = 0;
            for (int k = 1; k <= shape.n_max; ++k) {
                acc += rw_loop_site_mass(k);
                if (u < acc) {
                    n = k;
                    break;
                }
            }
            return normalize_unit(Curve{sample_rw_loop(n, 1.0, rng)});
        }
    }
    throw invalid_spec_error("sample_shape: unknown kind");
}

Soup sample_soup(const SoupSpec& spec, uint64_t seed) {
    CounterRng rng(seed);
    Soup s = sample_soup(spec, rng);
    s.seed = seed;
    return s;
}

Soup sample_soup(const SoupSpec& spec, CounterRng& rng) {
    if (!(spec.c > 0)) throw invalid_spec_error("soup: c must be > 0");
    if (!(spec.eps_min > 0)) throw invalid_spec_error("soup: eps_min must be > 0");
    if (!(spec.rho_max >= spec.eps_min))
        throw invalid_spec_error("soup: rho_max must be >= eps_min");
    check_shape(spec.shape);

    BBox box = domain_bbox(spec.domain);
    double inv2_lo = 1.0 / (spec.eps_min * spec.eps_min);
    double inv2_hi = 1.0 / (spec.rho_max * spec.rho_max);
    double lambda = spec.c * spec.shape.mass * box.width() * box.height() *
                    (inv2_lo - inv2_hi) / 2.0;

    Soup s;
    s.spec = spec;
    uint64_t n = rng.poisson(lambda);
    uint64_t kept = 0;
    struct Tagged {
        Curve curve;
        double diam;
        uint64_t order;
    };
    std::vector<Tagged> tagged;
    for (uint64_t i = 0; i < n; ++i) {
        // anchor uniform over the bbox, diameter by inverse CDF of rho^-3
        Point z{rng.uniform(box.x0, box.x1), rng.uniform(box.y0, box.y1)};
        double u = rng.uniform();
        double rho = 1.0 / std::sqrt(inv2_lo - u * (inv2_lo - inv2_hi));
        Curve shape = sample_shape(spec.shape, rng);
        Curve curve = place(shape, z, rho);
        if (domain_contains_curve(spec.domain, curve)) {
            tagged.push_back({std::move(curve), rho, kept++});
        }
    }
    s.acceptance = n ? static_cast<double>(kept) / static_cast<double>(n) : 1.0;
    std::stable_sort(tagged.begin(), tagged.end(),
                     [](const Tagged& a, const Tagged& b) { return a.diam > b.diam; });
    s.curves.reserve(tagged.size());
    for (Tagged& t : tagged) s.curves.push_back(std::move(t.curve));
    return s;
}

// --- random-walk loops -------------------------------------------------------

double rw_loop_site_mass(int n) {
    if (n < 1) throw invalid_spec_error("rw_loop_site_mass: n must be >= 1");
    // b_n = C(2n,n) 4^-n via b_n = b_{n-1} (2n-1)/(2n); mass = b_n^2 / (2n)
    double b = 1.0;
    for (int k = 1; k <= n; ++k) b *= (2.0 * k - 1.0) / (2.0 * k);
    return b * b / (2.0 * n);
}

double rw_loop_total_mass(int n_max) {
    double total = 0;
    for (int n = 1; n <= n_max; ++n) total += rw_loop_site_mass(n);
    return total;
}

namespace {

// Uniform +-1 bridge of length 2n: shuffled multiset of n up and n down steps.
std::vector<int> sample_bridge(int n, CounterRng& rng) {
    std::vector<int> steps(2 * static_cast<size_t>(n), -1);
    for (int i = 0; i < n; ++i) steps[static_cast<size_t>(i)] = 1;
    for (size_t i = steps.size(); i > 1; --i)
        std::swap(steps[i - 1], steps[rng.below(i)]);
    return steps;
}

}  // namespace

LatticeLoop sample_rw_loop(int n, double mesh, CounterRng& rng) {
    if (n < 1) throw invalid_spec_error("sample_rw_loop: n must be >= 1");
    // 45-degree trick: the two diagonal coordinates of a simple random walk
    // are independent +-1 walks, so two independent bridges give a uniform
    // closed walk of length 2n
    std::vector<int> s = sample_bridge(n, rng);
    std::vector<int> t = sample_bridge(n, rng);
    LatticeLoop loop;
    loop.mesh = mesh;
    loop.steps.reserve(s.size());
    for (size_t k = 0; k < s.size(); ++k) {
        if (s[k] > 0)
            loop.steps.push_back(t[k] > 0 ? 'E' : 'N');
        else
            loop.steps.push_back(t[k] > 0 ? 'S' : 'W');
    }
    return loop;
}

Soup sample_rw_loop_soup(const Domain& window, double c, int n_max, double mesh,
                         uint64_t seed) {
    if (!(c > 0)) throw invalid_spec_error("rw soup: c must be > 0");
    if (n_max < 1) throw invalid_spec_error("rw soup: n_max must be >= 1");
    if (!(mesh > 0)) throw invalid_spec_error("rw soup: mesh must be > 0");

    std::vector<double> site_mass(static_cast<size_t>(n_max) + 1, 0.0);
    std::vector<double> cum(static_cast<size_t>(n_max) + 1, 0.0);
    for (int n = 1; n <= n_max; ++n) {
        site_mass[static_cast<size_t>(n)] = rw_loop_site_mass(n);
        cum[static_cast<size_t>(n)] = cum[static_cast<size_t>(n) - 1] +
                                      site_mass[static_cast<size_t>(n)];
    }
    double total = cum[static_cast<size_t>(n_max)];

    BBox wb = domain_bbox(window);
    long long i0 = static_cast<long long>(std::ceil(wb.x0 / mesh));
    long long i1 = static_cast<long long>(std::floor(wb.x1 / mesh));
    long long j0 = static_cast<long long>(std::ceil(wb.y0 / mesh));
    long long j1 = static_cast<long long>(std::floor(wb.y1 / mesh));

    Soup s;
    // loops rooted inside the window may stick out by up to n_max steps
    BBox padded = wb;
    padded.inflate(n_max * mesh);
    s.spec.c = c;
    s.spec.shape = ShapeMeasure{ShapeKind::RwLoop, 1.0, 3, n_max};
    s.spec.domain = Rect{padded.x0, padded.y0, padded.x1, padded.y1};
    s.spec.eps_min = mesh;
    s.spec.rho_max = 2.0 * n_max * mesh;
    s.seed = seed;

    struct Tagged {
        Curve curve;
        double diam;
    };
    std::vector<Tagged> tagged;
    uint64_t site = 0;
    for (long long j = j0; j <= j1; ++j) {
        for (long long i = i0; i <= i1; ++i, ++site) {
            if (!domain_contains(window, {i * mesh, j * mesh})) continue;
            CounterRng rng(seed, 1, site);
            uint64_t k = rng.poisson(c * total);
            for (uint64_t loop_i = 0; loop_i < k; ++loop_i) {
                double u = rng.uniform() * total;
                int n = static_cast<int>(
                    std::upper_bound(cum.begin() + 1, cum.end(), u) - cum.begin());
                n = std::min(n, n_max);
                LatticeLoop loop = sample_rw_loop(n, mesh, rng);
                loop.ox = i;
                loop.oy = j;
                Curve cv{loop};
                tagged.push_back({cv, diameter(cv)});
            }
        }
    }
    std::stable_sort(tagged.begin(), tagged.end(),
                     [](const Tagged& a, const Tagged& b) { return a.diam > b.diam; });
    s.curves.reserve(tagged.size());
    for (Tagged& t : tagged) s.curves.push_back(std::move(t.curve));
    return s;
}

// --- diagnostics -------------------------------------------------------------

namespace {

// int_0^{1/R} dr/r * area(r-neighbourhood), Simpson in r = u/R with the
// integrand g(u) = area(u/R)/u (finite at u -> 0 for rectifiable shapes)
double quad_mu(const ShapeMeasure& shape, double R, double pitch) {
    auto mean_area = [&](double r) -> double {
        if (shape.kind == ShapeKind::Circle)
            return neighborhood_area(Circle{{0.5, 0}, 1.0}, r, pitch);
        if (shape.kind == ShapeKind::Stick || shape.kind == ShapeKind::DiscreteStick)
            return neighborhood_area(Stick{{0, 0}, {1, 0}}, r, pitch);
        // sampled shapes: average over a fixed panel of draws
        static constexpr int kPanel = 8;
        CounterRng rng(0x5eedu, 7, 0);
        double acc = 0;
        for (int i = 0; i < kPanel; ++i) {
            Curve c = sample_shape(shape, rng);
            acc += neighborhood_area(c, r, std::max(pitch, r / 4));
        }
        return acc / kPanel;
    };
    // g(u) -> 2*length/R as u -> 0; sampled shapes clamp u to keep the raster
    // evaluation affordable (g is nearly constant below the clamp)
    double u_floor = (shape.kind == ShapeKind::RwLoop) ? 0.0625 : 1e-7;
    auto g = [&](double u) -> double {
        u = std::max(u, u_floor);
        return mean_area(u / R) / u;
    };
    int panels = (shape.kind == ShapeKind::RwLoop) ? 4 : 64;
    double h = 1.0 / (2 * panels);
    double acc = g(0.0) + g(1.0);
    for (int k = 1; k < 2 * panels; ++k) acc += (k % 2 ? 4.0 : 2.0) * g(k * h);
    return shape.mass * acc * h / 3.0;
}

}  // namespace

MuLR mu_L_R(const ShapeMeasure& shape, double R, double pitch) {
    check_shape(shape);
    if (!(R > 0)) throw invalid_spec_error("mu_L_R: R must be > 0");
    MuLR out;
    switch (shape.kind) {
        case ShapeKind::Circle:
            out.value = 2 * M_PI * shape.mass / R;
            return out;
        case ShapeKind::Stick:
        case ShapeKind::DiscreteStick:
            // unit sticks: capsule area 2r + pi r^2
            out.value = shape.mass * (2.0 / R + M_PI / (2 * R * R));
            return out;
        default:
            out.value = quad_mu(shape, R, pitch);
            return out;
    }
}

MuLR mu_L_R_numeric(const ShapeMeasure& shape, double R, double pitch) {
    check_shape(shape);
    if (!(R > 0)) throw invalid_spec_error("mu_L_R_numeric: R must be > 0");
    MuLR out;
    out.value = quad_mu(shape, R, pitch);
    return out;
}

BetaEstimate beta(const ShapeMeasure& shape, uint64_t replicas, double pitch,
                  uint64_t seed) {
    check_shape(shape);
    BetaEstimate est;
    switch (shape.kind) {
        case ShapeKind::Circle:
            est.mean = shape.mass * M_PI / 4;
            return est;
        case ShapeKind::Stick:
        case ShapeKind::DiscreteStick:
            est.mean = 0.0;
            return est;
        default: {
            CounterRng rng(seed, 11, 0);
            double sum = 0, sum2 = 0;
            for (uint64_t i = 0; i < replicas; ++i) {
                Curve c = sample_shape(shape, rng);
                double a = filled_area(c, pitch);
                sum += a;
                sum2 += a * a;
            }
            double n = static_cast<double>(replicas);
            double mean = sum / n;
            double var = n > 1 ? (sum2 - n * mean * mean) / (n - 1) : 0.0;
            est.mean = shape.mass * mean;
            est.half_width = shape.mass * 1.959964 * std::sqrt(std::max(0.0, var) / n);
            est.n = replicas;
            return est;
        }
    }
}

RwAreaReport rw_area_check(int n, uint64_t replicas, uint64_t seed) {
    if (n < 1) throw invalid_spec_error("rw_area_check: n must be >= 1");
    RwAreaReport rep;
    rep.n = n;
    rep.replicas = replicas;
    rep.expected = M_PI / 5.0 * n;
    CounterRng rng(seed, 13, 0);
    double sum = 0, sum2 = 0;
    for (uint64_t i = 0; i < replicas; ++i) {
        LatticeLoop loop = sample_rw_loop(n, 1.0, rng);
        detail::LatticeFill fill(loop);
        // midpoint convention: cells straddled by the walk count half
        double a = static_cast<double>(fill.bounded_cells()) +
                   0.5 * static_cast<double>(fill.straddling_cells());
        sum += a;
        sum2 += a * a;
    }
    double nn = static_cast<double>(replicas);
    rep.mean_area = sum / nn;
    double var = nn > 1 ? (sum2 - nn * rep.mean_area * rep.mean_area) / (nn - 1) : 0.0;
    rep.ratio = rep.mean_area / rep.expected;
    rep.ratio_half_width =
        1.959964 * std::sqrt(std::max(0.0, var) / nn) / rep.expected;
    return rep;
}

}  // namespace soupfall
