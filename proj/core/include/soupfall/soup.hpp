#pragma once

// Shape measures pi (unit-diameter curves anchored at the origin) and the
// Poisson sampler for the scale/translation-invariant intensity
// c * d^2z (x) drho/rho^3 (x) pi, plus thinness diagnostics and beta.

#include <cstdint>
#include <vector>

#include "soupfall/geom.hpp"
#include "soupfall/rng.hpp"

namespace soupfall {

enum class ShapeKind { Circle, Stick, DiscreteStick, RwLoop };

struct ShapeMeasure {
    ShapeKind kind = ShapeKind::Circle;
    double mass = 1.0;     // total mass |pi|
    int n = 3;             // discrete_stick vertex count (>= 3)
    int n_max = 100;       // rw_loop max half-length
};

struct SoupSpec {
    double c = 1.0;        // intensity multiplier, > 0
    ShapeMeasure shape;
    Domain domain;
    double eps_min = 0.01; // lower diameter cutoff, > 0
    double rho_max = 1.0;  // upper diameter cutoff
};

struct invalid_spec_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Soup {
    SoupSpec spec;
    std::vector<Curve> curves;  // sorted by decreasing diameter, ties by sample index
    uint64_t seed = 0;
    double acceptance = 1.0;    // kept / candidate fraction of the rejection step
};

// One normalized curve (diameter 1, anchor at origin) drawn from pi.
Curve sample_shape(const ShapeMeasure& shape, CounterRng& rng);

// Poisson realization of c * mu restricted to
// {gamma in domain, eps_min <= |gamma| <= rho_max}.
Soup sample_soup(const SoupSpec& spec, uint64_t seed);
Soup sample_soup(const SoupSpec& spec, CounterRng& rng);

// Scale normalizing a curve to diameter 1 with anchor at the origin.
Curve normalize_unit(const Curve& c);

// --- random-walk loops ------------------------------------------------------

// Per-site mass of loops of half-length n: C(2n,n)^2 4^{-2n} / (2n).
double rw_loop_site_mass(int n);
// Partial sum of the above over n in [1, n_max].
double rw_loop_total_mass(int n_max);

// Uniform closed lattice walk of length 2n at the origin (two independent
// one-dimensional bridges rotated by 45 degrees).
LatticeLoop sample_rw_loop(int n, double mesh, CounterRng& rng);

// Random-walk loop soup: for each lattice site in the window and each
// n in [1, n_max], a Poisson number of uniform closed walks of length 2n
// with mean c * rw_loop_site_mass(n).
Soup sample_rw_loop_soup(const Domain& window, double c, int n_max, double mesh,
                         uint64_t seed);

// --- diagnostics ------------------------------------------------------------

struct MuLR {
    double value = 0.0;
    bool finite = true;  // false => integral diverges, soup not thin
};

// mu(L_R): mass of curves meeting the unit disk with diameter >= R,
// evaluated as int_0^{1/R} dr/r * pi(area of r-neighbourhood).
// Closed form for circle/stick shapes, numeric quadrature otherwise.
MuLR mu_L_R(const ShapeMeasure& shape, double R, double pitch);
// Forced numeric path (quadrature over neighborhood_area), used as the
// cross-check against the closed forms.
MuLR mu_L_R_numeric(const ShapeMeasure& shape, double R, double pitch);

struct BetaEstimate {
    double mean = 0.0;        // area
    double half_width = 0.0;  // 95% CI half-width
    uint64_t n = 1;           // replica count
};

// beta(pi) = pi(A(gamma)); analytic for circle (m*pi/4) and sticks (0),
// Monte Carlo over sample_shape draws otherwise.
BetaEstimate beta(const ShapeMeasure& shape, uint64_t replicas, double pitch,
                  uint64_t seed);

// --- random-walk loop area check ---------------------------------------------

struct RwAreaReport {
    int n = 0;
    uint64_t replicas = 0;
    double mean_area = 0.0;      // exact lattice filled area, mesh 1
    double expected = 0.0;       // (pi/5) * n
    double ratio = 0.0;
    double ratio_half_width = 0.0;
};

RwAreaReport rw_area_check(int n, uint64_t replicas, uint64_t seed);

}  // namespace soupfall
