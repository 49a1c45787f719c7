#pragma once

// Approximate-carpet membership C_eps, the annulus-crossing event A_eps,
// the remaining set F_eps, and two-point indicators.

#include <cstdint>
#include <vector>

#include "soupfall/raster.hpp"
#include "soupfall/soup.hpp"

namespace soupfall {

struct CarpetQuery {
    Point x;
    double eps = 0.1;    // > 0
    double pitch = 0.01; // <= eps/4
};

struct resolution_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// True iff x can be connected to the domain boundary by a raster path that
// avoids the interiors of all soup curves staying clear of B(x, eps).
bool is_in_C_eps(const CarpetQuery& q, const Soup& soup);

std::pair<bool, bool> two_point_C_eps(Point x, Point y, const Soup& soup,
                                      double eps, double pitch);

struct CrossingTrial {
    double eps = 0.0;
    bool success = false;
    uint64_t curves_total = 0;  // soup curves in the unit disk
    uint64_t curves_kept = 0;   // contained in the open annulus {eps<|z|<1}
    uint64_t seed = 0;
};

// One crossing trial on a fixed curve collection: keep curves contained in
// the open annulus {eps < |z| < 1}, rasterize their interiors, flood from the
// cells on |z| = eps and report whether a cell on |z| = 1 is reached.
CrossingTrial annulus_crossing_trial(std::span<const Curve> curves, double eps,
                                     double pitch, uint64_t seed = 0);

// A_eps for a fresh circle-of-intensity-c soup in the unit disk: does a free
// path connect the circle |z| = eps to the unit circle, avoiding interiors
// of curves contained in the open annulus?
CrossingTrial event_A_eps(double c, const ShapeMeasure& shape, double eps,
                          double pitch, double eps_min, uint64_t seed);

// One soup realization evaluated at several eps on a shared raster pitch;
// successes are exactly monotone (non-decreasing in eps).
std::vector<CrossingTrial> event_A_eps_coupled(double c,
                                               const ShapeMeasure& shape,
                                               const std::vector<double>& eps_list,
                                               double pitch, double eps_min,
                                               uint64_t seed);

// Raster of F_eps: window minus the interiors of soup curves with diameter
// greater than eps_cut.  Occupied = remaining.
Raster remaining_raster(const Soup& soup, double eps_cut, const Domain& window,
                        double pitch);

}  // namespace soupfall
