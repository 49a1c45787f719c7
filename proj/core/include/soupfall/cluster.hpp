#pragma once

// Crossing graph, loop clusters via union-find, cluster fillings gamma*,
// the sequential cluster exploration, and the beta*(c) estimator.

#include <cstdint>
#include <utility>
#include <vector>

#include "soupfall/soup.hpp"

namespace soupfall {

struct CrossingGraph {
    size_t n = 0;
    std::vector<std::pair<uint32_t, uint32_t>> edges;  // i < j, crossing pairs
};

// Exact edge set, accelerated with a uniform spatial hash over inflated
// bounding boxes (cell size = median diameter).  Result is independent of
// the grid parameters.
CrossingGraph crossing_graph(std::span<const Curve> curves);
// Brute-force all-pairs reference (oracle for small instances).
CrossingGraph crossing_graph_bruteforce(std::span<const Curve> curves);

struct ClusterInfo {
    std::vector<uint32_t> members;  // curve indices
    BBox bbox;
    double diameter = 0.0;          // diameter of the union of member traces
    double filled_area = 0.0;       // filling of the union of members
};

struct ClusterSet {
    std::vector<uint32_t> labels;        // per-curve cluster id
    std::vector<ClusterInfo> clusters;   // ordered by decreasing largest member
};

// Union-find over crossing_graph edges.  fill_cells controls the raster
// resolution used for per-cluster filled areas (pitch = diameter/fill_cells).
ClusterSet clusters(const Soup& soup, int fill_cells = 128);
ClusterSet clusters_from_edges(std::span<const Curve> curves,
                               const CrossingGraph& g, int fill_cells = 128);

// Filling area of cluster `id` re-rasterized at the given pitch.
double cluster_filling(const ClusterSet& cs, std::span<const Curve> curves,
                       size_t id, double pitch);

// Sequential exploration: grow clusters one at a time from independent fresh
// soups (largest remaining seed curve first).  Same law as clusters().
// Throws if more than iteration_cap clusters are discovered.
std::vector<ClusterInfo> explore_clusters_sequential(
    const Domain& domain, double c, const ShapeMeasure& shape, double eps_min,
    uint64_t seed, size_t iteration_cap = 10000);

struct GammaStar {
    Curve seed_curve;
    std::vector<Curve> cluster_members;  // includes the seed curve
    double filled_area = 0.0;
    double diameter = 0.0;
    bool truncated = false;  // cluster bbox touched the sampling window
};

// One draw of gamma*: a unit-diameter pi-curve centered in [-W,W]^2 plus the
// cluster grown around it from a soup with diameter cutoffs [eps_min, 1).
GammaStar sample_gamma_star(double c, const ShapeMeasure& shape, double W,
                            double eps_min, double pitch, uint64_t seed);

// Coupled variant: one soup realization at max(c_list) with uniform time
// marks, thinned to each c.  Enrichment is monotone by construction.
std::vector<GammaStar> sample_gamma_star_coupled(
    const std::vector<double>& c_list, const ShapeMeasure& shape, double W,
    double eps_min, double pitch, uint64_t seed);

struct BetaStarResult {
    BetaEstimate estimate;
    double truncated_fraction = 0.0;
    std::vector<GammaStar> samples;  // non-truncated draws kept for reporting
};

struct window_too_small_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// beta*(c) = mass * mean filling of gamma* over non-truncated draws.
// Throws window_too_small_error when more than 10% of draws are truncated.
BetaStarResult estimate_beta_star(double c, const ShapeMeasure& shape, double W,
                                  double eps_min, double pitch,
                                  uint64_t replicas, uint64_t seed,
                                  unsigned threads = 1);

}  // namespace soupfall
