#include "soupfall/carpet.hpp"

#include <algorithm>
#include <cmath>

namespace soupfall {

namespace {

bool cell_reached(const Raster& r, const std::vector<uint8_t>& reached, Point p) {
    int i = static_cast<int>(std::floor((p.x - r.origin.x) / r.pitch));
    int j = static_cast<int>(std::floor((p.y - r.origin.y) / r.pitch));
    if (i < 0 || j < 0 || i >= r.nx || j >= r.ny) return true;  // outside grid
    return reached[r.idx(i, j)] != 0;
}

}  // namespace

bool is_in_C_eps(const CarpetQuery& q, const Soup& soup) {
    if (!(q.eps > 0) || !(q.pitch > 0) || q.pitch > q.eps / 4 * (1 + 1e-12))
        throw resolution_error("is_in_C_eps: need 0 < pitch <= eps/4");
    // curves touching B(x, eps) are ignored by definition
    std::vector<Curve> kept;
    for (const Curve& c : soup.curves)
        if (distance_to_curve(c, q.x) >= q.eps) kept.push_back(c);
    Raster r = make_raster(domain_bbox(soup.spec.domain), q.pitch, 2);
    mark_interiors(r, kept);
    // all curves live inside the domain, so reaching the raster border is
    // reaching the domain boundary
    std::vector<uint8_t> reached = flood_exterior(r);
    return cell_reached(r, reached, q.x);
}

std::pair<bool, bool> two_point_C_eps(Point x, Point y, const Soup& soup,
                                      double eps, double pitch) {
    return {is_in_C_eps({x, eps, pitch}, soup),
            is_in_C_eps({y, eps, pitch}, soup)};
}

CrossingTrial annulus_crossing_trial(std::span<const Curve> curves, double eps,
                                     double pitch, uint64_t seed) {
    CrossingTrial t;
    t.eps = eps;
    t.seed = seed;
    t.curves_total = curves.size();
    Annulus ring{{0, 0}, eps, 1.0};
    std::vector<Curve> kept;
    for (const Curve& c : curves)
        if (domain_contains_curve(Domain{ring}, c)) kept.push_back(c);
    t.curves_kept = kept.size();

    Raster r = make_raster(BBox{-1, -1, 1, 1}, pitch, 2);
    mark_interiors(r, kept);
    std::vector<size_t> inner = cells_on_circle(r, {0, 0}, eps);
    std::vector<uint8_t> reached = flood_from(r, inner);
    for (size_t id : cells_on_circle(r, {0, 0}, 1.0)) {
        if (reached[id]) {
            t.success = true;
            break;
        }
    }
    return t;
}

CrossingTrial event_A_eps(double c, const ShapeMeasure& shape, double eps,
                          double pitch, double eps_min, uint64_t seed) {
    if (!(eps > 0) || !(eps < 1))
        throw invalid_spec_error("event_A_eps: eps must be in (0,1)");
    SoupSpec spec;
    spec.c = c;
    spec.shape = shape;
    spec.domain = UnitDisk{};
    spec.eps_min = eps_min;
    spec.rho_max = 2.0;
    CounterRng rng(seed, 5, 0);
    Soup soup = sample_soup(spec, rng);
    return annulus_crossing_trial(soup.curves, eps, pitch, seed);
}

std::vector<CrossingTrial> event_A_eps_coupled(double c,
                                               const ShapeMeasure& shape,
                                               const std::vector<double>& eps_list,
                                               double pitch, double eps_min,
                                               uint64_t seed) {
    for (double e : eps_list)
        if (!(e > 0) || !(e < 1))
            throw invalid_spec_error("event_A_eps_coupled: eps must be in (0,1)");
    SoupSpec spec;
    spec.c = c;
    spec.shape = shape;
    spec.domain = UnitDisk{};
    spec.eps_min = eps_min;
    spec.rho_max = 2.0;
    CounterRng rng(seed, 5, 0);
    Soup soup = sample_soup(spec, rng);
    std::vector<CrossingTrial> out;
    out.reserve(eps_list.size());
    for (double e : eps_list) out.push_back(annulus_crossing_trial(soup.curves, e, pitch, seed));
    return out;
}

Raster remaining_raster(const Soup& soup, double eps_cut, const Domain& window,
                        double pitch) {
    std::vector<Curve> big;
    for (const Curve& c : soup.curves)
        if (diameter(c) > eps_cut) big.push_back(c);
    Raster blocked = rasterize_interiors(big, window, pitch);
    Raster out = blocked;
    for (int j = 0; j < out.ny; ++j)
        for (int i = 0; i < out.nx; ++i)
            out.set(i, j, !blocked.get(i, j) &&
                              domain_contains(window, out.cell_center(i, j)));
    return out;
}

}  // namespace soupfall
