#include "soupfall/raster.hpp"

#include "lattice_fill.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <stdexcept>

namespace soupfall {

size_t Raster::count_occupied() const {
    size_t k = 0;
    for (uint8_t v : occ) k += (v != 0);
    return k;
}

Raster make_raster(const BBox& box, double pitch, int margin_cells) {
    if (!(pitch > 0)) throw std::invalid_argument("make_raster: pitch must be > 0");
    int nx = std::max(1, static_cast<int>(std::ceil(box.width() / pitch)));
    int ny = std::max(1, static_cast<int>(std::ceil(box.height() / pitch)));
    nx += 2 * margin_cells;
    ny += 2 * margin_cells;
    Point origin{box.x0 - margin_cells * pitch, box.y0 - margin_cells * pitch};
    return Raster(origin, pitch, nx, ny);
}

namespace {

// Index ranges of cells whose centers fall in [lo, hi).
std::pair<int, int> center_range(double o, double pitch, int n, double lo, double hi) {
    int i0 = static_cast<int>(std::ceil((lo - o) / pitch - 0.5));
    int i1 = static_cast<int>(std::floor((hi - o) / pitch - 0.5));
    return {std::max(i0, 0), std::min(i1, n - 1)};
}

void mark_one_interior(Raster& r, const Curve& c) {
    if (std::holds_alternative<Stick>(c)) return;
    if (const auto* ci = std::get_if<Circle>(&c)) {
        double rad = ci->diam / 2;
        auto [j0, j1] = center_range(r.origin.y, r.pitch, r.ny,
                                     ci->center.y - rad, ci->center.y + rad);
        for (int j = j0; j <= j1; ++j) {
            double dy = r.origin.y + (j + 0.5) * r.pitch - ci->center.y;
            double h2 = rad * rad - dy * dy;
            if (h2 <= 0) continue;
            double hw = std::sqrt(h2);
            auto [i0, i1] = center_range(r.origin.x, r.pitch, r.nx,
                                         ci->center.x - hw, ci->center.x + hw);
            for (int i = i0; i <= i1; ++i) r.set(i, j);
        }
        return;
    }
    BBox b = curve_bbox(c);
    auto [i0, i1] = center_range(r.origin.x, r.pitch, r.nx, b.x0, b.x1);
    auto [j0, j1] = center_range(r.origin.y, r.pitch, r.ny, b.y0, b.y1);
    if (const auto* ll = std::get_if<LatticeLoop>(&c)) {
        detail::LatticeFill fill(*ll);
        for (int j = j0; j <= j1; ++j)
            for (int i = i0; i <= i1; ++i)
                if (!r.get(i, j) &&
                    detail::lattice_interior_contains(*ll, r.cell_center(i, j), fill))
                    r.set(i, j);
        return;
    }
    for (int j = j0; j <= j1; ++j)
        for (int i = i0; i <= i1; ++i)
            if (!r.get(i, j) && interior_contains(c, r.cell_center(i, j)))
                r.set(i, j);
}

void mark_cell_at(Raster& r, Point p) {
    int i = static_cast<int>(std::floor((p.x - r.origin.x) / r.pitch));
    int j = static_cast<int>(std::floor((p.y - r.origin.y) / r.pitch));
    if (i >= 0 && j >= 0 && i < r.nx && j < r.ny) r.set(i, j);
}

void mark_segment(Raster& r, Point a, Point b) {
    double len = dist(a, b);
    int steps = std::max(1, static_cast<int>(std::ceil(len / (r.pitch / 4))));
    for (int k = 0; k <= steps; ++k) {
        double t = static_cast<double>(k) / steps;
        mark_cell_at(r, {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
}

}  // namespace

void mark_interiors(Raster& r, std::span<const Curve> curves) {
    for (const Curve& c : curves) mark_one_interior(r, c);
}

void mark_boundaries(Raster& r, std::span<const Curve> curves) {
    for (const Curve& c : curves) {
        if (const auto* ci = std::get_if<Circle>(&c)) {
            double rad = ci->diam / 2;
            int steps = std::max(8, static_cast<int>(
                                        std::ceil(2 * M_PI * rad / (r.pitch / 4))));
            for (int k = 0; k < steps; ++k) {
                double th = 2 * M_PI * k / steps;
                mark_cell_at(r, {ci->center.x + rad * std::cos(th),
                                 ci->center.y + rad * std::sin(th)});
            }
            continue;
        }
        std::vector<Point> pts = trace_vertices(c);
        bool closed = !std::holds_alternative<Stick>(c);
        size_t n = pts.size();
        for (size_t i = 0; i + (closed ? 0 : 1) < n; ++i)
            mark_segment(r, pts[i], pts[(i + 1) % n]);
    }
}

namespace {

std::vector<uint8_t> flood(const Raster& blocked, std::deque<size_t> q,
                           std::vector<uint8_t> reached) {
    int nx = blocked.nx, ny = blocked.ny;
    while (!q.empty()) {
        size_t id = q.front();
        q.pop_front();
        int i = static_cast<int>(id % nx);
        int j = static_cast<int>(id / nx);
        auto push = [&](int ii, int jj) {
            if (ii < 0 || jj < 0 || ii >= nx || jj >= ny) return;
            size_t nid = blocked.idx(ii, jj);
            if (reached[nid] || blocked.occ[nid]) return;
            reached[nid] = 1;
            q.push_back(nid);
        };
        push(i + 1, j);
        push(i - 1, j);
        push(i, j + 1);
        push(i, j - 1);
    }
    return reached;
}

}  // namespace

std::vector<uint8_t> flood_exterior(const Raster& blocked) {
    std::vector<uint8_t> reached(blocked.occ.size(), 0);
    std::deque<size_t> q;
    auto seed = [&](int i, int j) {
        size_t id = blocked.idx(i, j);
        if (!reached[id] && !blocked.occ[id]) {
            reached[id] = 1;
            q.push_back(id);
        }
    };
    for (int i = 0; i < blocked.nx; ++i) {
        seed(i, 0);
        seed(i, blocked.ny - 1);
    }
    for (int j = 0; j < blocked.ny; ++j) {
        seed(0, j);
        seed(blocked.nx - 1, j);
    }
    return flood(blocked, std::move(q), std::move(reached));
}

std::vector<uint8_t> flood_from(const Raster& blocked,
                                const std::vector<size_t>& seeds) {
    std::vector<uint8_t> reached(blocked.occ.size(), 0);
    std::deque<size_t> q;
    for (size_t id : seeds) {
        if (id < blocked.occ.size() && !blocked.occ[id] && !reached[id]) {
            reached[id] = 1;
            q.push_back(id);
        }
    }
    return flood(blocked, std::move(q), std::move(reached));
}

std::vector<size_t> cells_on_circle(const Raster& r, Point center, double radius) {
    std::vector<size_t> out;
    int i0 = std::max(0, static_cast<int>(
                             std::floor((center.x - radius - r.origin.x) / r.pitch)));
    int i1 = std::min(r.nx - 1, static_cast<int>(std::floor(
                                    (center.x + radius - r.origin.x) / r.pitch)));
    int j0 = std::max(0, static_cast<int>(
                             std::floor((center.y - radius - r.origin.y) / r.pitch)));
    int j1 = std::min(r.ny - 1, static_cast<int>(std::floor(
                                    (center.y + radius - r.origin.y) / r.pitch)));
    for (int j = j0; j <= j1; ++j) {
        for (int i = i0; i <= i1; ++i) {
            double x0 = r.origin.x + i * r.pitch, x1 = x0 + r.pitch;
            double y0 = r.origin.y + j * r.pitch, y1 = y0 + r.pitch;
            // nearest / farthest point of the closed square to the center
            double nx = std::clamp(center.x, x0, x1);
            double ny = std::clamp(center.y, y0, y1);
            double dmin = dist(center, {nx, ny});
            double fx = (center.x - x0 > x1 - center.x) ? x0 : x1;
            double fy = (center.y - y0 > y1 - center.y) ? y0 : y1;
            double dmax = dist(center, {fx, fy});
            if (dmin <= radius && radius <= dmax) out.push_back(r.idx(i, j));
        }
    }
    return out;
}

double filled_area(std::span<const Curve> curves, double pitch) {
    if (curves.empty()) return 0.0;
    BBox box = curve_bbox(curves[0]);
    for (const Curve& c : curves.subspan(1)) box.expand(curve_bbox(c));
    Raster r = make_raster(box, pitch, 2);
    mark_boundaries(r, curves);
    std::vector<uint8_t> ext = flood_exterior(r);
    size_t outside = 0;
    for (uint8_t v : ext) outside += (v != 0);
    return static_cast<double>(r.occ.size() - outside) * pitch * pitch;
}

double filled_area(const Curve& curve, double pitch) {
    return filled_area(std::span<const Curve>(&curve, 1), pitch);
}

double lattice_filled_area(const LatticeLoop& loop) {
    detail::LatticeFill fill(loop);
    return static_cast<double>(fill.bounded_cells()) * loop.mesh * loop.mesh;
}

double neighborhood_area(const Curve& c, double r, double pitch) {
    if (!(r >= 0)) throw std::invalid_argument("neighborhood_area: r must be >= 0");
    if (const auto* ci = std::get_if<Circle>(&c)) {
        double R = ci->diam / 2;
        // annulus when r < R, filled disk once the hole closes
        return r < R ? 4 * M_PI * R * r : M_PI * (R + r) * (R + r);
    }
    if (const auto* s = std::get_if<Stick>(&c)) {
        double L = dist(s->a, s->b);
        return 2 * r * L + M_PI * r * r;
    }
    BBox box = curve_bbox(c);
    box.inflate(r);
    Raster grid = make_raster(box, pitch, 2);
    size_t hits = 0;
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i)
            if (distance_to_curve(c, grid.cell_center(i, j)) <= r) ++hits;
    return static_cast<double>(hits) * pitch * pitch;
}

Raster rasterize_interiors(std::span<const Curve> curves, const Domain& window,
                           double pitch) {
    Raster r = make_raster(domain_bbox(window), pitch, 0);
    mark_interiors(r, curves);
    return r;
}

void write_pgm(const Raster& r, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_pgm: cannot open " + path);
    out << "P5\n" << r.nx << " " << r.ny << "\n255\n";
    // top row first
    std::vector<char> row(static_cast<size_t>(r.nx));
    for (int j = r.ny - 1; j >= 0; --j) {
        for (int i = 0; i < r.nx; ++i)
            row[static_cast<size_t>(i)] = r.get(i, j) ? static_cast<char>(255) : 0;
        out.write(row.data(), r.nx);
    }
    if (!out) throw std::runtime_error("write_pgm: write failed for " + path);
}

size_t box_count(const Raster& r, int factor) {
    if (factor < 1) throw std::invalid_argument("box_count: factor must be >= 1");
    int bx = (r.nx + factor - 1) / factor;
    int by = (r.ny + factor - 1) / factor;
    std::vector<uint8_t> hit(static_cast<size_t>(bx) * by, 0);
    for (int j = 0; j < r.ny; ++j)
        for (int i = 0; i < r.nx; ++i)
            if (r.get(i, j)) hit[static_cast<size_t>(j / factor) * bx + i / factor] = 1;
    size_t k = 0;
    for (uint8_t v : hit) k += v;
    return k;
}

}  // namespace soupfall
