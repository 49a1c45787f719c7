#pragma once

// Occupancy rasters: the workhorse behind filled areas, remaining sets and
// annulus-crossing flood fills.  Cell (i,j) is the half-open square
// [origin.x + i*pitch, origin.x + (i+1)*pitch) x [origin.y + j*pitch, ...).

#include <cstdint>
#include <string>
#include <vector>

#include "soupfall/geom.hpp"

namespace soupfall {

struct Raster {
    Point origin;
    double pitch = 1.0;
    int nx = 1, ny = 1;
    std::vector<uint8_t> occ;  // nx*ny, row-major in j

    Raster() = default;
    Raster(Point origin_, double pitch_, int nx_, int ny_)
        : origin(origin_), pitch(pitch_), nx(nx_), ny(ny_),
          occ(static_cast<size_t>(nx_) * ny_, 0) {}

    size_t idx(int i, int j) const { return static_cast<size_t>(j) * nx + i; }
    bool get(int i, int j) const { return occ[idx(i, j)] != 0; }
    void set(int i, int j, bool v = true) { occ[idx(i, j)] = v ? 1 : 0; }
    Point cell_center(int i, int j) const {
        return {origin.x + (i + 0.5) * pitch, origin.y + (j + 0.5) * pitch};
    }
    size_t count_occupied() const;
    double occupied_area() const { return count_occupied() * pitch * pitch; }
};

// Raster covering the bbox (inflated by margin_cells cells on each side).
Raster make_raster(const BBox& box, double pitch, int margin_cells = 2);

// Mark every cell whose center lies inside some curve interior.
void mark_interiors(Raster& r, std::span<const Curve> curves);

// Mark cells traversed by the curve traces (conservative supercover).
void mark_boundaries(Raster& r, std::span<const Curve> curves);

// 4-connected flood over non-occupied cells starting from the raster border;
// returns a mask with 1 = reached (exterior).
std::vector<uint8_t> flood_exterior(const Raster& blocked);

// 4-connected flood over non-occupied cells from the given seeds.
std::vector<uint8_t> flood_from(const Raster& blocked,
                                const std::vector<size_t>& seeds);

// Cells whose closed square intersects the circle |p - center| = radius.
std::vector<size_t> cells_on_circle(const Raster& r, Point center, double radius);

// A(S): rasterized filling area of the union of the curve traces.
double filled_area(std::span<const Curve> curves, double pitch);
double filled_area(const Curve& curve, double pitch);

// Exact filling area of a lattice loop (count of enclosed cells * mesh^2).
double lattice_filled_area(const LatticeLoop& loop);

// Area of the r-neighbourhood of the curve; closed form for circles and
// sticks, raster dilation otherwise.
double neighborhood_area(const Curve& c, double r, double pitch);

// Cell occupied iff its center lies in some curve interior; the raster grid
// covers the bbox of the window domain.
Raster rasterize_interiors(std::span<const Curve> curves, const Domain& window,
                           double pitch);

// Binary PGM (P5), 255 = occupied.
void write_pgm(const Raster& r, const std::string& path);

// Number of occupied boxes when grouping cells into factor x factor blocks.
size_t box_count(const Raster& r, int factor);

}  // namespace soupfall
