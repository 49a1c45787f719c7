#pragma once

// Internal: unit-cell decomposition of the complement of a lattice walk.
// Cells are addressed by their lower-left lattice corner; an inflated 1-cell
// rim guarantees the unbounded component touches the grid border.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <utility>
#include <vector>

#include "soupfall/geom.hpp"

namespace soupfall::detail {

struct LatticeFill {
    long long cx0 = 0, cy0 = 0;  // corner of cell grid
    int ncx = 0, ncy = 0;
    std::vector<uint8_t> hedge;  // (ncx) x (ncy+1), hedge(x,y): (x,y)-(x+1,y)
    std::vector<uint8_t> vedge;  // (ncx+1) x (ncy), vedge(x,y): (x,y)-(x,y+1)
    std::vector<uint8_t> outside;

    size_t cell(int i, int j) const { return static_cast<size_t>(j) * ncx + i; }
    uint8_t& h(int i, int j) { return hedge[static_cast<size_t>(j) * ncx + i]; }
    uint8_t& ve(int i, int j) { return vedge[static_cast<size_t>(j) * (ncx + 1) + i]; }
    uint8_t hc(int i, int j) const { return hedge[static_cast<size_t>(j) * ncx + i]; }
    uint8_t vc(int i, int j) const { return vedge[static_cast<size_t>(j) * (ncx + 1) + i]; }

    explicit LatticeFill(const LatticeLoop& loop) {
        long long x = loop.ox, y = loop.oy;
        long long minx = x, maxx = x, miny = y, maxy = y;
        {
            long long px = x, py = y;
            for (char ch : loop.steps) {
                px += (ch == 'E') - (ch == 'W');
                py += (ch == 'N') - (ch == 'S');
                minx = std::min(minx, px);
                maxx = std::max(maxx, px);
                miny = std::min(miny, py);
                maxy = std::max(maxy, py);
            }
        }
        cx0 = minx - 1;
        cy0 = miny - 1;
        ncx = static_cast<int>(maxx - minx) + 2;
        ncy = static_cast<int>(maxy - miny) + 2;
        hedge.assign(static_cast<size_t>(ncx) * (ncy + 1), 0);
        vedge.assign(static_cast<size_t>(ncx + 1) * ncy, 0);
        for (char ch : loop.steps) {
            int ix = static_cast<int>(x - cx0);
            int iy = static_cast<int>(y - cy0);
            switch (ch) {
                case 'E': h(ix, iy) = 1; ++x; break;
                case 'W': h(ix - 1, iy) = 1; --x; break;
                case 'N': ve(ix, iy) = 1; ++y; break;
                case 'S': ve(ix, iy - 1) = 1; --y; break;
            }
        }
        // flood the unbounded component from the rim
        outside.assign(static_cast<size_t>(ncx) * ncy, 0);
        std::deque<std::pair<int, int>> q;
        auto push = [&](int i, int j) {
            if (i < 0 || j < 0 || i >= ncx || j >= ncy) return;
            size_t id = cell(i, j);
            if (outside[id]) return;
            outside[id] = 1;
            q.emplace_back(i, j);
        };
        for (int i = 0; i < ncx; ++i) {
            push(i, 0);
            push(i, ncy - 1);
        }
        for (int j = 0; j < ncy; ++j) {
            push(0, j);
            push(ncx - 1, j);
        }
        while (!q.empty()) {
            auto [i, j] = q.front();
            q.pop_front();
            if (i + 1 < ncx && !vc(i + 1, j)) push(i + 1, j);
            if (i > 0 && !vc(i, j)) push(i - 1, j);
            if (j + 1 < ncy && !hc(i, j + 1)) push(i, j + 1);
            if (j > 0 && !hc(i, j)) push(i, j - 1);
        }
    }

    size_t bounded_cells() const {
        size_t k = 0;
        for (uint8_t v : outside) k += (v == 0);
        return k;
    }

    // Cells outside the filling that share an edge with the walk; these
    // straddle the boundary and carry half weight in area measurements.
    size_t straddling_cells() const {
        size_t k = 0;
        for (int j = 0; j < ncy; ++j)
            for (int i = 0; i < ncx; ++i)
                if (outside[cell(i, j)] &&
                    (hc(i, j) || hc(i, j + 1) || vc(i, j) || vc(i + 1, j)))
                    ++k;
        return k;
    }

    // (u,v) in lattice units (world / mesh); caller excludes on-curve points.
    bool in_filling(double u, double v) const {
        int i = static_cast<int>(std::floor(u)) - static_cast<int>(cx0);
        int j = static_cast<int>(std::floor(v)) - static_cast<int>(cy0);
        if (i < 0 || j < 0 || i >= ncx || j >= ncy) return false;
        return outside[cell(i, j)] == 0;
    }
};

bool lattice_interior_contains(const LatticeLoop& loop, Point p,
                               const LatticeFill& fill);

}  // namespace soupfall::detail
