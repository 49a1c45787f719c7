#pragma once

// Planar curve primitives for random-soup simulations: circles, sticks,
// polygon loops and lattice loops, with the metric and topological
// predicates (diameter, anchor, interior membership, crossing) that the
// soup/cluster/carpet layers are built on.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace soupfall {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
double dist(Point a, Point b);
double norm(Point p);

struct BBox {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    void expand(Point p);
    void expand(const BBox& other);
    void inflate(double r);
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    bool contains(Point p) const {
        return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
    }
    bool intersects(const BBox& o) const {
        return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1;
    }
};

struct Circle {
    Point center;
    double diam = 1.0;  // > 0
};

struct Stick {
    Point a, b;  // distinct endpoints, empty interior
};

// Implicitly closed polygon loop; vertices may repeat for loops obtained
// from retracing lattice walks.
struct PolyLoop {
    std::vector<Point> v;  // >= 3 entries
};

// Closed nearest-neighbour walk on mesh * Z^2, stored as unit moves.
struct LatticeLoop {
    long long ox = 0, oy = 0;   // lattice origin
    std::string steps;          // characters in "ENWS", summing to zero
    double mesh = 1.0;          // > 0
};

using Curve = std::variant<Circle, Stick, PolyLoop, LatticeLoop>;

struct invalid_curve_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Throws invalid_curve_error if the variant payload violates its invariants
// (zero-length stick, non-closed lattice walk, non-positive mesh/diam, ...).
void validate(const Curve& c);

// Polyline trace of the curve: vertices for sticks/loops, unused for circles.
std::vector<Point> trace_vertices(const Curve& c);

double diameter(const Curve& c);

// Z(curve): leftmost point, ties broken by smallest y.
Point anchor(const Curve& c);

// gamma'' = z + rho * gamma.  LatticeLoop inputs are converted to PolyLoop
// unless the transform is the identity.  Throws std::invalid_argument on
// rho <= 0.
Curve place(const Curve& c, Point z, double rho);

// True iff p lies in the filling of the curve (union of bounded complement
// components), strictly off the curve.  Sticks have empty interior.
bool interior_contains(const Curve& c, Point p);

// Euclidean distance from p to the curve trace.
double distance_to_curve(const Curve& c, Point p);

BBox curve_bbox(const Curve& c);

// Two-sided crossing relation: each curve meets the interior of the other;
// stick/stick degrades to segment intersection, stick/loop to the stick
// meeting the loop interior.
bool curves_cross(const Curve& a, const Curve& b);

// --- low-level predicates shared with tests -------------------------------

double dist_point_segment(Point p, Point a, Point b);
bool segments_intersect(Point a, Point b, Point c, Point d);

// --- domains ---------------------------------------------------------------

struct UnitDisk {};
struct Disk {
    Point center;
    double radius = 1.0;
};
struct Rect {
    double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
};
struct Annulus {
    Point center;
    double r_in = 0.1, r_out = 1.0;
};

using Domain = std::variant<UnitDisk, Disk, Rect, Annulus>;

BBox domain_bbox(const Domain& d);
double domain_diameter(const Domain& d);
bool domain_contains(const Domain& d, Point p);
bool domain_contains_curve(const Domain& d, const Curve& c);

}  // namespace soupfall
