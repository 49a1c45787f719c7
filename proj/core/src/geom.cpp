#include "soupfall/geom.hpp"

#include "lattice_fill.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <memory>
#include <unordered_map>

namespace soupfall {

double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }
double norm(Point p) { return std::hypot(p.x, p.y); }

void BBox::expand(Point p) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
}
void BBox::expand(const BBox& o) {
    x0 = std::min(x0, o.x0);
    y0 = std::min(y0, o.y0);
    x1 = std::max(x1, o.x1);
    y1 = std::max(y1, o.y1);
}
void BBox::inflate(double r) {
    x0 -= r;
    y0 -= r;
    x1 += r;
    y1 += r;
}

namespace {

BBox bbox_of_points(const std::vector<Point>& pts) {
    BBox b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
    for (const Point& p : pts) b.expand(p);
    return b;
}

bool steps_sum_zero(const std::string& steps) {
    long long dx = 0, dy = 0;
    for (char ch : steps) {
        switch (ch) {
            case 'E': ++dx; break;
            case 'W': --dx; break;
            case 'N': ++dy; break;
            case 'S': --dy; break;
            default: return false;
        }
    }
    return dx == 0 && dy == 0;
}

}  // namespace

void validate(const Curve& c) {
    std::visit(
        [](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Circle>) {
                if (!(v.diam > 0) || !std::isfinite(v.diam) ||
                    !std::isfinite(v.center.x) || !std::isfinite(v.center.y))
                    throw invalid_curve_error("circle: diam must be finite and > 0");
            } else if constexpr (std::is_same_v<T, Stick>) {
                if (v.a.x == v.b.x && v.a.y == v.b.y)
                    throw invalid_curve_error("stick: endpoints must be distinct");
            } else if constexpr (std::is_same_v<T, PolyLoop>) {
                if (v.v.size() < 3)
                    throw invalid_curve_error("polyloop: needs >= 3 vertices");
            } else {
                if (!(v.mesh > 0))
                    throw invalid_curve_error("lattice: mesh must be > 0");
                if (v.steps.empty() || !steps_sum_zero(v.steps))
                    throw invalid_curve_error("lattice: steps must be a closed walk over ENWS");
            }
        },
        c);
}

std::vector<Point> trace_vertices(const Curve& c) {
    return std::visit(
        [](const auto& v) -> std::vector<Point> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Circle>) {
                return {};
            } else if constexpr (std::is_same_v<T, Stick>) {
                return {v.a, v.b};
            } else if constexpr (std::is_same_v<T, PolyLoop>) {
                return v.v;
            } else {
                std::vector<Point> pts;
                pts.reserve(v.steps.size());
                long long x = v.ox, y = v.oy;
                pts.push_back({x * v.mesh, y * v.mesh});
                for (size_t i = 0; i + 1 < v.steps.size(); ++i) {
                    switch (v.steps[i]) {
                        case 'E': ++x; break;
                        case 'W': --x; break;
                        case 'N': ++y; break;
                        case 'S': --y; break;
                    }
                    pts.push_back({x * v.mesh, y * v.mesh});
                }
                return pts;
            }
        },
        c);
}

namespace {

double cross(Point o, Point a, Point b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew monotone chain.
std::vector<Point> convex_hull(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Point a, Point b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<Point> h(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    size_t lower = k + 1;
    for (size_t i = pts.size() - 1; i-- > 0;) {
        while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

double max_pairwise_distance(const std::vector<Point>& pts) {
    std::vector<Point> h = convex_hull(pts);
    double best = 0.0;
    for (size_t i = 0; i < h.size(); ++i)
        for (size_t j = i + 1; j < h.size(); ++j)
            best = std::max(best, dist(h[i], h[j]));
    return best;
}

bool lex_less(Point a, Point b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
}

}  // namespace

double diameter(const Curve& c) {
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Circle>) {
                return v.diam;
            } else if constexpr (std::is_same_v<T, Stick>) {
                return dist(v.a, v.b);
            } else {
                return max_pairwise_distance(trace_vertices(c));
            }
        },
        c);
}

Point anchor(const Curve& c) {
    return std::visit(
        [&](const auto& v) -> Point {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Circle>) {
                return {v.center.x - v.diam / 2, v.center.y};
            } else {
                std::vector<Point> pts = trace_vertices(c);
                Point best = pts[0];
                for (const Point& p : pts)
                    if (lex_less(p, best)) best = p;
                return best;
            }
        },
        c);
}

Curve place(const Curve& c, Point z, double rho) {
    if (!(rho > 0)) throw std::invalid_argument("place: rho must be > 0");
    if (z.x == 0 && z.y == 0 && rho == 1.0) return c;
    return std::visit(
        [&](const auto& v) -> Curve {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Circle>) {
                return Circle{z + rho * v.center, rho * v.diam};
            } else if constexpr (std::is_same_v<T, Stick>) {
                return Stick{z + rho * v.a, z + rho * v.b};
            } else if constexpr (std::is_same_v<T, PolyLoop>) {
                PolyLoop out;
                out.v.reserve(v.v.size());
                for (Point p : v.v) out.v.push_back(z + rho * p);
                return out;
            } else {
                PolyLoop out;
                std::vector<Point> pts = trace_vertices(c);
                out.v.reserve(std::max<size_t>(pts.size(), 3));
                for (Point p : pts) out.v.push_back(z + rho * p);
                while (out.v.size() < 3) out.v.push_back(out.v.front());
                return out;
            }
        },
        c);
}

double dist_point_segment(Point p, Point a, Point b) {
    double vx = b.x - a.x, vy = b.y - a.y;
    double len2 = vx * vx + vy * vy;
    if (len2 == 0) return dist(p, a);
    double t = ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return dist(p, {a.x + t * vx, a.y + t * vy});
}

namespace {

int sgn(double x) { return (x > 0) - (x < 0); }

bool on_segment_collinear(Point p, Point a, Point b) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(Point a, Point b, Point c, Point d) {
    int d1 = sgn(cross(a, b, c));
    int d2 = sgn(cross(a, b, d));
    int d3 = sgn(cross(c, d, a));
    int d4 = sgn(cross(c, d, b));
    if (d1 != d2 && d3 != d4) return true;
    if (d1 == 0 && on_segment_collinear(c, a, b)) return true;
    if (d2 == 0 && on_segment_collinear(d, a, b)) return true;
    if (d3 == 0 && on_segment_collinear(a, c, d)) return true;
    if (d4 == 0 && on_segment_collinear(b, c, d)) return true;
    return false;
}

// --- lattice loop filling ----------------------------------------------------

namespace detail {

bool lattice_interior_contains(const LatticeLoop& loop, Point p,
                               const LatticeFill& fill) {
    std::vector<Point> pts = trace_vertices(Curve{loop});
    double tol = 1e-9 * loop.mesh;
    for (size_t i = 0; i < pts.size(); ++i) {
        Point a = pts[i], b = pts[(i + 1) % pts.size()];
        if (dist_point_segment(p, a, b) <= tol) return false;
    }
    return fill.in_filling(p.x / loop.mesh, p.y / loop.mesh);
}

}  // namespace detail

namespace {

int winding_number(const std::vector<Point>& v, Point p) {
    int wn = 0;
    size_t n = v.size();
    for (size_t i = 0; i < n; ++i) {
        Point a = v[i], b = v[(i + 1) % n];
        if (a.y <= p.y) {
            if (b.y > p.y && cross(a, b, p) > 0) ++wn;
        } else {
            if (b.y <= p.y && cross(a, b, p) < 0) --wn;
        }
    }
    return wn;
}

bool poly_interior_contains(const std::vector<Point>& v, Point p) {
    size_t n = v.size();
    BBox box = bbox_of_points(v);
    double tol = 1e-12 * std::max(1.0, std::max(box.width(), box.height()));
    for (size_t i = 0; i < n; ++i) {
        if (dist_point_segment(p, v[i], v[(i + 1) % n]) <= tol) return false;
    }
    return winding_number(v, p) != 0;
}

}  // namespace

bool interior_contains(const Curve& c, Point p) {
    return std::visit(
        [&](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Circle>) {
                return dist(p, v.center) < v.diam / 2;
            } else if constexpr (std::is_same_v<T, Stick>) {
                return false;
            } else if constexpr (std::is_same_v<T, PolyLoop>) {
                return poly_interior_contains(v.v, p);
            } else {
                detail::LatticeFill fill(v);
                return detail::lattice_interior_contains(v, p, fill);
            }
        },
        c);
}

double distance_to_curve(const Curve& c, Point p) {
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Circle>) {
                return std::abs(dist(p, v.center) - v.diam / 2);
            } else if constexpr (std::is_same_v<T, Stick>) {
                return dist_point_segment(p, v.a, v.b);
            } else {
                std::vector<Point> pts = trace_vertices(c);
                double best = std::numeric_limits<double>::infinity();
                for (size_t i = 0; i < pts.size(); ++i) {
                    Point a = pts[i];
                    Point b = pts[(i + 1) % pts.size()];
                    best = std::min(best, dist_point_segment(p, a, b));
                }
                return best;
            }
        },
        c);
}

BBox curve_bbox(const Curve& c) {
    if (const auto* ci = std::get_if<Circle>(&c)) {
        double r = ci->diam / 2;
        return {ci->center.x - r, ci->center.y - r, ci->center.x + r, ci->center.y + r};
    }
    return bbox_of_points(trace_vertices(c));
}

// --- crossing ----------------------------------------------------------------

namespace {

std::vector<std::pair<Point, Point>> segments_of(const Curve& c) {
    std::vector<std::pair<Point, Point>> segs;
    if (std::holds_alternative<Circle>(c)) return segs;
    std::vector<Point> pts = trace_vertices(c);
    if (const auto* s = std::get_if<Stick>(&c)) {
        segs.emplace_back(s->a, s->b);
        return segs;
    }
    segs.reserve(pts.size());
    for (size_t i = 0; i < pts.size(); ++i)
        segs.emplace_back(pts[i], pts[(i + 1) % pts.size()]);
    return segs;
}

// Parameters t in [0,1] where segment (a,b) meets the circle.
void seg_circle_params(Point a, Point b, Point cc, double r, std::vector<double>& out) {
    double dx = b.x - a.x, dy = b.y - a.y;
    double fx = a.x - cc.x, fy = a.y - cc.y;
    double A = dx * dx + dy * dy;
    double B = 2 * (fx * dx + fy * dy);
    double C = fx * fx + fy * fy - r * r;
    double disc = B * B - 4 * A * C;
    if (disc < 0 || A == 0) return;
    double sd = std::sqrt(disc);
    for (double t : {(-B - sd) / (2 * A), (-B + sd) / (2 * A)})
        if (t > 0 && t < 1) out.push_back(t);
}

// Parameter on (a,b) of a transversal intersection with (c,d); nullopt for
// parallel/collinear configurations (handled by the midpoint sampling).
std::optional<double> seg_seg_param(Point a, Point b, Point c, Point d) {
    double rX = b.x - a.x, rY = b.y - a.y;
    double sX = d.x - c.x, sY = d.y - c.y;
    double denom = rX * sY - rY * sX;
    if (denom == 0) return std::nullopt;
    double t = ((c.x - a.x) * sY - (c.y - a.y) * sX) / denom;
    double u = ((c.x - a.x) * rY - (c.y - a.y) * rX) / denom;
    if (t <= 0 || t >= 1 || u < 0 || u > 1) return std::nullopt;
    return t;
}

// Does the boundary of `probe` meet the interior (filling) of `host`?
bool boundary_meets_interior(const Curve& probe, const Curve& host) {
    const auto* host_circle = std::get_if<Circle>(&host);
    std::vector<std::pair<Point, Point>> host_segs = segments_of(host);

    if (const auto* pc = std::get_if<Circle>(&probe)) {
        Point c0 = pc->center;
        double r0 = pc->diam / 2;
        std::vector<double> angles;
        if (host_circle) {
            double d = dist(c0, host_circle->center);
            double r1 = host_circle->diam / 2;
            if (d > 0 && d < r0 + r1 && d > std::abs(r0 - r1)) {
                double a = (d * d + r0 * r0 - r1 * r1) / (2 * d);
                double h2 = r0 * r0 - a * a;
                double h = std::sqrt(std::max(0.0, h2));
                double base = std::atan2(host_circle->center.y - c0.y,
                                         host_circle->center.x - c0.x);
                double off = std::atan2(h, a);
                angles.push_back(base + off);
                angles.push_back(base - off);
            }
        } else {
            for (const auto& [sa, sb] : host_segs) {
                std::vector<double> ts;
                seg_circle_params(sa, sb, c0, r0, ts);
                for (double t : ts) {
                    Point q{sa.x + t * (sb.x - sa.x), sa.y + t * (sb.y - sa.y)};
                    angles.push_back(std::atan2(q.y - c0.y, q.x - c0.x));
                }
            }
        }
        auto circle_pt = [&](double th) -> Point {
            return {c0.x + r0 * std::cos(th), c0.y + r0 * std::sin(th)};
        };
        if (angles.empty())
            return interior_contains(host, circle_pt(0.0));
        std::sort(angles.begin(), angles.end());
        for (size_t i = 0; i < angles.size(); ++i) {
            double a0 = angles[i];
            double a1 = (i + 1 < angles.size()) ? angles[i + 1] : angles[0] + 2 * M_PI;
            if (interior_contains(host, circle_pt((a0 + a1) / 2))) return true;
        }
        return false;
    }

    for (const auto& [a, b] : segments_of(probe)) {
        std::vector<double> ts{0.0, 1.0};
        if (host_circle) {
            seg_circle_params(a, b, host_circle->center, host_circle->diam / 2, ts);
        } else {
            for (const auto& [sa, sb] : host_segs)
                if (auto t = seg_seg_param(a, b, sa, sb)) ts.push_back(*t);
        }
        std::sort(ts.begin(), ts.end());
        for (size_t i = 0; i + 1 < ts.size(); ++i) {
            double tm = (ts[i] + ts[i + 1]) / 2;
            Point mid{a.x + tm * (b.x - a.x), a.y + tm * (b.y - a.y)};
            if (interior_contains(host, mid)) return true;
        }
    }
    return false;
}

bool is_stick(const Curve& c) { return std::holds_alternative<Stick>(c); }

}  // namespace

bool curves_cross(const Curve& a, const Curve& b) {
    if (is_stick(a) && is_stick(b)) {
        const auto& s = std::get<Stick>(a);
        const auto& t = std::get<Stick>(b);
        return segments_intersect(s.a, s.b, t.a, t.b);
    }
    if (is_stick(a)) return boundary_meets_interior(a, b);
    if (is_stick(b)) return boundary_meets_interior(b, a);

    const auto* ca = std::get_if<Circle>(&a);
    const auto* cb = std::get_if<Circle>(&b);
    if (ca && cb) {
        double d = dist(ca->center, cb->center);
        double ra = ca->diam / 2, rb = cb->diam / 2;
        return d > std::abs(ra - rb) && d < ra + rb;
    }

    // cheap reject
    BBox ba = curve_bbox(a), bb = curve_bbox(b);
    if (!ba.intersects(bb)) return false;

    return boundary_meets_interior(a, b) && boundary_meets_interior(b, a);
}

// --- domains -------------------------------------------------------------

namespace {

Disk as_disk(const UnitDisk&) { return Disk{{0, 0}, 1.0}; }

double max_dist_to_curve(Point z, const Curve& c) {
    if (const auto* ci = std::get_if<Circle>(&c))
        return dist(z, ci->center) + ci->diam / 2;
    double best = 0.0;
    for (const Point& p : trace_vertices(c)) best = std::max(best, dist(z, p));
    return best;
}

}  // namespace

BBox domain_bbox(const Domain& d) {
    return std::visit(
        [](const auto& v) -> BBox {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, UnitDisk>) {
                return {-1, -1, 1, 1};
            } else if constexpr (std::is_same_v<T, Disk>) {
                return {v.center.x - v.radius, v.center.y - v.radius,
                        v.center.x + v.radius, v.center.y + v.radius};
            } else if constexpr (std::is_same_v<T, Rect>) {
                return {v.x0, v.y0, v.x1, v.y1};
            } else {
                return {v.center.x - v.r_out, v.center.y - v.r_out,
                        v.center.x + v.r_out, v.center.y + v.r_out};
            }
        },
        d);
}

double domain_diameter(const Domain& d) {
    return std::visit(
        [](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, UnitDisk>) {
                return 2.0;
            } else if constexpr (std::is_same_v<T, Disk>) {
                return 2 * v.radius;
            } else if constexpr (std::is_same_v<T, Rect>) {
                return std::hypot(v.x1 - v.x0, v.y1 - v.y0);
            } else {
                return 2 * v.r_out;
            }
        },
        d);
}

bool domain_contains(const Domain& d, Point p) {
    return std::visit(
        [&](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, UnitDisk>) {
                return norm(p) <= 1.0;
            } else if constexpr (std::is_same_v<T, Disk>) {
                return dist(p, v.center) <= v.radius;
            } else if constexpr (std::is_same_v<T, Rect>) {
                return p.x >= v.x0 && p.x <= v.x1 && p.y >= v.y0 && p.y <= v.y1;
            } else {
                double r = dist(p, v.center);
                return r > v.r_in && r < v.r_out;
            }
        },
        d);
}

bool domain_contains_curve(const Domain& d, const Curve& c) {
    return std::visit(
        [&](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, UnitDisk>) {
                return max_dist_to_curve({0, 0}, c) <= 1.0;
            } else if constexpr (std::is_same_v<T, Disk>) {
                return max_dist_to_curve(v.center, c) <= v.radius;
            } else if constexpr (std::is_same_v<T, Rect>) {
                BBox b = curve_bbox(c);
                return b.x0 >= v.x0 && b.x1 <= v.x1 && b.y0 >= v.y0 && b.y1 <= v.y1;
            } else {
                // open annulus: curves winding around the inner disk without
                // touching it are contained
                return max_dist_to_curve(v.center, c) < v.r_out &&
                       distance_to_curve(c, v.center) > v.r_in;
            }
        },
        d);
}

}  // namespace soupfall
