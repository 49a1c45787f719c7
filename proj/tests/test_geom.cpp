#include <cmath>

#include "doctest.h"
#include "soupfall/geom.hpp"
#include "soupfall/raster.hpp"

using namespace soupfall;

namespace {

PolyLoop unit_square(Point lo) {
    return PolyLoop{{lo, lo + Point{1, 0}, lo + Point{1, 1}, lo + Point{0, 1}}};
}

}  // namespace

TEST_CASE("validate rejects degenerate curves") {
    CHECK_THROWS_AS(validate(Curve{Circle{{0, 0}, 0.0}}), invalid_curve_error);
    CHECK_THROWS_AS(validate(Curve{Circle{{0, 0}, -1.0}}), invalid_curve_error);
    CHECK_THROWS_AS(validate(Curve{Stick{{1, 1}, {1, 1}}}), invalid_curve_error);
    CHECK_THROWS_AS(validate(Curve{PolyLoop{{{0, 0}, {1, 0}}}}), invalid_curve_error);
    CHECK_THROWS_AS(validate(Curve{LatticeLoop{0, 0, "EN", 1.0}}), invalid_curve_error);
    CHECK_THROWS_AS(validate(Curve{LatticeLoop{0, 0, "ENXS", 1.0}}), invalid_curve_error);
    CHECK_THROWS_AS(validate(Curve{LatticeLoop{0, 0, "ENWS", 0.0}}), invalid_curve_error);
    CHECK_NOTHROW(validate(Curve{LatticeLoop{2, -3, "ENWS", 0.5}}));
    CHECK_NOTHROW(validate(Curve{Circle{{3, 4}, 2.5}}));
}

TEST_CASE("diameter and anchor") {
    Curve c = Circle{{2, 1}, 3.0};
    CHECK(diameter(c) == doctest::Approx(3.0));
    Point a = anchor(c);
    CHECK(a.x == doctest::Approx(0.5));
    CHECK(a.y == doctest::Approx(1.0));

    Curve s = Stick{{1, 2}, {-1, 0}};
    CHECK(diameter(s) == doctest::Approx(std::sqrt(8.0)));
    a = anchor(s);
    CHECK(a.x == doctest::Approx(-1.0));
    CHECK(a.y == doctest::Approx(0.0));

    Curve sq = unit_square({0, 0});
    CHECK(diameter(sq) == doctest::Approx(std::sqrt(2.0)));
    a = anchor(sq);
    CHECK(a.x == doctest::Approx(0.0));
    CHECK(a.y == doctest::Approx(0.0));

    // leftmost tie broken by smallest y
    Curve tie = PolyLoop{{{0, 1}, {0, -1}, {2, 0}}};
    CHECK(anchor(tie).y == doctest::Approx(-1.0));
}

TEST_CASE("place is a similarity and composes") {
    Curve c = Circle{{1, 0}, 2.0};
    Curve moved = place(c, {3, 4}, 0.5);
    const auto& mc = std::get<Circle>(moved);
    CHECK(mc.center.x == doctest::Approx(3.5));
    CHECK(mc.center.y == doctest::Approx(4.0));
    CHECK(mc.diam == doctest::Approx(1.0));

    // place(place(c, z1, r1), z2, r2) == place(c, z2 + r2*z1, r1*r2)
    Curve lhs = place(place(c, {1, 2}, 2.0), {-3, 1}, 0.25);
    Curve rhs = place(c, Point{-3, 1} + 0.25 * Point{1, 2}, 0.5);
    const auto& l = std::get<Circle>(lhs);
    const auto& r = std::get<Circle>(rhs);
    CHECK(l.center.x == doctest::Approx(r.center.x));
    CHECK(l.center.y == doctest::Approx(r.center.y));
    CHECK(l.diam == doctest::Approx(r.diam));

    CHECK_THROWS_AS(place(c, {0, 0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(place(c, {0, 0}, -1.0), std::invalid_argument);

    // lattice loops become poly loops under non-trivial transforms
    Curve ll = LatticeLoop{0, 0, "ENWS", 1.0};
    CHECK(std::holds_alternative<LatticeLoop>(place(ll, {0, 0}, 1.0)));
    Curve scaled = place(ll, {1, 1}, 2.0);
    CHECK(std::holds_alternative<PolyLoop>(scaled));
    CHECK(diameter(scaled) == doctest::Approx(2.0 * std::sqrt(2.0)));
}

TEST_CASE("interior membership") {
    Curve c = Circle{{0, 0}, 2.0};
    CHECK(interior_contains(c, {0, 0}));
    CHECK(interior_contains(c, {0.9, 0}));
    CHECK_FALSE(interior_contains(c, {1.1, 0}));

    Curve s = Stick{{0, 0}, {1, 1}};
    CHECK_FALSE(interior_contains(s, {0.5, 0.5}));  // sticks are empty

    Curve sq = unit_square({0, 0});
    CHECK(interior_contains(sq, {0.5, 0.5}));
    CHECK_FALSE(interior_contains(sq, {1.5, 0.5}));

    Curve ll = LatticeLoop{0, 0, "EENNWWSS", 0.5};
    CHECK(interior_contains(ll, {0.5, 0.5}));
    CHECK_FALSE(interior_contains(ll, {1.2, 0.5}));
    // figure-eight style retracing keeps the enclosed pocket
    Curve pocket = LatticeLoop{0, 0, "ENWSENWS", 1.0};
    CHECK(interior_contains(pocket, {0.5, 0.5}));
}

TEST_CASE("distance to curve") {
    Curve c = Circle{{0, 0}, 2.0};
    CHECK(distance_to_curve(c, {3, 0}) == doctest::Approx(2.0));
    CHECK(distance_to_curve(c, {0, 0}) == doctest::Approx(1.0));
    Curve s = Stick{{0, 0}, {2, 0}};
    CHECK(distance_to_curve(s, {1, 1}) == doctest::Approx(1.0));
    CHECK(distance_to_curve(s, {3, 0}) == doctest::Approx(1.0));
}

TEST_CASE("segment predicates") {
    CHECK(segments_intersect({0, 0}, {1, 1}, {0, 1}, {1, 0}));
    CHECK_FALSE(segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
    CHECK(segments_intersect({0, 0}, {2, 0}, {1, 0}, {1, 1}));   // T-touch
    CHECK(segments_intersect({0, 0}, {2, 0}, {1, 0}, {3, 0}));   // collinear overlap
    CHECK_FALSE(segments_intersect({0, 0}, {1, 0}, {2, 0}, {3, 0}));
    CHECK(dist_point_segment({0, 1}, {-1, 0}, {1, 0}) == doctest::Approx(1.0));
}

TEST_CASE("crossing relation") {
    // overlapping circle boundaries
    CHECK(curves_cross(Circle{{0, 0}, 2.0}, Circle{{1.5, 0}, 2.0}));
    // nested: boundaries do not meet the other's interior both ways
    CHECK_FALSE(curves_cross(Circle{{0, 0}, 4.0}, Circle{{0, 0}, 1.0}));
    // disjoint
    CHECK_FALSE(curves_cross(Circle{{0, 0}, 1.0}, Circle{{5, 0}, 1.0}));
    // stick through a circle
    CHECK(curves_cross(Stick{{-2, 0}, {2, 0}}, Circle{{0, 0}, 2.0}));
    // stick outside
    CHECK_FALSE(curves_cross(Stick{{3, 0}, {4, 0}}, Circle{{0, 0}, 2.0}));
    // stick/stick degrades to segment intersection
    CHECK(curves_cross(Stick{{0, 0}, {1, 1}}, Stick{{0, 1}, {1, 0}}));
    // symmetry on mixed pairs
    Curve sq = unit_square({-0.5, -0.5});
    Curve c = Circle{{0.6, 0}, 1.0};
    CHECK(curves_cross(sq, c) == curves_cross(c, sq));
    CHECK(curves_cross(sq, c));
}

TEST_CASE("domains") {
    CHECK(domain_contains(UnitDisk{}, {0.5, 0.5}));
    CHECK_FALSE(domain_contains(UnitDisk{}, {0.8, 0.8}));
    CHECK(domain_contains_curve(UnitDisk{}, Circle{{0, 0}, 1.0}));
    CHECK_FALSE(domain_contains_curve(UnitDisk{}, Circle{{0.8, 0}, 1.0}));
    CHECK(domain_contains_curve(Rect{0, 0, 2, 2}, unit_square({0.5, 0.5})));

    // annulus containment is strict on both radii
    Annulus an{{0, 0}, 0.2, 1.0};
    CHECK(domain_contains_curve(an, Circle{{0.6, 0}, 0.2}));
    CHECK_FALSE(domain_contains_curve(an, Circle{{0, 0}, 0.4}));   // touches r_in
    CHECK_FALSE(domain_contains_curve(an, Circle{{0.5, 0}, 1.0})); // reaches r_out
    CHECK(domain_diameter(an) == doctest::Approx(2.0));
}

TEST_CASE("filled area against closed forms") {
    // single circle
    CHECK(filled_area(Curve{Circle{{0, 0}, 1.0}}, 0.002) ==
          doctest::Approx(M_PI / 4).epsilon(0.01));
    // two unit circles at distance 0.8: union of disks, lens counted once
    std::vector<Curve> two{Circle{{0, 0}, 1.0}, Circle{{0.8, 0}, 1.0}};
    CHECK(filled_area(two, 0.002) == doctest::Approx(1.4890458).epsilon(0.005));
    double lens = 2 * (M_PI / 4) - filled_area(two, 0.002);
    CHECK(lens == doctest::Approx(0.08175055).epsilon(0.05));
    // sticks have empty filling up to the one-cell trace supercover
    CHECK(filled_area(Curve{Stick{{0, 0}, {1, 0}}}, 0.01) < 0.03);
    CHECK(filled_area(Curve{Stick{{0, 0}, {1, 0}}}, 0.001) < 0.003);
}

TEST_CASE("exact lattice filled area") {
    CHECK(lattice_filled_area(LatticeLoop{0, 0, "EW", 1.0}) == doctest::Approx(0.0));
    CHECK(lattice_filled_area(LatticeLoop{0, 0, "ENWS", 1.0}) == doctest::Approx(1.0));
    CHECK(lattice_filled_area(LatticeLoop{0, 0, "ENWS", 0.5}) == doctest::Approx(0.25));
    CHECK(lattice_filled_area(LatticeLoop{3, 3, "EENNWWSS", 1.0}) == doctest::Approx(4.0));
    // retraced flat appendix adds nothing
    CHECK(lattice_filled_area(LatticeLoop{0, 0, "ENWSEW", 1.0}) == doctest::Approx(1.0));
}

TEST_CASE("neighborhood area closed forms") {
    // circle of radius 1: r-neighbourhood is an annulus of area 4*pi*R*r
    Curve c = Circle{{0, 0}, 2.0};
    CHECK(neighborhood_area(c, 0.25, 0.01) == doctest::Approx(4 * M_PI * 0.25));
    // overgrown radius: full disk of radius R + r
    CHECK(neighborhood_area(c, 2.0, 0.01) == doctest::Approx(M_PI * 9.0));
    // stick of length L: capsule 2rL + pi r^2
    Curve s = Stick{{0, 0}, {3, 0}};
    CHECK(neighborhood_area(s, 0.5, 0.01) ==
          doctest::Approx(2 * 0.5 * 3 + M_PI * 0.25));
    // raster fallback agrees with the capsule formula on a rotated stick
    Curve rs = Stick{{0, 0}, {3.0 / std::sqrt(2), 3.0 / std::sqrt(2)}};
    CHECK(neighborhood_area(rs, 0.5, 0.005) ==
          doctest::Approx(2 * 0.5 * 3 + M_PI * 0.25).epsilon(0.02));
}

TEST_CASE("box counting on rasters") {
    Raster r({0, 0}, 1.0 / 64, 64, 64);
    for (auto& v : r.occ) v = 1;
    CHECK(box_count(r, 1) == 64 * 64);
    CHECK(box_count(r, 8) == 64);
    CHECK(box_count(r, 64) == 1);
    Raster line({0, 0}, 1.0 / 64, 64, 64);
    for (int i = 0; i < 64; ++i) line.set(i, 32);
    CHECK(box_count(line, 8) == 8);
}
