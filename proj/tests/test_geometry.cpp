#include <doctest.h>

#include "bflights/boundary_io.hpp"
#include "bflights/fractalgen.hpp"
#include "bflights/geometry.hpp"
#include "bflights/rng.hpp"
#include "oracles.hpp"

using namespace bflights;

TEST_CASE("unit segment distances and sides") {
  const Boundary seg = Boundary::polyline2d({{0, 0, 0}, {1, 0, 0}});
  const DistanceIndex idx = DistanceIndex::build(seg);

  const DistanceResult perp = idx.query({0.5, 0.3, 0});
  CHECK(perp.distance == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(perp.segment_id == 0);
  CHECK(idx.side_of({0.5, 0.3, 0}) == SideLabel::Left);
  CHECK(idx.side_of({0.5, -0.3, 0}) == SideLabel::Right);

  CHECK(idx.query({2, 0, 0}).distance == doctest::Approx(1.0).epsilon(1e-15));
  // nearest feature is the open endpoint
  CHECK(idx.side_of({2, 0.0001, 0}) == SideLabel::Ambiguous);
  CHECK(idx.side_of({-1, 0.0001, 0}) == SideLabel::Ambiguous);
}

TEST_CASE("L-shape nearest segment matches the brute-force oracle") {
  const std::vector<Point> verts = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}};
  const DistanceIndex idx = DistanceIndex::build(Boundary::polyline2d(verts));
  const Point p{0.9, 0.2, 0};
  const auto oracle = oracles::brute_nearest(verts, p);
  const DistanceResult got = idx.query(p);
  CHECK(got.distance == oracle.distance);
  CHECK(got.segment_id == oracle.segment_id);
  // the vertical arm is closer than the horizontal one here
  CHECK(got.distance == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(got.segment_id == 1);
}

TEST_CASE("index equals brute force on a SAW, exactly") {
  SawConfig cfg;
  cfg.n_steps = 2000;
  cfg.n_pivot_attempts = 4000;
  cfg.seed = 99;
  const Boundary saw = saw_generate(cfg);
  const DistanceIndex idx = DistanceIndex::build(saw);
  BBox bb{saw.vertices.front(), saw.vertices.front()};
  for (const Point& v : saw.vertices) bb.expand(v);
  const Point c = bb.center();
  const double half = bb.max_extent();
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const Point p{c.x + (2 * rng.uniform01() - 1) * half, c.y + (2 * rng.uniform01() - 1) * half,
                  0};
    const auto oracle = oracles::brute_nearest(saw.vertices, p);
    const DistanceResult got = idx.query(p);
    CHECK(got.distance == oracle.distance);
    CHECK(got.segment_id == oracle.segment_id);
  }
  for (const Point& v : saw.vertices) {
    CHECK(idx.query(v).distance == 0.0);
  }
}

TEST_CASE("analytic scenes") {
  const Scene line(Boundary::analytic_line2d());
  CHECK(line.distance({7, -3, 0}) == 3.0);
  CHECK(line.side_of({0, 1, 0}) == SideLabel::Left);
  CHECK(line.side_of({0, -1, 0}) == SideLabel::Right);
  CHECK(line.side_of({5, 0, 0}) == SideLabel::Ambiguous);
  CHECK_THROWS_AS((void)line.diameter(), DomainError);

  const Scene plane(Boundary::analytic_plane3d());
  CHECK(plane.distance({1, 2, 0.5}) == 0.5);
  CHECK_THROWS_AS((void)plane.side_of({0, 0, 1}), UnsupportedError);
  CHECK(plane.flight_side({0, 0, 1}) == SideLabel::Left);
  CHECK(plane.flight_side({0, 0, -2}) == SideLabel::Right);
}

TEST_CASE("closed square: interior points all get one label (winding oracle)") {
  const std::vector<Point> square = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 0}};
  const Boundary b = Boundary::polyline2d(square);
  CHECK_FALSE(b.open_curve());
  const DistanceIndex idx = DistanceIndex::build(b);
  Rng rng(7);
  SideLabel label = SideLabel::Ambiguous;
  for (int i = 0; i < 100; ++i) {
    const Point p{0.02 + 0.96 * rng.uniform01(), 0.02 + 0.96 * rng.uniform01(), 0};
    REQUIRE(oracles::point_inside_polygon(square, p));
    const SideLabel got = idx.side_of(p);
    REQUIRE(got != SideLabel::Ambiguous);
    if (label == SideLabel::Ambiguous) label = got;
    CHECK(got == label);
  }
}

TEST_CASE("distance is 1-Lipschitz along straight probe paths") {
  const Boundary koch = koch_generate({4});
  const Scene scene(koch);
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Point a{rng.uniform01() * 2 - 0.5, rng.uniform01() * 2 - 1, 0};
    const Point b{rng.uniform01() * 2 - 0.5, rng.uniform01() * 2 - 1, 0};
    double prev = scene.distance(a);
    const int steps = 32;
    for (int s = 1; s <= steps; ++s) {
      const double t = static_cast<double>(s) / steps;
      const Point p = a + t * (b - a);
      const double d = scene.distance(p);
      const double move = (1.0 / steps) * (b - a).norm();
      CHECK(std::abs(d - prev) <= move + 1e-12);
      prev = d;
    }
  }
}

TEST_CASE("side flips exactly at transversal crossings of the line") {
  const Scene line(Boundary::analytic_line2d());
  Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    const double x = rng.uniform01() * 10 - 5;
    const double y = rng.uniform01() + 1e-6;
    CHECK(line.side_of({x, y, 0}) == SideLabel::Left);
    CHECK(line.side_of({x, -y, 0}) == SideLabel::Right);
  }
}

TEST_CASE("boundary validation") {
  CHECK_THROWS_AS(Boundary::polyline2d({}).validate(), DomainError);
  CHECK_THROWS_AS(Boundary::polyline2d({{0, 0, 0}}).validate(), DomainError);
  CHECK_THROWS_AS(Boundary::polyline2d({{0, 0, 0}, {0, 0, 0}}).validate(), DomainError);
  CHECK_THROWS_AS(Boundary::lattice_path2d({{0, 0, 0}, {1, 1, 0}}).validate(), DomainError);
  CHECK_THROWS_AS(Boundary::lattice_path2d({{0, 0, 0}, {0.5, 0, 0}}).validate(), DomainError);
  CHECK_THROWS_AS(
      Boundary::lattice_path2d({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 0}}).validate(),
      DomainError);
  CHECK_NOTHROW(Boundary::lattice_path2d({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}}).validate());
  CHECK_THROWS_AS(DistanceIndex::build(Boundary::analytic_line2d()), DomainError);
}

TEST_CASE("far out-of-range query raises") {
  const DistanceIndex idx = DistanceIndex::build(Boundary::polyline2d({{0, 0, 0}, {1, 0, 0}}));
  CHECK_THROWS_AS(idx.query({1000, 0, 0}), RangeError);
}

TEST_CASE("boundary json round trip") {
  SawConfig cfg;
  cfg.n_steps = 50;
  cfg.n_pivot_attempts = 200;
  cfg.seed = 5;
  const Boundary saw = saw_generate(cfg);
  const nlohmann::json j = boundary_to_json(saw, {{"note", "test"}});
  CHECK(j.at("kind") == "lattice-path2d");
  nlohmann::json meta;
  const Boundary back = boundary_from_json(j, &meta);
  CHECK(back.vertices == saw.vertices);
  CHECK(meta.at("note") == "test");
  // lattice vertices serialize as integers
  CHECK(j.at("vertices").at(0).at(0).is_number_integer());
}

TEST_CASE("point set diameter") {
  CHECK(point_set_diameter({{0, 0, 0}, {1, 0, 0}, {0.5, 0.2886751345948129, 0}}) == 1.0);
  CHECK(point_set_diameter({{0, 0, 0}, {3, 4, 0}}) == 5.0);
}
