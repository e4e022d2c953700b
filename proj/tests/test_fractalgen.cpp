#include <doctest.h>

#include <cmath>
#include <unordered_set>

#include "bflights/boundary_io.hpp"
#include "bflights/fractalgen.hpp"

using namespace bflights;

namespace {

double total_length(const Boundary& b) {
  double len = 0;
  for (std::size_t i = 0; i + 1 < b.vertices.size(); ++i) {
    len += (b.vertices[i + 1] - b.vertices[i]).norm();
  }
  return len;
}

}  // namespace

TEST_CASE("koch base cases") {
  const Boundary k0 = koch_generate({0});
  REQUIRE(k0.vertices.size() == 2);
  CHECK(k0.vertices.front() == Point{0, 0, 0});
  CHECK(k0.vertices.back() == Point{1, 0, 0});

  const Boundary k1 = koch_generate({1});
  REQUIRE(k1.vertices.size() == 5);
  CHECK(k1.vertices[2].x == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(k1.vertices[2].y == doctest::Approx(std::sqrt(3.0) / 6.0).epsilon(1e-15));
  CHECK(total_length(k1) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));

  const Boundary k3 = koch_generate({3});
  REQUIRE(k3.vertices.size() == 65);  // 4^3 segments
  for (std::size_t i = 0; i + 1 < k3.vertices.size(); ++i) {
    CHECK((k3.vertices[i + 1] - k3.vertices[i]).norm() ==
          doctest::Approx(1.0 / 27.0).epsilon(1e-12));
  }
}

TEST_CASE("koch diameter is exactly 1 and endpoints are pinned") {
  for (int k = 0; k <= 6; ++k) {
    const Boundary b = koch_generate({k});
    CHECK(b.vertices.front() == Point{0, 0, 0});
    CHECK(b.vertices.back() == Point{1, 0, 0});
    CHECK(point_set_diameter(b.vertices) == 1.0);
  }
}

TEST_CASE("koch size guards") {
  CHECK_THROWS_AS(koch_generate({11}), SizeError);
  CHECK_THROWS_AS(koch_generate({-1}), DomainError);
}

TEST_CASE("saw: one step never pivots into anything else") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    SawConfig cfg;
    cfg.n_steps = 1;
    cfg.n_pivot_attempts = 50;
    cfg.seed = seed;
    const Boundary b = saw_generate(cfg);
    CHECK(b.vertices.size() == 2);
  }
}

TEST_CASE("saw stays self-avoiding with unit steps") {
  SawConfig cfg;
  cfg.n_steps = 200;
  cfg.n_pivot_attempts = 2000;
  cfg.seed = 42;
  const Boundary b = saw_generate(cfg);
  REQUIRE(b.vertices.size() == 201);
  CHECK_NOTHROW(b.validate());  // validates unit steps + no revisit
}

TEST_CASE("pivot chain: every accepted move keeps the walk self-avoiding") {
  for (std::int64_t n : {1, 2, 3, 5, 17, 64}) {
    PivotChain chain(n, 1000 + static_cast<std::uint64_t>(n));
    int accepted = 0;
    for (int a = 0; a < 200; ++a) {
      if (!chain.attempt()) continue;
      ++accepted;
      const Boundary b = chain.boundary();
      std::unordered_set<std::int64_t> seen;
      for (const Point& v : b.vertices) {
        seen.insert(static_cast<std::int64_t>(v.x) * 1000003 + static_cast<std::int64_t>(v.y));
      }
      REQUIRE(seen.size() == static_cast<std::size_t>(n) + 1);
    }
    CHECK(accepted > 0);
  }
}

TEST_CASE("saw reproducibility: same seed gives byte-identical boundary json") {
  SawConfig cfg;
  cfg.n_steps = 300;
  cfg.n_pivot_attempts = 1500;
  cfg.seed = 77;
  const std::string a = boundary_to_json(saw_generate(cfg)).dump();
  const std::string b = boundary_to_json(saw_generate(cfg)).dump();
  CHECK(a == b);
  cfg.seed = 78;
  CHECK(boundary_to_json(saw_generate(cfg)).dump() != a);
}

TEST_CASE("line reference") {
  CHECK(line_reference(2).kind == BoundaryKind::AnalyticLine2D);
  CHECK(line_reference(3).kind == BoundaryKind::AnalyticPlane3D);
  CHECK_THROWS_AS(line_reference(4), UnsupportedError);
  CHECK_THROWS_AS(line_reference(1), UnsupportedError);
}

TEST_CASE("saw config guards") {
  SawConfig cfg;
  cfg.n_steps = 0;
  CHECK_THROWS_AS(saw_generate(cfg), DomainError);
  cfg.n_steps = 10;
  cfg.n_pivot_attempts = -1;
  CHECK_THROWS_AS(saw_generate(cfg), DomainError);
}
