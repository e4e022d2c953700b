#include <doctest.h>

#include <cmath>

#include "bflights/flights.hpp"
#include "bflights/fractalgen.hpp"
#include "bflights/rng.hpp"
#include "bflights/stats.hpp"
#include "bflights/whitney.hpp"

using namespace bflights;

// Heavier statistical oracles at their stated scale.

TEST_CASE("straight lattice path: theta exponent -2 (discrete half-plane law)") {
  std::vector<Point> verts;
  for (int i = 0; i < 1000; ++i) verts.push_back({static_cast<double>(i), 0, 0});
  const Scene scene(Boundary::lattice_path2d(verts));
  const LatticeAbsorber absorber(scene);
  const StartSampler starts = StartSampler::lattice_adjacent(absorber);

  EngineConfig cfg;
  cfg.engine = EngineKind::Lattice;
  cfg.n_max = 1000000;
  cfg.r_esc = 4.0 * scene.diameter();
  cfg.seed = 2718;
  cfg.n_flights = 1000000;

  Accumulator acc({true, true});
  run_campaign(scene, starts, &absorber, cfg, 0,
               [&](int, std::span<const FlightRecord> recs) { acc.add_all(recs); });
  const CampaignStats stats = acc.finalize();
  CHECK(stats.censored_fraction() < 0.05);
  // the half-plane law holds for r well below the path length; beyond ~L/25
  // the finite ends of the 10^3-site path steepen the tail
  const TailFit theta = fit_tail(stats.theta, {4.0, 40.0});
  CHECK(std::abs(theta.density_exponent - (-2.0)) <= 0.1);
}

TEST_CASE("fatness probes near a koch curve stay bounded away from zero") {
  const Scene koch(koch_generate({6}));
  const auto& verts = koch.boundary().vertices;
  Rng rng(5150);
  int tested = 0;
  for (int i = 0; i < 100; ++i) {
    const Point v = verts[rng.below(verts.size())];
    const double ang = 6.283185307179586 * rng.uniform01();
    const double off = std::exp2(-7) * (0.5 + rng.uniform01());
    const Point x{v.x + off * std::cos(ang), v.y + off * std::sin(ang), 0.0};
    const double dx = koch.distance(x);
    if (dx < std::exp2(-9)) continue;  // too close for a meaningful ball
    ++tested;
    const double p = fatness_probe(koch, x, 100000, 1000 + i);
    CHECK(p >= 0.2);
  }
  CHECK(tested >= 50);
}
