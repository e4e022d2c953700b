#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "bflights/geometry.hpp"

namespace bflights {

struct WhitneyParams {
  double c1 = 1.0;
  double c2 = 4.0;
  int max_depth = 16;
};

struct WhitneyCube {
  std::int32_t level = 0;
  std::array<std::int64_t, 3> corner{0, 0, 0};  // lattice coordinates at this level
  double side = 0.0;
  double dist = 0.0;  // boundary distance measured at the cube center
};

struct WhitneyBox {
  Point origin;
  double side = 0.0;
};

struct WhitneyLevel {
  double t = 0.0;
  std::vector<WhitneyCube> cubes;
};

// Dyadic Whitney decomposition of the boundary complement inside a root box.
// A cell is emitted when the sandwich c1*|Q| <= d(Q) <= c2*|Q| holds with the
// center distance read conservatively (minus/plus half the cube diagonal),
// subdivided otherwise, and discarded past max_depth.
class WhitneyDecomposition {
 public:
  static WhitneyDecomposition build(const Scene& scene, const WhitneyBox& root,
                                    const WhitneyParams& params, int workers = 0);

  const std::vector<WhitneyCube>& cubes() const { return cubes_; }
  const WhitneyBox& root() const { return root_; }
  const WhitneyParams& params() const { return params_; }
  int dim() const { return dim_; }

  Point cube_center(const WhitneyCube& q) const;
  double min_level_t() const { return root_.side * std::exp2(-params_.max_depth); }

  // Cubes whose center-distance band [dist - |Q|*sqrt(d_e)/2, dist + ...]
  // contains t; deterministic (level, corner) order.
  WhitneyLevel level_cubes(double t) const;

  // (t_j, #Q_{t_j}) for t_j = scale * 2^-j
  std::vector<std::pair<double, std::uint64_t>> level_count_series(double scale, int j_min,
                                                                   int j_max) const;

 private:
  WhitneyBox root_;
  WhitneyParams params_;
  int dim_ = 2;
  std::vector<WhitneyCube> cubes_;
};

// Default root box: square (cube) centered on the curve bounding box with
// side 4x the maximal extent.
WhitneyBox default_whitney_box(const Scene& scene);

// Grid search at resolution c*r/4 over B(x,r) for a point y with
// c*r < |x-y| < r and dist(y) > c*r.
bool corkscrew_check(const Scene& scene, Point x, double r, double c);

// Monte Carlo estimate of the probability that Brownian motion from x hits
// the boundary before leaving B(x, 2*d_x) (walk-on-spheres with the ball
// treated as an absorbing cap).
double fatness_probe(const Scene& scene, Point x, std::int64_t n_walks, std::uint64_t seed);

}  // namespace bflights
