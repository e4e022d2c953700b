#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bflights/geometry.hpp"

namespace bflights {

struct BoxCountSeries {
  // (eps, N_eps), eps strictly decreasing
  std::vector<std::pair<double, std::uint64_t>> points;
};

enum class DimensionMethod { Box, Whitney };

struct DimensionEstimate {
  double d = 0.0;
  double stderr_ = 0.0;
  double eps_min = 0.0;
  double eps_max = 0.0;
  DimensionMethod method = DimensionMethod::Box;
  int n_points = 0;
};

struct EpsWindow {
  double lo = 0.0;
  double hi = 0.0;
};

// Grid cells of side eps (origin fixed at the bounding-box corner) touched by
// any boundary segment; exact segment-grid traversal, no rasterization.
std::uint64_t box_count_single(const Boundary& boundary, double eps, int workers = 0);
BoxCountSeries box_count(const Boundary& boundary, std::span<const double> ladder, int workers = 0);

// eps_j = diameter * 2^-j for j in [j_min, j_max]
std::vector<double> dyadic_ladder(double diameter, int j_min, int j_max);

// OLS of log N against -log eps. Default window drops the two coarsest and
// two finest ladder points.
DimensionEstimate fit_dimension(const BoxCountSeries& series,
                                std::optional<EpsWindow> window = std::nullopt,
                                DimensionMethod method = DimensionMethod::Box);
DimensionEstimate fit_dimension_counts(std::span<const std::pair<double, std::uint64_t>> counts,
                                       std::optional<EpsWindow> window,
                                       DimensionMethod method);

}  // namespace bflights
