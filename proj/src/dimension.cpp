#include "bflights/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "bflights/parallel.hpp"

namespace bflights {

namespace {

std::uint64_t pack_cell(std::int64_t i, std::int64_t j) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(j));
}

struct Grid {
  Point origin;
  double eps;
  std::int64_t nx, ny;

  std::int64_t cell_x(double v) const {
    auto i = static_cast<std::int64_t>(std::floor((v - origin.x) / eps));
    return std::clamp<std::int64_t>(i, 0, nx - 1);
  }
  std::int64_t cell_y(double v) const {
    auto j = static_cast<std::int64_t>(std::floor((v - origin.y) / eps));
    return std::clamp<std::int64_t>(j, 0, ny - 1);
  }
};

// Amanatides-Woo traversal of the cells crossed by segment [a,b]. Grid cells
// are half-open; an exact corner crossing steps both axes so only cells the
// point set actually enters are visited.
template <typename Emit>
void traverse_segment(const Grid& g, Point a, Point b, Emit&& emit) {
  std::int64_t i = g.cell_x(a.x), j = g.cell_y(a.y);
  const std::int64_t i1 = g.cell_x(b.x), j1 = g.cell_y(b.y);
  emit(pack_cell(i, j));
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double inf = std::numeric_limits<double>::infinity();
  const int sx = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
  const int sy = dy > 0 ? 1 : (dy < 0 ? -1 : 0);
  double tmax_x = inf, tmax_y = inf, tdel_x = inf, tdel_y = inf;
  if (sx != 0) {
    const double edge = g.origin.x + static_cast<double>(sx > 0 ? i + 1 : i) * g.eps;
    tmax_x = (edge - a.x) / dx;
    tdel_x = g.eps / std::abs(dx);
  }
  if (sy != 0) {
    const double edge = g.origin.y + static_cast<double>(sy > 0 ? j + 1 : j) * g.eps;
    tmax_y = (edge - a.y) / dy;
    tdel_y = g.eps / std::abs(dy);
  }
  std::int64_t guard = (std::abs(i1 - i) + std::abs(j1 - j)) * 2 + 8;
  while ((i != i1 || j != j1) && guard-- > 0) {
    if (tmax_x < tmax_y) {
      i += sx;
      tmax_x += tdel_x;
    } else if (tmax_y < tmax_x) {
      j += sy;
      tmax_y += tdel_y;
    } else {
      i += sx;
      j += sy;
      tmax_x += tdel_x;
      tmax_y += tdel_y;
    }
    i = std::clamp<std::int64_t>(i, 0, g.nx - 1);
    j = std::clamp<std::int64_t>(j, 0, g.ny - 1);
    emit(pack_cell(i, j));
  }
  if (guard <= 0) emit(pack_cell(i1, j1));
}

std::vector<Point> counting_vertices(const Boundary& boundary) {
  if (boundary.kind == BoundaryKind::AnalyticLine2D) {
    // unit window stand-in for the infinite line
    return {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
  }
  if (boundary.kind == BoundaryKind::AnalyticPlane3D) {
    throw UnsupportedError("box_count is 2D-only; the plane has d = 2 exactly");
  }
  return boundary.vertices;
}

}  // namespace

std::uint64_t box_count_single(const Boundary& boundary, double eps, int workers) {
  const std::vector<Point> verts = counting_vertices(boundary);
  BBox bb{verts.front(), verts.front()};
  for (const Point& v : verts) bb.expand(v);
  const double diam = point_set_diameter(verts);
  if (!(eps > 0.0)) throw DomainError("box_count eps must be positive");
  if (eps < diam * 0x1.0p-24) throw SizeError("box_count eps below diameter * 2^-24");

  Grid g;
  g.origin = bb.lo;
  g.eps = eps;
  const Point ext = bb.extent();
  g.nx = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(ext.x / eps - 1e-12)));
  g.ny = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(ext.y / eps - 1e-12)));

  const auto nseg = static_cast<std::int64_t>(verts.size() - 1);
  const int w = resolve_workers(workers);
  std::vector<std::unordered_set<std::uint64_t>> sets(static_cast<std::size_t>(std::max(1, w)));
  parallel_chunks(nseg, w, [&](int worker, std::int64_t b, std::int64_t e) {
    auto& set = sets[static_cast<std::size_t>(worker)];
    for (std::int64_t s = b; s < e; ++s) {
      traverse_segment(g, verts[static_cast<std::size_t>(s)], verts[static_cast<std::size_t>(s) + 1],
                       [&](std::uint64_t c) { set.insert(c); });
    }
  });
  auto& all = sets.front();
  for (std::size_t k = 1; k < sets.size(); ++k) all.insert(sets[k].begin(), sets[k].end());
  return all.size();
}

BoxCountSeries box_count(const Boundary& boundary, std::span<const double> ladder, int workers) {
  std::vector<double> eps(ladder.begin(), ladder.end());
  std::sort(eps.begin(), eps.end(), std::greater<>());
  eps.erase(std::unique(eps.begin(), eps.end()), eps.end());
  BoxCountSeries series;
  for (double e : eps) series.points.emplace_back(e, box_count_single(boundary, e, workers));
  return series;
}

std::vector<double> dyadic_ladder(double diameter, int j_min, int j_max) {
  if (!(diameter > 0.0)) throw DomainError("dyadic_ladder needs a positive diameter");
  if (j_min > j_max) throw UsageError("dyadic_ladder: j_min > j_max");
  std::vector<double> eps;
  for (int j = j_min; j <= j_max; ++j) eps.push_back(diameter * std::exp2(-j));
  return eps;
}

DimensionEstimate fit_dimension_counts(std::span<const std::pair<double, std::uint64_t>> counts,
                                       std::optional<EpsWindow> window, DimensionMethod method) {
  std::vector<std::pair<double, std::uint64_t>> pts(counts.begin(), counts.end());
  std::sort(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.first > b.first; });
  std::vector<double> xs, ys;
  double emin = std::numeric_limits<double>::infinity(), emax = 0.0;
  if (window) {
    for (auto& [e, n] : pts) {
      if (e < window->lo * (1.0 - 1e-12) || e > window->hi * (1.0 + 1e-12) || n == 0) continue;
      xs.push_back(-std::log(e));
      ys.push_back(std::log(static_cast<double>(n)));
      emin = std::min(emin, e);
      emax = std::max(emax, e);
    }
  } else {
    // lattice / segment-length cutoffs pollute both ends of the ladder
    for (std::size_t k = 2; k + 2 < pts.size(); ++k) {
      auto& [e, n] = pts[k];
      if (n == 0) continue;
      xs.push_back(-std::log(e));
      ys.push_back(std::log(static_cast<double>(n)));
      emin = std::min(emin, e);
      emax = std::max(emax, e);
    }
  }
  if (xs.size() < 4) throw InsufficientDataError("fit_dimension needs at least 4 ladder points");
  const LineFit lf = fit_line(xs, ys);
  DimensionEstimate est;
  est.d = lf.slope;
  est.stderr_ = lf.slope_stderr;
  est.eps_min = emin;
  est.eps_max = emax;
  est.method = method;
  est.n_points = lf.n;
  return est;
}

DimensionEstimate fit_dimension(const BoxCountSeries& series, std::optional<EpsWindow> window,
                                DimensionMethod method) {
  return fit_dimension_counts(series.points, window, method);
}

}  // namespace bflights
