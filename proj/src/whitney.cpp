#include "bflights/whitney.hpp"

#include <algorithm>
#include <cmath>

#include "bflights/parallel.hpp"
#include "bflights/rng.hpp"

namespace bflights {

namespace {

struct Cell {
  std::int32_t level;
  std::array<std::int64_t, 3> corner;
};

struct Walker {
  const Scene& scene;
  const WhitneyBox& root;
  WhitneyParams params;
  int dim;
  double half_diag_unit;  // sqrt(dim)/2

  Point center_of(const Cell& c, double side) const {
    Point p;
    p.x = root.origin.x + (static_cast<double>(c.corner[0]) + 0.5) * side;
    p.y = root.origin.y + (static_cast<double>(c.corner[1]) + 0.5) * side;
    p.z = dim == 3 ? root.origin.z + (static_cast<double>(c.corner[2]) + 0.5) * side : 0.0;
    return p;
  }

  void process(const Cell& c, std::vector<WhitneyCube>& out, std::vector<Cell>& stack) const {
    const double side = root.side * std::exp2(-c.level);
    const double h = side * half_diag_unit;
    const double dc = scene.distance(center_of(c, side));
    if (dc - h >= params.c1 * side && dc <= params.c2 * side) {
      out.push_back({c.level, c.corner, side, dc});
      return;
    }
    // No descendant can satisfy d <= c2*|Q'| once even the nearest cube
    // point is farther than c2*side/2.
    if (dc - h > 0.5 * params.c2 * side) return;
    if (c.level >= params.max_depth) return;
    const std::int32_t nl = c.level + 1;
    const int nchild = dim == 3 ? 8 : 4;
    for (int k = 0; k < nchild; ++k) {
      Cell child;
      child.level = nl;
      child.corner = {2 * c.corner[0] + (k & 1), 2 * c.corner[1] + ((k >> 1) & 1),
                      dim == 3 ? 2 * c.corner[2] + ((k >> 2) & 1) : 0};
      stack.push_back(child);
    }
  }
};

}  // namespace

WhitneyDecomposition WhitneyDecomposition::build(const Scene& scene, const WhitneyBox& root,
                                                 const WhitneyParams& params, int workers) {
  if (params.max_depth > 24) throw SizeError("whitney max_depth > 24");
  if (params.max_depth < 0) throw DomainError("whitney max_depth must be >= 0");
  if (!(params.c1 > 0.0) || !(params.c2 >= params.c1)) {
    throw DomainError("whitney constants need 0 < c1 <= c2");
  }
  if (!(root.side > 0.0)) throw DomainError("whitney root box needs a positive side");
  if (scene.finite()) {
    const BBox bb = scene.bbox();
    const Point c = bb.center();
    const Point he = 0.5 * bb.extent();
    const double eps = 1e-9 * root.side;
    const bool ok = root.origin.x <= c.x - 4.0 * he.x + eps &&
                    root.origin.y <= c.y - 4.0 * he.y + eps &&
                    root.origin.x + root.side >= c.x + 4.0 * he.x - eps &&
                    root.origin.y + root.side >= c.y + 4.0 * he.y - eps;
    if (!ok) throw DomainError("whitney root box must contain the 4x-inflated curve bbox");
  }

  WhitneyDecomposition dec;
  dec.root_ = root;
  dec.params_ = params;
  dec.dim_ = scene.dim();

  Walker walker{scene, dec.root_, params, dec.dim_, std::sqrt(static_cast<double>(dec.dim_)) / 2.0};

  // Expand a frontier breadth-first, then descend subtrees in parallel.
  const int w = resolve_workers(workers);
  std::vector<Cell> frontier = {{0, {0, 0, 0}}};
  std::vector<WhitneyCube> emitted;
  const std::size_t frontier_goal = static_cast<std::size_t>(w) * 16;
  while (frontier.size() < frontier_goal && !frontier.empty()) {
    std::vector<Cell> next;
    bool expanded = false;
    for (const Cell& c : frontier) {
      const std::size_t before = next.size();
      walker.process(c, emitted, next);
      if (next.size() > before) expanded = true;
    }
    if (!expanded) {
      frontier.clear();
      break;
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }

  std::vector<std::vector<WhitneyCube>> partial(frontier.size());
  parallel_chunks(static_cast<std::int64_t>(frontier.size()), w,
                  [&](int, std::int64_t b, std::int64_t e) {
                    std::vector<Cell> stack;
                    for (std::int64_t i = b; i < e; ++i) {
                      auto& out = partial[static_cast<std::size_t>(i)];
                      stack.push_back(frontier[static_cast<std::size_t>(i)]);
                      while (!stack.empty()) {
                        const Cell c = stack.back();
                        stack.pop_back();
                        walker.process(c, out, stack);
                      }
                    }
                  });
  for (auto& part : partial) {
    emitted.insert(emitted.end(), part.begin(), part.end());
  }
  std::sort(emitted.begin(), emitted.end(), [](const WhitneyCube& a, const WhitneyCube& b) {
    if (a.level != b.level) return a.level < b.level;
    if (a.corner[2] != b.corner[2]) return a.corner[2] < b.corner[2];
    if (a.corner[1] != b.corner[1]) return a.corner[1] < b.corner[1];
    return a.corner[0] < b.corner[0];
  });
  dec.cubes_ = std::move(emitted);
  return dec;
}

Point WhitneyDecomposition::cube_center(const WhitneyCube& q) const {
  Point p;
  p.x = root_.origin.x + (static_cast<double>(q.corner[0]) + 0.5) * q.side;
  p.y = root_.origin.y + (static_cast<double>(q.corner[1]) + 0.5) * q.side;
  p.z = dim_ == 3 ? root_.origin.z + (static_cast<double>(q.corner[2]) + 0.5) * q.side : 0.0;
  return p;
}

WhitneyLevel WhitneyDecomposition::level_cubes(double t) const {
  if (!(t >= min_level_t()) || !(t <= root_.side)) {
    throw RangeError("level t outside [root*2^-max_depth, root side]");
  }
  WhitneyLevel level;
  level.t = t;
  const double hd = std::sqrt(static_cast<double>(dim_)) / 2.0;
  for (const WhitneyCube& q : cubes_) {
    if (std::abs(q.dist - t) <= q.side * hd) level.cubes.push_back(q);
  }
  return level;
}

std::vector<std::pair<double, std::uint64_t>> WhitneyDecomposition::level_count_series(
    double scale, int j_min, int j_max) const {
  std::vector<std::pair<double, std::uint64_t>> out;
  for (int j = j_min; j <= j_max; ++j) {
    const double t = scale * std::exp2(-j);
    out.emplace_back(t, level_cubes(t).cubes.size());
  }
  return out;
}

WhitneyBox default_whitney_box(const Scene& scene) {
  if (!scene.finite()) {
    // analytic references: window of side 4 straddling the boundary
    return {{-2.0, -2.0, -2.0}, 4.0};
  }
  const BBox bb = scene.bbox();
  const Point c = bb.center();
  const double side = 4.0 * bb.max_extent();
  return {{c.x - 0.5 * side, c.y - 0.5 * side, c.z - 0.5 * side}, side};
}

bool corkscrew_check(const Scene& scene, Point x, double r, double c) {
  if (!(r > 0.0)) throw DomainError("corkscrew_check needs r > 0");
  if (!(c > 0.0)) throw DomainError("corkscrew_check needs c > 0");
  if (c >= 1.0) return false;  // empty annulus condition
  const double g = c * r / 4.0;
  const auto m = static_cast<std::int64_t>(std::ceil(r / g));
  const int dim = scene.dim();
  const std::int64_t mz = dim == 3 ? m : 0;
  for (std::int64_t k = -mz; k <= mz; ++k) {
    for (std::int64_t j = -m; j <= m; ++j) {
      for (std::int64_t i = -m; i <= m; ++i) {
        const Point y = {x.x + g * static_cast<double>(i), x.y + g * static_cast<double>(j),
                         x.z + g * static_cast<double>(k)};
        const double rr = (y - x).norm();
        if (rr <= c * r || rr >= r) continue;
        if (scene.distance(y) > c * r) return true;
      }
    }
  }
  return false;
}

double fatness_probe(const Scene& scene, Point x, std::int64_t n_walks, std::uint64_t seed) {
  if (n_walks < 1000) throw DomainError("fatness_probe needs n_walks >= 1000");
  const double dx = scene.distance(x);
  if (!(dx > 0.0)) throw DomainError("fatness_probe start must lie off the boundary");
  const double ball = 2.0 * dx;
  const double delta = 1e-3 * dx;
  const int dim = scene.dim();
  Rng rng(seed);
  std::int64_t hits = 0;
  for (std::int64_t w = 0; w < n_walks; ++w) {
    Point p = x;
    for (int step = 0; step < 100000; ++step) {
      const double d = scene.distance(p);
      if (d < delta) {
        ++hits;
        break;
      }
      const double rem = ball - (p - x).norm();
      if (rem < delta) break;  // left the ball without touching the boundary
      const double rho = std::min(d, rem);
      p = p + rho * random_unit(rng, dim);
    }
  }
  return static_cast<double>(hits) / static_cast<double>(n_walks);
}

}  // namespace bflights
