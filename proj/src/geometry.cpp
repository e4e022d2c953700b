#include "bflights/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace bflights {

namespace {

std::uint64_t pack_site(std::int64_t x, std::int64_t y) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(y));
}

}  // namespace

const char* to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::AnalyticLine2D: return "analytic-line2d";
    case BoundaryKind::AnalyticPlane3D: return "analytic-plane3d";
    case BoundaryKind::Polyline2D: return "polyline2d";
    case BoundaryKind::LatticePath2D: return "lattice-path2d";
  }
  return "?";
}

BoundaryKind boundary_kind_from_string(const std::string& s) {
  if (s == "analytic-line2d") return BoundaryKind::AnalyticLine2D;
  if (s == "analytic-plane3d") return BoundaryKind::AnalyticPlane3D;
  if (s == "polyline2d") return BoundaryKind::Polyline2D;
  if (s == "lattice-path2d") return BoundaryKind::LatticePath2D;
  throw UsageError("unknown boundary kind: " + s);
}

char side_char(SideLabel side) {
  switch (side) {
    case SideLabel::Left: return 'L';
    case SideLabel::Right: return 'R';
    case SideLabel::Ambiguous: return 'A';
  }
  return '?';
}

bool Boundary::open_curve() const {
  if (analytic() || vertices.size() < 2) return true;
  return !(vertices.front() == vertices.back());
}

void Boundary::validate() const {
  if (analytic()) {
    if (!vertices.empty()) throw DomainError("analytic boundary carries no vertices");
    return;
  }
  if (vertices.empty()) throw DomainError("boundary has an empty vertex list");
  if (vertices.size() < 2) throw DomainError("polyline needs at least 2 vertices");
  if (kind == BoundaryKind::Polyline2D) {
    for (std::size_t i = 1; i < vertices.size(); ++i) {
      if (vertices[i] == vertices[i - 1]) {
        throw DomainError("polyline has repeated consecutive vertices");
      }
    }
    return;
  }
  // lattice-path2d: integer coordinates, unit axis steps, self-avoiding
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(vertices.size() * 2);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Point& v = vertices[i];
    const auto xi = static_cast<std::int64_t>(std::llround(v.x));
    const auto yi = static_cast<std::int64_t>(std::llround(v.y));
    if (v.x != static_cast<double>(xi) || v.y != static_cast<double>(yi) || v.z != 0.0) {
      throw DomainError("lattice path vertices must have integer 2D coordinates");
    }
    if (!seen.insert(pack_site(xi, yi)).second) {
      throw DomainError("lattice path revisits a site");
    }
    if (i > 0) {
      const double dx = std::abs(v.x - vertices[i - 1].x);
      const double dy = std::abs(v.y - vertices[i - 1].y);
      if (dx + dy != 1.0) throw DomainError("lattice path steps must be unit axis moves");
    }
  }
}

double segment_distance(Point a, Point b, Point p, double& t_out, Point& closest_out) {
  const Point d = b - a;
  const double dd = dot(d, d);
  double t = 0.0;
  if (dd > 0.0) t = dot(p - a, d) / dd;
  t = std::clamp(t, 0.0, 1.0);
  const Point c = a + t * d;
  t_out = t;
  closest_out = c;
  return (p - c).norm();
}

double point_set_diameter(const std::vector<Point>& pts) {
  if (pts.size() < 2) return 0.0;
  // Monotone-chain hull, then pairwise scan on the (small) hull.
  std::vector<Point> s = pts;
  std::sort(s.begin(), s.end(), [](const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.size() < 2) return 0.0;
  std::vector<Point> hull(2 * s.size());
  std::size_t k = 0;
  for (const Point& p : s) {
    while (k >= 2 && cross2(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = s.rbegin() + 1; it != s.rend(); ++it) {
    while (k >= lower && cross2(hull[k - 1] - hull[k - 2], *it - hull[k - 2]) <= 0) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  double best2 = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    for (std::size_t j = i + 1; j < hull.size(); ++j) {
      best2 = std::max(best2, (hull[i] - hull[j]).norm2());
    }
  }
  return std::sqrt(best2);
}

DistanceIndex DistanceIndex::build(const Boundary& boundary) {
  boundary.validate();
  if (boundary.analytic()) {
    throw DomainError("DistanceIndex requires a polyline or lattice boundary");
  }
  DistanceIndex idx;
  idx.vertices_ = boundary.vertices;
  idx.open_ = boundary.open_curve();

  idx.bbox_ = BBox{idx.vertices_.front(), idx.vertices_.front()};
  for (const Point& v : idx.vertices_) idx.bbox_.expand(v);
  idx.diameter_ = point_set_diameter(idx.vertices_);

  const std::size_t nseg = idx.vertices_.size() - 1;
  std::vector<double> lengths(nseg);
  for (std::size_t i = 0; i < nseg; ++i) {
    lengths[i] = (idx.vertices_[i + 1] - idx.vertices_[i]).norm();
  }
  auto mid = lengths.begin() + static_cast<std::ptrdiff_t>(nseg / 2);
  std::nth_element(lengths.begin(), mid, lengths.end());
  const double median = *mid;
  idx.cell_ = std::max(median, idx.diameter_ / 1024.0);

  const Point ext = idx.bbox_.extent();
  idx.nx_ = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(ext.x / idx.cell_)));
  idx.ny_ = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(ext.y / idx.cell_)));

  auto cell_range = [&](double lo, double hi, std::int64_t n) {
    auto i0 = static_cast<std::int64_t>(std::floor(lo / idx.cell_));
    auto i1 = static_cast<std::int64_t>(std::floor(hi / idx.cell_));
    i0 = std::clamp<std::int64_t>(i0, 0, n - 1);
    i1 = std::clamp<std::int64_t>(i1, 0, n - 1);
    return std::pair<std::int64_t, std::int64_t>{i0, i1};
  };

  const std::size_t ncells = static_cast<std::size_t>(idx.nx_ * idx.ny_);
  std::vector<std::int32_t> counts(ncells, 0);
  for (std::size_t s = 0; s < nseg; ++s) {
    const Point a = idx.vertices_[s] - idx.bbox_.lo;
    const Point b = idx.vertices_[s + 1] - idx.bbox_.lo;
    auto [x0, x1] = cell_range(std::min(a.x, b.x), std::max(a.x, b.x), idx.nx_);
    auto [y0, y1] = cell_range(std::min(a.y, b.y), std::max(a.y, b.y), idx.ny_);
    for (std::int64_t cy = y0; cy <= y1; ++cy) {
      for (std::int64_t cx = x0; cx <= x1; ++cx) {
        ++counts[static_cast<std::size_t>(cy * idx.nx_ + cx)];
      }
    }
  }
  idx.cell_start_.assign(ncells + 1, 0);
  for (std::size_t c = 0; c < ncells; ++c) idx.cell_start_[c + 1] = idx.cell_start_[c] + counts[c];
  idx.cell_segs_.resize(static_cast<std::size_t>(idx.cell_start_.back()));
  std::vector<std::int32_t> fill(ncells, 0);
  for (std::size_t s = 0; s < nseg; ++s) {
    const Point a = idx.vertices_[s] - idx.bbox_.lo;
    const Point b = idx.vertices_[s + 1] - idx.bbox_.lo;
    auto [x0, x1] = cell_range(std::min(a.x, b.x), std::max(a.x, b.x), idx.nx_);
    auto [y0, y1] = cell_range(std::min(a.y, b.y), std::max(a.y, b.y), idx.ny_);
    for (std::int64_t cy = y0; cy <= y1; ++cy) {
      for (std::int64_t cx = x0; cx <= x1; ++cx) {
        const auto c = static_cast<std::size_t>(cy * idx.nx_ + cx);
        idx.cell_segs_[static_cast<std::size_t>(idx.cell_start_[c]) +
                       static_cast<std::size_t>(fill[c]++)] = static_cast<std::int32_t>(s);
      }
    }
  }
  return idx;
}

void DistanceIndex::range_check(Point p) const {
  // Contract is "within 8x the bounding box"; enforced with slack so that
  // flight engines censoring at r_esc = 4*diameter stay in range even after
  // a full-radius overshoot step.
  const Point c = bbox_.center();
  const double he = std::max(0.5 * bbox_.max_extent(), 0.5 * diameter_);
  const double allowed = 32.0 * he;
  if (std::abs(p.x - c.x) > allowed || std::abs(p.y - c.y) > allowed) {
    throw RangeError("query point is far outside the boundary bounding box");
  }
}

NearestResult DistanceIndex::nearest(Point p) const {
  range_check(p);
  const double inf = std::numeric_limits<double>::infinity();
  NearestResult best;
  best.distance = inf;
  best.segment_id = -1;

  const Point q = p - bbox_.lo;
  const auto cx = static_cast<std::int64_t>(std::floor(q.x / cell_));
  const auto cy = static_cast<std::int64_t>(std::floor(q.y / cell_));
  const std::int64_t rmax =
      std::max(std::max(cx, nx_ - 1 - cx), std::max(cy, ny_ - 1 - cy));

  auto visit_cell = [&](std::int64_t ix, std::int64_t iy) {
    if (ix < 0 || ix >= nx_ || iy < 0 || iy >= ny_) return;
    const auto c = static_cast<std::size_t>(iy * nx_ + ix);
    for (std::int32_t k = cell_start_[c]; k < cell_start_[c + 1]; ++k) {
      const std::int32_t s = cell_segs_[static_cast<std::size_t>(k)];
      double t;
      Point cl;
      const double d = segment_distance(vertices_[static_cast<std::size_t>(s)],
                                        vertices_[static_cast<std::size_t>(s) + 1], p, t, cl);
      if (d < best.distance || (d == best.distance && s < best.segment_id)) {
        best = {d, s, cl, t};
      }
    }
  };

  for (std::int64_t r = 0; r <= rmax; ++r) {
    if (best.segment_id >= 0) {
      // Cells on ring r are at least (r-1)*cell away from p.
      const double bound = static_cast<double>(r - 1) * cell_ * (1.0 - 1e-12);
      if (best.distance < bound) break;
    }
    if (r == 0) {
      visit_cell(cx, cy);
      continue;
    }
    for (std::int64_t i = -r; i <= r; ++i) {
      visit_cell(cx + i, cy - r);
      visit_cell(cx + i, cy + r);
    }
    for (std::int64_t j = -r + 1; j <= r - 1; ++j) {
      visit_cell(cx - r, cy + j);
      visit_cell(cx + r, cy + j);
    }
  }
  return best;
}

DistanceResult DistanceIndex::query(Point p) const {
  const NearestResult nr = nearest(p);
  return {nr.distance, nr.segment_id};
}

SideLabel DistanceIndex::side_of(Point p) const {
  const NearestResult nr = nearest(p);
  if (nr.distance == 0.0) return SideLabel::Ambiguous;
  const auto [a, b] = segment(nr.segment_id);
  if (open_) {
    if (nr.segment_id == 0 && nr.t == 0.0) return SideLabel::Ambiguous;
    if (static_cast<std::size_t>(nr.segment_id) == segment_count() - 1 && nr.t == 1.0) {
      return SideLabel::Ambiguous;
    }
  }
  const double cr = cross2(b - a, p - a);
  if (cr == 0.0) return SideLabel::Ambiguous;
  return cr > 0.0 ? SideLabel::Left : SideLabel::Right;
}

Scene::Scene(Boundary boundary) : boundary_(std::move(boundary)) {
  boundary_.validate();
  if (!boundary_.analytic()) index_.emplace(DistanceIndex::build(boundary_));
}

double Scene::distance(Point p) const {
  switch (boundary_.kind) {
    case BoundaryKind::AnalyticLine2D: return std::abs(p.y);
    case BoundaryKind::AnalyticPlane3D: return std::abs(p.z);
    default: return index_->query(p).distance;
  }
}

DistanceResult Scene::distance_with_id(Point p) const {
  if (boundary_.analytic()) return {distance(p), 0};
  return index_->query(p);
}

NearestResult Scene::nearest(Point p) const {
  switch (boundary_.kind) {
    case BoundaryKind::AnalyticLine2D: return {std::abs(p.y), 0, {p.x, 0.0, 0.0}, 0.0};
    case BoundaryKind::AnalyticPlane3D: return {std::abs(p.z), 0, {p.x, p.y, 0.0}, 0.0};
    default: return index_->nearest(p);
  }
}

SideLabel Scene::side_of(Point p) const {
  switch (boundary_.kind) {
    case BoundaryKind::AnalyticLine2D:
      if (p.y == 0.0) return SideLabel::Ambiguous;
      return p.y > 0.0 ? SideLabel::Left : SideLabel::Right;
    case BoundaryKind::AnalyticPlane3D:
      throw UnsupportedError("side_of is a 2D operation; plane scenes use the sign of z");
    default: return index_->side_of(p);
  }
}

SideLabel Scene::flight_side(Point p) const {
  if (boundary_.kind == BoundaryKind::AnalyticPlane3D) {
    if (p.z == 0.0) return SideLabel::Ambiguous;
    return p.z > 0.0 ? SideLabel::Left : SideLabel::Right;
  }
  return side_of(p);
}

double Scene::diameter() const {
  if (boundary_.analytic()) throw DomainError("analytic boundary has no finite diameter");
  return index_->diameter();
}

BBox Scene::bbox() const {
  if (boundary_.analytic()) throw DomainError("analytic boundary has no bounding box");
  return index_->bbox();
}

}  // namespace bflights
