#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bflights/common.hpp"

namespace bflights {

enum class BoundaryKind { AnalyticLine2D, AnalyticPlane3D, Polyline2D, LatticePath2D };

enum class SideLabel : std::uint8_t { Left, Right, Ambiguous };

const char* to_string(BoundaryKind kind);
BoundaryKind boundary_kind_from_string(const std::string& s);
char side_char(SideLabel side);

// A boundary curve (or analytic reference boundary). Polyline variants carry
// their vertices; analytic variants are the x-axis in 2D and the plane z=0
// in 3D.
struct Boundary {
  BoundaryKind kind = BoundaryKind::Polyline2D;
  std::vector<Point> vertices;

  int ambient_dim() const { return kind == BoundaryKind::AnalyticPlane3D ? 3 : 2; }
  bool analytic() const {
    return kind == BoundaryKind::AnalyticLine2D || kind == BoundaryKind::AnalyticPlane3D;
  }
  bool open_curve() const;
  std::size_t segment_count() const { return vertices.empty() ? 0 : vertices.size() - 1; }

  // Throws on invariant violations (empty vertex list, repeated lattice
  // sites, non-unit lattice steps, ...).
  void validate() const;

  static Boundary analytic_line2d() { return {BoundaryKind::AnalyticLine2D, {}}; }
  static Boundary analytic_plane3d() { return {BoundaryKind::AnalyticPlane3D, {}}; }
  static Boundary polyline2d(std::vector<Point> v) { return {BoundaryKind::Polyline2D, std::move(v)}; }
  static Boundary lattice_path2d(std::vector<Point> v) {
    return {BoundaryKind::LatticePath2D, std::move(v)};
  }
};

struct DistanceResult {
  double distance = 0.0;
  std::int32_t segment_id = 0;
};

struct NearestResult {
  double distance = 0.0;
  std::int32_t segment_id = 0;
  Point closest{};
  double t = 0.0;  // clamped parameter along the segment
};

// Distance from p to segment [a,b]; t_out/closest_out receive the clamped
// parameter and the nearest point. Shared by the index and by brute-force
// scans so both produce bit-identical results.
double segment_distance(Point a, Point b, Point p, double& t_out, Point& closest_out);

// Uniform spatial hash over boundary segments. Exact nearest queries: the
// grid only prunes, it never approximates. Immutable after build.
class DistanceIndex {
 public:
  static DistanceIndex build(const Boundary& boundary);

  DistanceResult query(Point p) const;
  NearestResult nearest(Point p) const;
  SideLabel side_of(Point p) const;

  double diameter() const { return diameter_; }
  double cell_size() const { return cell_; }
  const BBox& bbox() const { return bbox_; }
  std::size_t segment_count() const { return vertices_.size() - 1; }
  std::pair<Point, Point> segment(std::int32_t id) const {
    return {vertices_[static_cast<std::size_t>(id)], vertices_[static_cast<std::size_t>(id) + 1]};
  }
  bool open_curve() const { return open_; }

 private:
  void range_check(Point p) const;

  std::vector<Point> vertices_;
  bool open_ = true;
  BBox bbox_{};
  double diameter_ = 0.0;
  double cell_ = 1.0;
  std::int64_t nx_ = 1, ny_ = 1;
  std::vector<std::int32_t> cell_start_;  // CSR offsets, nx*ny+1
  std::vector<std::int32_t> cell_segs_;
};

// Facade over analytic and indexed boundaries: the distance oracle every
// other module consumes.
class Scene {
 public:
  explicit Scene(Boundary boundary);

  const Boundary& boundary() const { return boundary_; }
  const DistanceIndex* index() const { return index_ ? &*index_ : nullptr; }
  int dim() const { return boundary_.ambient_dim(); }
  bool finite() const { return !boundary_.analytic(); }

  double distance(Point p) const;
  DistanceResult distance_with_id(Point p) const;
  NearestResult nearest(Point p) const;

  // Sign of the cross product against the nearest segment direction.
  // 2D only; 3D scenes use flight_side (sign of z) instead.
  SideLabel side_of(Point p) const;
  SideLabel flight_side(Point p) const;

  double diameter() const;  // throws DomainError for analytic boundaries
  BBox bbox() const;        // throws DomainError for analytic boundaries

 private:
  Boundary boundary_;
  std::optional<DistanceIndex> index_;
};

// Exact diameter of a planar point set (convex hull + pairwise scan).
double point_set_diameter(const std::vector<Point>& pts);

}  // namespace bflights
