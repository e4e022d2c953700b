#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace bflights {

// Point / displacement in ambient dimension 2 or 3. The z component is
// ignored for 2D scenes; the ambient dimension lives on the scene.
struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Point operator*(double s, Point p) { return {s * p.x, s * p.y, s * p.z}; }

  double norm2() const { return x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }

  friend bool operator==(const Point&, const Point&) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double cross2(Point a, Point b) { return a.x * b.y - a.y * b.x; }

struct BBox {
  Point lo{0, 0, 0};
  Point hi{0, 0, 0};

  void expand(Point p) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    lo.z = std::min(lo.z, p.z);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
    hi.z = std::max(hi.z, p.z);
  }
  Point center() const { return {0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y), 0.5 * (lo.z + hi.z)}; }
  Point extent() const { return hi - lo; }
  double max_extent() const {
    const Point e = extent();
    return std::max(e.x, std::max(e.y, e.z));
  }
};

// Error taxonomy; the CLI maps these onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class RangeError : public Error {
 public:
  using Error::Error;
};
class SizeError : public Error {
 public:
  using Error::Error;
};
class DomainError : public Error {
 public:
  using Error::Error;
};
class UnsupportedError : public Error {
 public:
  using Error::Error;
};
class UsageError : public Error {
 public:
  using Error::Error;
};
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};
class IoError : public Error {
 public:
  using Error::Error;
};

// Ordinary least squares y = intercept + slope * x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  int n = 0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace bflights
