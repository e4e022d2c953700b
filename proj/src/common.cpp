#include "bflights/common.hpp"

#include <charconv>

namespace bflights {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  LineFit f;
  f.n = static_cast<int>(x.size());
  if (x.size() != y.size() || x.size() < 2) {
    throw InsufficientDataError("fit_line needs at least two points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0) throw InsufficientDataError("fit_line: degenerate abscissa");
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (x.size() > 2) {
    double ssr = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - (f.intercept + f.slope * x[i]);
      ssr += r * r;
    }
    f.slope_stderr = std::sqrt(ssr / (n - 2.0) / sxx);
  }
  return f;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace bflights
