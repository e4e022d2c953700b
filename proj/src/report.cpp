#include "bflights/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace bflights {

using nlohmann::json;

namespace {

void append_record(std::string& out, std::int64_t id, int stream, const FlightRecord& rec) {
  out += std::to_string(id);
  out += ',';
  out += std::to_string(stream);
  out += ',';
  out += format_double(rec.n);
  out += ',';
  out += format_double(rec.r);
  out += ',';
  out += side_char(rec.start_side);
  out += ',';
  out += side_char(rec.end_side);
  out += ',';
  out += rec.censored ? '1' : '0';
  out += '\n';
}

constexpr const char* kFlightHeader = "flight_id,worker,n,r,start_side,end_side,censored\n";

}  // namespace

FlightCsvWriter::FlightCsvWriter(const std::string& path) : out_(path) {
  if (!out_) throw IoError("cannot write " + path);
  out_ << kFlightHeader;
}

void FlightCsvWriter::accept(int stream, std::span<const FlightRecord> records) {
  std::string buf;
  buf.reserve(records.size() * 48);
  for (const FlightRecord& rec : records) append_record(buf, next_id_++, stream, rec);
  out_ << buf;
}

std::string flight_csv_string(int stream, std::span<const FlightRecord> records,
                              std::int64_t first_id) {
  std::string buf;
  buf.reserve(records.size() * 48);
  for (const FlightRecord& rec : records) append_record(buf, first_id++, stream, rec);
  return buf;
}

void write_histogram_csv(const TailHistogram& hist, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "bin_lo,bin_hi,count,density,ccdf\n";
  if (hist.nonempty_bins() == 0) return;
  const std::int32_t k0 = hist.k_min();
  const auto counts = hist.counts();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const auto k = k0 + static_cast<std::int32_t>(i);
    out << format_double(hist.edge(k)) << ',' << format_double(hist.edge(k + 1)) << ','
        << counts[i] << ',' << format_double(hist.density(k)) << ','
        << format_double(hist.ccdf(k)) << '\n';
  }
}

json histogram_to_json(const TailHistogram& hist) {
  json j;
  j["kind"] = to_string(hist.kind());
  j["ratio"] = hist.ratio();
  j["total"] = hist.total();
  j["nonpositive"] = hist.nonpositive();
  if (hist.nonempty_bins() > 0) {
    j["k_min"] = hist.k_min();
    j["counts"] = hist.counts();
  } else {
    j["k_min"] = 0;
    j["counts"] = json::array();
  }
  return j;
}

TailHistogram histogram_from_json(const json& j) {
  return TailHistogram::from_counts(tail_kind_from_string(j.at("kind").get<std::string>()),
                                    j.at("ratio").get<double>(), j.at("k_min").get<std::int32_t>(),
                                    j.at("counts").get<std::vector<std::uint64_t>>(),
                                    j.value("nonpositive", 0ull));
}

json fit_to_json(const TailFit& fit) {
  json j;
  j["kind"] = to_string(fit.kind);
  j["estimator"] = fit.estimator == TailEstimator::CcdfOls ? "ccdf-ols" : "density-ols";
  j["slope"] = fit.slope;
  j["density_exponent"] = fit.density_exponent;
  j["stderr"] = fit.stderr_;
  j["window"] = {fit.window.lo, fit.window.hi};
  j["n_used"] = fit.n_used;
  j["n_bins"] = fit.n_bins;
  return j;
}

json verdict_to_json(const Verdict& v) {
  json j;
  j["name"] = v.name;
  j["fitted"] = v.fitted;
  j["predicted"] = v.predicted;
  j["stderr"] = v.stderr_;
  j["tolerance"] = v.tolerance;
  j["pass"] = v.pass;
  return j;
}

json dimension_to_json(const DimensionEstimate& est) {
  json j;
  j["d"] = est.d;
  j["stderr"] = est.stderr_;
  j["eps_min"] = est.eps_min;
  j["eps_max"] = est.eps_max;
  j["method"] = est.method == DimensionMethod::Box ? "box" : "whitney";
  j["n_points"] = est.n_points;
  return j;
}

json stats_counters_to_json(const CampaignStats& stats) {
  json j;
  j["n_records"] = stats.n_records;
  j["n_censored"] = stats.n_censored;
  j["n_side_excluded"] = stats.n_side_excluded;
  j["n_used"] = stats.n_used;
  j["censored_fraction"] = stats.censored_fraction();
  return j;
}

void write_loglog_svg(const std::string& path, const std::vector<std::pair<double, double>>& pts,
                      double slope, double intercept, const std::string& title) {
  std::vector<std::pair<double, double>> lp;
  for (const auto& [x, y] : pts) {
    if (x > 0 && y > 0) lp.emplace_back(std::log10(x), std::log10(y));
  }
  if (lp.size() < 2) throw InsufficientDataError("svg needs at least two positive points");
  double xlo = lp[0].first, xhi = xlo, ylo = lp[0].second, yhi = ylo;
  for (const auto& [x, y] : lp) {
    xlo = std::min(xlo, x);
    xhi = std::max(xhi, x);
    ylo = std::min(ylo, y);
    yhi = std::max(yhi, y);
  }
  if (xhi == xlo) xhi = xlo + 1;
  if (yhi == ylo) yhi = ylo + 1;
  const double w = 640, h = 480, m = 56;
  auto px = [&](double x) { return m + (x - xlo) / (xhi - xlo) * (w - 2 * m); };
  auto py = [&](double y) { return h - m - (y - ylo) / (yhi - ylo) * (h - 2 * m); };

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";
  svg << "<text x='" << w / 2 << "' y='24' text-anchor='middle' font-size='14'>" << title
      << "</text>\n";
  svg << "<line x1='" << m << "' y1='" << h - m << "' x2='" << w - m << "' y2='" << h - m
      << "' stroke='black'/>\n";
  svg << "<line x1='" << m << "' y1='" << m << "' x2='" << m << "' y2='" << h - m
      << "' stroke='black'/>\n";
  for (int e = static_cast<int>(std::ceil(xlo)); e <= static_cast<int>(std::floor(xhi)); ++e) {
    svg << "<text x='" << px(e) << "' y='" << h - m + 18
        << "' text-anchor='middle' font-size='11'>1e" << e << "</text>\n";
  }
  for (int e = static_cast<int>(std::ceil(ylo)); e <= static_cast<int>(std::floor(yhi)); ++e) {
    svg << "<text x='" << m - 6 << "' y='" << py(e) + 4
        << "' text-anchor='end' font-size='11'>1e" << e << "</text>\n";
  }
  for (const auto& [x, y] : lp) {
    svg << "<circle cx='" << px(x) << "' cy='" << py(y) << "' r='2.4' fill='steelblue'/>\n";
  }
  // fitted line in natural-log coordinates: ln y = intercept + slope * ln x
  const double l10 = std::log(10.0);
  auto fit_y = [&](double x10) { return (intercept + slope * (x10 * l10)) / l10; };
  svg << "<line x1='" << px(xlo) << "' y1='" << py(fit_y(xlo)) << "' x2='" << px(xhi) << "' y2='"
      << py(fit_y(xhi)) << "' stroke='crimson' stroke-width='1.5'/>\n";
  svg << "<text x='" << w - m << "' y='" << m << "' text-anchor='end' font-size='12'>slope "
      << format_double(slope) << "</text>\n";
  svg << "</svg>\n";

  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << svg.str();
}

void write_survival_svg(const std::string& path, const TailHistogram& hist, const TailFit& fit,
                        const std::string& title) {
  std::vector<std::pair<double, double>> pts;
  if (hist.nonempty_bins() > 0) {
    const std::int32_t k0 = hist.k_min();
    const auto counts = hist.counts();
    for (std::size_t i = 0; i < counts.size(); ++i) {
      const auto k = k0 + static_cast<std::int32_t>(i);
      const double c = hist.ccdf(k);
      if (c > 0) pts.emplace_back(hist.edge(k), c);
    }
  }
  // intercept recovered from a central window point
  double intercept = 0.0;
  for (const auto& [x, y] : pts) {
    if (x >= fit.window.lo && x <= fit.window.hi) {
      intercept = std::log(y) - fit.slope * std::log(x);
      break;
    }
  }
  write_loglog_svg(path, pts, fit.slope, intercept, title);
}

}  // namespace bflights
