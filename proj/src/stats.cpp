#include "bflights/stats.hpp"

#include <algorithm>
#include <cmath>

namespace bflights {

const char* to_string(TailKind kind) {
  switch (kind) {
    case TailKind::PsiN: return "psi_n";
    case TailKind::ThetaR: return "theta_r";
    case TailKind::Survival: return "survival";
  }
  return "?";
}

TailKind tail_kind_from_string(const std::string& s) {
  if (s == "psi_n" || s == "psi") return TailKind::PsiN;
  if (s == "theta_r" || s == "theta") return TailKind::ThetaR;
  if (s == "survival") return TailKind::Survival;
  throw UsageError("unknown tail kind: " + s);
}

TailHistogram::TailHistogram(TailKind kind, double ratio) : kind_(kind), ratio_(ratio) {
  if (!(ratio > 1.0)) throw DomainError("histogram ratio must exceed 1");
  log_ratio_ = std::log(ratio);
}

TailHistogram TailHistogram::from_counts(TailKind kind, double ratio, std::int32_t k_min,
                                         std::vector<std::uint64_t> counts,
                                         std::uint64_t nonpositive) {
  TailHistogram h(kind, ratio);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    h.bins_[k_min + static_cast<std::int32_t>(i)] = counts[i];
    h.total_ += counts[i];
  }
  h.nonpositive_ = nonpositive;
  h.total_ += nonpositive;
  return h;
}

void TailHistogram::add(double value) {
  ++total_;
  if (!(value > 0.0)) {
    ++nonpositive_;
    return;
  }
  auto k = static_cast<std::int32_t>(std::floor(std::log(value) / log_ratio_));
  while (std::pow(ratio_, k + 1) <= value) ++k;
  while (std::pow(ratio_, k) > value) --k;
  ++bins_[k];
}

void TailHistogram::merge(const TailHistogram& other) {
  if (other.ratio_ != ratio_ || other.kind_ != kind_) {
    throw UsageError("histogram merge needs identical kind and ratio");
  }
  for (const auto& [k, c] : other.bins_) bins_[k] += c;
  total_ += other.total_;
  nonpositive_ += other.nonpositive_;
}

std::int32_t TailHistogram::k_min() const {
  if (bins_.empty()) throw InsufficientDataError("empty histogram");
  return bins_.begin()->first;
}

std::vector<std::uint64_t> TailHistogram::counts() const {
  if (bins_.empty()) return {};
  const std::int32_t k0 = bins_.begin()->first;
  const std::int32_t k1 = bins_.rbegin()->first;
  std::vector<std::uint64_t> out(static_cast<std::size_t>(k1 - k0 + 1), 0);
  for (const auto& [k, c] : bins_) out[static_cast<std::size_t>(k - k0)] = c;
  return out;
}

double TailHistogram::edge(std::int32_t k) const { return std::pow(ratio_, k); }

std::uint64_t TailHistogram::count_at(std::int32_t k) const {
  const auto it = bins_.find(k);
  return it == bins_.end() ? 0 : it->second;
}

double TailHistogram::ccdf(std::int32_t k) const {
  if (total_ == 0) return 0.0;
  std::uint64_t tail = 0;
  for (auto it = bins_.lower_bound(k); it != bins_.end(); ++it) tail += it->second;
  return static_cast<double>(tail) / static_cast<double>(total_);
}

double TailHistogram::density(std::int32_t k) const {
  if (total_ == 0) return 0.0;
  const double width = edge(k + 1) - edge(k);
  return static_cast<double>(count_at(k)) / (static_cast<double>(total_) * width);
}

Accumulator::Accumulator(AccumulateFilters filters, double ratio)
    : filters_(filters),
      stats_{TailHistogram(TailKind::PsiN, ratio), TailHistogram(TailKind::ThetaR, ratio),
             TailHistogram(TailKind::Survival, ratio)} {}

void Accumulator::add(const FlightRecord& rec) {
  ++stats_.n_records;
  if (rec.censored) {
    ++stats_.n_censored;
    if (filters_.drop_censored) return;
  }
  if (filters_.same_side_only) {
    if (rec.start_side == SideLabel::Ambiguous || rec.end_side == SideLabel::Ambiguous ||
        rec.start_side != rec.end_side) {
      ++stats_.n_side_excluded;
      return;
    }
  }
  ++stats_.n_used;
  stats_.psi.add(rec.n);
  stats_.theta.add(rec.r);
  stats_.survival.add(rec.r);
}

void Accumulator::merge(const Accumulator& other) {
  stats_.psi.merge(other.stats_.psi);
  stats_.theta.merge(other.stats_.theta);
  stats_.survival.merge(other.stats_.survival);
  stats_.n_records += other.stats_.n_records;
  stats_.n_censored += other.stats_.n_censored;
  stats_.n_side_excluded += other.stats_.n_side_excluded;
  stats_.n_used += other.stats_.n_used;
}

CampaignStats Accumulator::finalize() const {
  if (stats_.n_used == 0) throw InsufficientDataError("no records survived the filters");
  return stats_;
}

namespace {

struct WindowBins {
  std::vector<std::int32_t> ks;
  int nonempty = 0;
  std::uint64_t n_used = 0;
};

WindowBins window_bins(const TailHistogram& hist, FitWindow window) {
  if (!(window.lo > 0.0) || !(window.hi > window.lo)) {
    throw UsageError("fit window must satisfy 0 < lo < hi");
  }
  WindowBins wb;
  if (hist.total() == 0) return wb;
  const std::int32_t k0 = hist.k_min();
  const auto counts = hist.counts();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const auto k = k0 + static_cast<std::int32_t>(i);
    const double lo = hist.edge(k);
    if (lo < window.lo * (1.0 - 1e-12) || lo > window.hi * (1.0 + 1e-12)) continue;
    wb.ks.push_back(k);
    if (counts[i] > 0) {
      ++wb.nonempty;
      wb.n_used += counts[i];
    }
  }
  return wb;
}

}  // namespace

TailFit fit_tail(const TailHistogram& hist, FitWindow window, TailEstimator estimator) {
  const WindowBins wb = window_bins(hist, window);
  if (wb.nonempty < 6) {
    throw InsufficientDataError("fit_tail needs >= 6 nonempty bins inside the window");
  }
  std::vector<double> xs, ys;
  xs.reserve(wb.ks.size());
  ys.reserve(wb.ks.size());
  if (estimator == TailEstimator::CcdfOls) {
    for (const std::int32_t k : wb.ks) {
      const double c = hist.ccdf(k);
      if (c <= 0.0) continue;
      xs.push_back(std::log(hist.edge(k)));
      ys.push_back(std::log(c));
    }
  } else {
    for (const std::int32_t k : wb.ks) {
      const double dens = hist.density(k);
      if (dens <= 0.0) continue;
      xs.push_back(std::log(std::sqrt(hist.edge(k) * hist.edge(k + 1))));
      ys.push_back(std::log(dens));
    }
  }
  if (xs.size() < 2) throw InsufficientDataError("fit_tail: too few usable bins");
  const LineFit lf = fit_line(xs, ys);
  TailFit fit;
  fit.kind = hist.kind();
  fit.estimator = estimator;
  fit.slope = lf.slope;
  fit.density_exponent = estimator == TailEstimator::CcdfOls ? lf.slope - 1.0 : lf.slope;
  fit.stderr_ = lf.slope_stderr;
  fit.window = window;
  fit.n_used = wb.n_used;
  fit.n_bins = lf.n;
  return fit;
}

namespace {

std::uint64_t poisson_draw(Rng& rng, double mean) {
  if (mean <= 0.0) return 0;
  if (mean < 30.0) {
    const double limit = std::exp(-mean);
    double prod = rng.uniform01();
    std::uint64_t k = 0;
    while (prod > limit) {
      prod *= rng.uniform01();
      ++k;
    }
    return k;
  }
  // normal approximation, adequate for resampling counts
  const double u1 = std::max(rng.uniform01(), 1e-300);
  const double u2 = rng.uniform01();
  const double g = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  const double v = mean + std::sqrt(mean) * g;
  return v <= 0.0 ? 0 : static_cast<std::uint64_t>(std::llround(v));
}

}  // namespace

double bootstrap_stderr(const TailHistogram& hist, FitWindow window, TailEstimator estimator,
                        int resamples, std::uint64_t seed) {
  if (resamples < 2) throw UsageError("bootstrap needs at least 2 resamples");
  const auto counts = hist.counts();
  const std::int32_t k0 = hist.k_min();
  Rng rng(mix_seed(seed, 0xB007));
  std::vector<double> slopes;
  slopes.reserve(static_cast<std::size_t>(resamples));
  for (int b = 0; b < resamples; ++b) {
    // Poisson bootstrap over the bins
    std::vector<std::uint64_t> res(counts.size(), 0);
    for (std::size_t i = 0; i < counts.size(); ++i) {
      res[i] = poisson_draw(rng, static_cast<double>(counts[i]));
    }
    const TailHistogram rh =
        TailHistogram::from_counts(hist.kind(), hist.ratio(), k0, std::move(res));
    try {
      slopes.push_back(fit_tail(rh, window, estimator).density_exponent);
    } catch (const InsufficientDataError&) {
      // skip degenerate resamples
    }
  }
  if (slopes.size() < 2) throw InsufficientDataError("bootstrap: too few valid resamples");
  double mean = 0;
  for (double s : slopes) mean += s;
  mean /= static_cast<double>(slopes.size());
  double var = 0;
  for (double s : slopes) var += (s - mean) * (s - mean);
  return std::sqrt(var / static_cast<double>(slopes.size() - 1));
}

TailPrediction predict(double d, int d_e) {
  if (!(d >= 0.0) || !(d <= static_cast<double>(d_e))) {
    throw DomainError("predict needs 0 <= d <= d_e");
  }
  TailPrediction p;
  p.d = d;
  p.d_e = d_e;
  p.alpha = (d - static_cast<double>(d_e) + 4.0) / 2.0;
  p.beta = d - static_cast<double>(d_e) + 3.0;
  p.survival_exponent = static_cast<double>(d_e) - d - 2.0;
  return p;
}

Verdict compare(const TailFit& fit, const TailPrediction& pred, double tolerance) {
  Verdict v;
  v.stderr_ = fit.stderr_;
  v.tolerance = tolerance;
  switch (fit.kind) {
    case TailKind::PsiN:
      v.name = "alpha";
      v.fitted = -fit.density_exponent;
      v.predicted = pred.alpha;
      break;
    case TailKind::ThetaR:
      v.name = "beta";
      v.fitted = -fit.density_exponent;
      v.predicted = pred.beta;
      break;
    case TailKind::Survival:
      v.name = "survival_exponent";
      v.fitted = fit.slope;
      v.predicted = pred.survival_exponent;
      break;
    default:
      throw UsageError("compare: unknown fit kind");
  }
  v.pass = std::abs(v.fitted - v.predicted) <= tolerance + 2.0 * fit.stderr_;
  return v;
}

}  // namespace bflights
