#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bflights/flights.hpp"

namespace bflights {

enum class TailKind { PsiN, ThetaR, Survival };

const char* to_string(TailKind kind);
TailKind tail_kind_from_string(const std::string& s);

// Geometric-bin histogram: bin k covers [ratio^k, ratio^(k+1)). Built
// streaming; constant memory per nonempty bin. Nonpositive values are
// tallied separately so counts always sum to the accepted total.
class TailHistogram {
 public:
  explicit TailHistogram(TailKind kind, double ratio = kDefaultRatio);
  static TailHistogram from_counts(TailKind kind, double ratio, std::int32_t k_min,
                                   std::vector<std::uint64_t> counts,
                                   std::uint64_t nonpositive = 0);

  void add(double value);
  void merge(const TailHistogram& other);

  TailKind kind() const { return kind_; }
  double ratio() const { return ratio_; }
  std::uint64_t total() const { return total_; }
  std::uint64_t nonpositive() const { return nonpositive_; }

  // materialized contiguous view [k_min, k_min + size)
  std::int32_t k_min() const;
  std::vector<std::uint64_t> counts() const;
  double edge(std::int32_t k) const;           // ratio^k
  std::uint64_t count_at(std::int32_t k) const;

  // P(X >= ratio^k) among accepted records
  double ccdf(std::int32_t k) const;
  // count / (total * bin width)
  double density(std::int32_t k) const;

  std::size_t nonempty_bins() const { return bins_.size(); }

  static constexpr double kDefaultRatio = 1.0905077326652577;  // 2^(1/8)

 private:
  TailKind kind_;
  double ratio_;
  double log_ratio_;
  std::map<std::int32_t, std::uint64_t> bins_;
  std::uint64_t total_ = 0;
  std::uint64_t nonpositive_ = 0;
};

struct AccumulateFilters {
  bool same_side_only = false;
  bool drop_censored = true;
};

struct CampaignStats {
  TailHistogram psi{TailKind::PsiN};
  TailHistogram theta{TailKind::ThetaR};
  TailHistogram survival{TailKind::Survival};
  std::uint64_t n_records = 0;
  std::uint64_t n_censored = 0;
  std::uint64_t n_side_excluded = 0;
  std::uint64_t n_used = 0;
  double censored_fraction() const {
    return n_records ? static_cast<double>(n_censored) / static_cast<double>(n_records) : 0.0;
  }
};

// Streaming accumulator for psi(n), theta(r) and the survival function.
// Mergeable across workers (bin-wise addition).
class Accumulator {
 public:
  explicit Accumulator(AccumulateFilters filters, double ratio = TailHistogram::kDefaultRatio);
  void add(const FlightRecord& rec);
  void add_all(std::span<const FlightRecord> recs) {
    for (const auto& r : recs) add(r);
  }
  void merge(const Accumulator& other);
  // throws InsufficientDataError when no record survived the filters
  CampaignStats finalize() const;

 private:
  AccumulateFilters filters_;
  CampaignStats stats_;
};

enum class TailEstimator { CcdfOls, DensityOls };

struct FitWindow {
  double lo = 0.0;
  double hi = 0.0;
};

struct TailFit {
  TailKind kind = TailKind::ThetaR;
  TailEstimator estimator = TailEstimator::CcdfOls;
  double slope = 0.0;             // raw log-log regression slope
  double density_exponent = 0.0;  // exponent of the density power law
  double stderr_ = 0.0;
  FitWindow window{};
  std::uint64_t n_used = 0;
  int n_bins = 0;
};

// ccdf-ols: OLS slope of log P(X>r) vs log r over bin edges in the window;
// the density exponent is slope - 1. density-ols: OLS on log-binned density
// at geometric bin midpoints. Needs >= 6 nonempty bins inside the window.
TailFit fit_tail(const TailHistogram& hist, FitWindow window,
                 TailEstimator estimator = TailEstimator::CcdfOls);

double bootstrap_stderr(const TailHistogram& hist, FitWindow window, TailEstimator estimator,
                        int resamples, std::uint64_t seed);

struct TailPrediction {
  double d = 0.0;
  int d_e = 2;
  double alpha = 0.0;               // (d - d_e + 4)/2
  double beta = 0.0;                // d - d_e + 3
  double survival_exponent = 0.0;   // d_e - d - 2
};

TailPrediction predict(double d, int d_e);

struct Verdict {
  std::string name;
  double fitted = 0.0;
  double predicted = 0.0;
  double stderr_ = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// |fitted - predicted| <= tolerance + 2*stderr; the fit kind selects which
// predicted exponent it is held against.
Verdict compare(const TailFit& fit, const TailPrediction& pred, double tolerance);

}  // namespace bflights
