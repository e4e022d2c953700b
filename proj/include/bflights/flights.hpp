#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "bflights/geometry.hpp"
#include "bflights/rng.hpp"
#include "bflights/whitney.hpp"

namespace bflights {

enum class EngineKind { Lattice, Wos };

struct StartSpec {
  enum class Mode { WhitneyUniform, LatticeAdjacentUniform };
  Mode mode = Mode::WhitneyUniform;
  double eps = 0.0;  // vicinity scale (whitney mode)
};

struct EngineConfig {
  EngineKind engine = EngineKind::Wos;
  double delta = 0.0;       // WoS absorption distance; default eps/100
  std::int64_t n_max = 1000000;
  double r_esc = 0.0;       // escape radius; default 4x curve diameter
  std::uint64_t seed = 0;   // master seed
  std::int64_t n_flights = 0;
};

// One flight. n is the lattice step count or the accumulated WoS pseudo-time
// (sum of R_i^2/d_e, the mean ball exit time); steps always counts jumps.
struct FlightRecord {
  Point start{};
  Point end{};
  double n = 0.0;
  double r = 0.0;
  SideLabel start_side = SideLabel::Ambiguous;
  SideLabel end_side = SideLabel::Ambiguous;
  bool censored = false;
  std::uint32_t steps = 0;
};

// Absorption set of a lattice path: every site at L1 distance <= 1 from a
// path vertex. Flat flag array over the padded path bounding box with
// precomputed side labels.
class LatticeAbsorber {
 public:
  explicit LatticeAbsorber(const Scene& scene);

  bool absorbing(std::int64_t x, std::int64_t y) const {
    const std::uint64_t ix = static_cast<std::uint64_t>(x - x0_);
    const std::uint64_t iy = static_cast<std::uint64_t>(y - y0_);
    if (ix >= static_cast<std::uint64_t>(w_) || iy >= static_cast<std::uint64_t>(h_)) return false;
    return flags_[iy * static_cast<std::uint64_t>(w_) + ix] != 0;
  }
  bool on_path(std::int64_t x, std::int64_t y) const {
    const std::uint64_t ix = static_cast<std::uint64_t>(x - x0_);
    const std::uint64_t iy = static_cast<std::uint64_t>(y - y0_);
    if (ix >= static_cast<std::uint64_t>(w_) || iy >= static_cast<std::uint64_t>(h_)) return false;
    return flags_[iy * static_cast<std::uint64_t>(w_) + ix] == 2;
  }
  SideLabel side(std::int64_t x, std::int64_t y) const {
    return static_cast<SideLabel>(sides_[static_cast<std::uint64_t>(y - y0_) *
                                             static_cast<std::uint64_t>(w_) +
                                         static_cast<std::uint64_t>(x - x0_)]);
  }
  // flag==1 sites (unit distance from the path, not on it), scan order
  std::vector<Point> adjacent_sites() const;

 private:
  std::int64_t x0_ = 0, y0_ = 0, w_ = 0, h_ = 0;
  std::vector<std::uint8_t> flags_;  // 0 free, 1 adjacent, 2 on path
  std::vector<std::uint8_t> sides_;
};

// Start-point sampler fixed for a whole campaign.
class StartSampler {
 public:
  static StartSampler whitney_uniform(const WhitneyDecomposition& dec, double eps,
                                      const Scene& scene);
  static StartSampler lattice_adjacent(const LatticeAbsorber& absorber);

  const std::vector<Point>& candidates() const { return points_; }
  const Point& sample(Rng& rng) const { return points_[rng.below(points_.size())]; }

 private:
  std::vector<Point> points_;
};

FlightRecord run_flight_wos(const Scene& scene, Point start, const EngineConfig& cfg, Rng& rng);
FlightRecord run_flight_lattice(const Scene& scene, const LatticeAbsorber& absorber, Point start,
                                const EngineConfig& cfg, Rng& rng);

// Fraction of WoS flights from whitney-uniform starts at level eps that reach
// boundary distance >= r before absorption at delta = eps/100.
double level_hit_experiment(const WhitneyDecomposition& dec, const Scene& scene, double eps,
                            double r, std::int64_t n_flights, std::uint64_t seed);

struct CampaignSummary {
  std::int64_t n_records = 0;
  std::int64_t n_errors = 0;
};

// Campaign sink; spans arrive in deterministic global order with their
// stream id. Stream seeds depend only on the master seed and the stream
// index, so any worker count reproduces the identical record sequence.
using RecordSink = std::function<void(int stream, std::span<const FlightRecord>)>;

inline constexpr int kVirtualStreams = 64;

CampaignSummary run_campaign(const Scene& scene, const StartSampler& starts,
                             const LatticeAbsorber* absorber, const EngineConfig& cfg, int workers,
                             const RecordSink& sink);

}  // namespace bflights
