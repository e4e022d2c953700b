#include "bflights/flights.hpp"

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <map>
#include <mutex>
#include <thread>

#include "bflights/parallel.hpp"

namespace bflights {

namespace {

void validate_engine(const EngineConfig& cfg) {
  if (cfg.n_flights < 0) throw DomainError("n_flights must be >= 0");
  if (cfg.n_max < 1) throw DomainError("n_max must be >= 1");
  if (cfg.engine == EngineKind::Wos && !(cfg.delta > 0.0)) {
    throw DomainError("wos engine needs delta > 0");
  }
  if (!(cfg.r_esc > 0.0)) throw DomainError("r_esc must be positive");
}

}  // namespace

LatticeAbsorber::LatticeAbsorber(const Scene& scene) {
  if (scene.boundary().kind != BoundaryKind::LatticePath2D) {
    throw DomainError("lattice absorber needs a lattice-path2d boundary");
  }
  const auto& verts = scene.boundary().vertices;
  const BBox bb = scene.bbox();
  x0_ = static_cast<std::int64_t>(std::llround(bb.lo.x)) - 1;
  y0_ = static_cast<std::int64_t>(std::llround(bb.lo.y)) - 1;
  w_ = static_cast<std::int64_t>(std::llround(bb.hi.x)) + 1 - x0_ + 1;
  h_ = static_cast<std::int64_t>(std::llround(bb.hi.y)) + 1 - y0_ + 1;
  flags_.assign(static_cast<std::size_t>(w_ * h_), 0);
  auto at = [&](std::int64_t x, std::int64_t y) -> std::uint8_t& {
    return flags_[static_cast<std::size_t>((y - y0_) * w_ + (x - x0_))];
  };
  for (const Point& v : verts) {
    at(static_cast<std::int64_t>(std::llround(v.x)), static_cast<std::int64_t>(std::llround(v.y))) =
        2;
  }
  static constexpr std::int64_t kDx[4] = {1, -1, 0, 0};
  static constexpr std::int64_t kDy[4] = {0, 0, 1, -1};
  for (const Point& v : verts) {
    const auto x = static_cast<std::int64_t>(std::llround(v.x));
    const auto y = static_cast<std::int64_t>(std::llround(v.y));
    for (int k = 0; k < 4; ++k) {
      auto& f = at(x + kDx[k], y + kDy[k]);
      if (f == 0) f = 1;
    }
  }
  sides_.assign(flags_.size(), static_cast<std::uint8_t>(SideLabel::Ambiguous));
  for (std::int64_t y = y0_; y < y0_ + h_; ++y) {
    for (std::int64_t x = x0_; x < x0_ + w_; ++x) {
      const std::size_t i = static_cast<std::size_t>((y - y0_) * w_ + (x - x0_));
      if (flags_[i] == 1) {
        sides_[i] = static_cast<std::uint8_t>(
            scene.side_of({static_cast<double>(x), static_cast<double>(y), 0.0}));
      }
    }
  }
}

std::vector<Point> LatticeAbsorber::adjacent_sites() const {
  std::vector<Point> out;
  for (std::int64_t y = y0_; y < y0_ + h_; ++y) {
    for (std::int64_t x = x0_; x < x0_ + w_; ++x) {
      if (flags_[static_cast<std::size_t>((y - y0_) * w_ + (x - x0_))] == 1) {
        out.push_back({static_cast<double>(x), static_cast<double>(y), 0.0});
      }
    }
  }
  return out;
}

StartSampler StartSampler::whitney_uniform(const WhitneyDecomposition& dec, double eps,
                                           const Scene& scene) {
  if (scene.finite() && eps > scene.diameter() / 4.0) {
    throw DomainError("start eps must be <= diameter/4");
  }
  const WhitneyLevel level = dec.level_cubes(eps);
  if (level.cubes.empty()) throw RangeError("no whitney cubes at the requested level");
  StartSampler s;
  s.points_.reserve(level.cubes.size());
  for (const WhitneyCube& q : level.cubes) s.points_.push_back(dec.cube_center(q));
  return s;
}

StartSampler StartSampler::lattice_adjacent(const LatticeAbsorber& absorber) {
  StartSampler s;
  s.points_ = absorber.adjacent_sites();
  if (s.points_.empty()) throw RangeError("lattice path has no adjacent start sites");
  return s;
}

FlightRecord run_flight_wos(const Scene& scene, Point start, const EngineConfig& cfg, Rng& rng) {
  const int dim = scene.dim();
  FlightRecord rec;
  rec.start = start;
  rec.start_side = scene.flight_side(start);
  Point p = start;
  double tau = 0.0;
  std::uint32_t steps = 0;
  for (;;) {
    if ((p - start).norm() > cfg.r_esc) {
      rec.censored = true;
      rec.end = p;
      rec.end_side = scene.flight_side(p);
      break;
    }
    const double d = scene.distance(p);
    if (d < cfg.delta) {
      rec.censored = false;
      rec.end = scene.nearest(p).closest;
      rec.end_side = scene.flight_side(p);  // side of the last off-boundary position
      break;
    }
    if (steps >= cfg.n_max) {
      rec.censored = true;
      rec.end = p;
      rec.end_side = scene.flight_side(p);
      break;
    }
    p = p + d * random_unit(rng, dim);
    tau += d * d / static_cast<double>(dim);
    ++steps;
  }
  rec.n = tau;
  rec.steps = steps;
  rec.r = (rec.end - start).norm();
  return rec;
}

FlightRecord run_flight_lattice(const Scene& scene, const LatticeAbsorber& absorber, Point start,
                                const EngineConfig& cfg, Rng& rng) {
  FlightRecord rec;
  rec.start = start;
  const auto sx = static_cast<std::int64_t>(std::llround(start.x));
  const auto sy = static_cast<std::int64_t>(std::llround(start.y));
  rec.start_side = absorber.absorbing(sx, sy) ? absorber.side(sx, sy) : scene.side_of(start);

  static constexpr std::int64_t kDx[4] = {1, -1, 0, 0};
  static constexpr std::int64_t kDy[4] = {0, 0, 1, -1};
  const double resc2 = cfg.r_esc * cfg.r_esc;
  std::int64_t x = sx, y = sy;
  std::int64_t steps = 0;
  std::uint64_t bits = 0;
  int bits_left = 0;
  for (;;) {
    if (bits_left == 0) {
      bits = rng.next();
      bits_left = 32;
    }
    const auto dir = static_cast<int>(bits & 3);
    bits >>= 2;
    --bits_left;
    x += kDx[dir];
    y += kDy[dir];
    ++steps;
    if (absorber.absorbing(x, y)) {
      rec.censored = false;
      rec.end = {static_cast<double>(x), static_cast<double>(y), 0.0};
      // A site on the path itself is reachable only by the first step from
      // the start, so the approach side is the start side.
      rec.end_side = absorber.on_path(x, y) ? rec.start_side : absorber.side(x, y);
      break;
    }
    const double ddx = static_cast<double>(x - sx);
    const double ddy = static_cast<double>(y - sy);
    if (ddx * ddx + ddy * ddy >= resc2 || steps >= cfg.n_max) {
      rec.censored = true;
      rec.end = {static_cast<double>(x), static_cast<double>(y), 0.0};
      rec.end_side = scene.side_of(rec.end);
      break;
    }
  }
  rec.n = static_cast<double>(steps);
  rec.steps = static_cast<std::uint32_t>(std::min<std::int64_t>(steps, 0xFFFFFFFF));
  rec.r = (rec.end - rec.start).norm();
  return rec;
}

double level_hit_experiment(const WhitneyDecomposition& dec, const Scene& scene, double eps,
                            double r, std::int64_t n_flights, std::uint64_t seed) {
  if (eps == r) return 1.0;  // already at the level
  if (!(eps < r)) throw DomainError("level_hit_experiment needs eps < r");
  if (scene.finite() && !(r < scene.diameter() / 2.0)) {
    throw DomainError("level_hit_experiment needs r < diameter/2");
  }
  if (n_flights < 1) throw DomainError("level_hit_experiment needs n_flights >= 1");
  const StartSampler starts = StartSampler::whitney_uniform(dec, eps, scene);
  const double delta = eps / 100.0;
  const int dim = scene.dim();
  Rng rng(mix_seed(seed, 0x4c564c48u));
  std::int64_t hits = 0;
  for (std::int64_t f = 0; f < n_flights; ++f) {
    Point p = starts.sample(rng);
    for (std::int64_t step = 0; step < 1000000; ++step) {
      const double d = scene.distance(p);
      if (d >= r) {
        ++hits;
        break;
      }
      if (d < delta) break;
      p = p + d * random_unit(rng, dim);
    }
  }
  return static_cast<double>(hits) / static_cast<double>(n_flights);
}

CampaignSummary run_campaign(const Scene& scene, const StartSampler& starts,
                             const LatticeAbsorber* absorber, const EngineConfig& cfg, int workers,
                             const RecordSink& sink) {
  validate_engine(cfg);
  if (cfg.engine == EngineKind::Lattice && absorber == nullptr) {
    throw UsageError("lattice campaign needs a lattice absorber");
  }
  const std::int64_t n = cfg.n_flights;
  CampaignSummary summary;
  if (n == 0) return summary;

  const int nthreads = std::max(1, std::min<int>(resolve_workers(workers), kVirtualStreams));
  const int lookahead = std::max(4, 2 * nthreads);

  std::mutex mu;
  std::condition_variable cv;
  std::map<int, std::pair<std::vector<FlightRecord>, std::int64_t>> done;
  int drain_head = 0;
  int next_stream = 0;
  std::exception_ptr error;

  auto make_chunk = [&](int v, std::vector<FlightRecord>& out) -> std::int64_t {
    const std::int64_t b = n * v / kVirtualStreams;
    const std::int64_t e = n * (v + 1) / kVirtualStreams;
    out.clear();
    out.reserve(static_cast<std::size_t>(e - b));
    Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(v)));
    std::int64_t errors = 0;
    for (std::int64_t i = b; i < e; ++i) {
      const Point start = starts.sample(rng);
      try {
        out.push_back(cfg.engine == EngineKind::Wos
                          ? run_flight_wos(scene, start, cfg, rng)
                          : run_flight_lattice(scene, *absorber, start, cfg, rng));
      } catch (const Error&) {
        ++errors;  // campaign keeps going; errors are tallied in the summary
      }
    }
    return errors;
  };

  auto worker_body = [&]() {
    std::vector<FlightRecord> buffer;
    for (;;) {
      int v;
      {
        std::unique_lock<std::mutex> lock(mu);
        if (error || next_stream >= kVirtualStreams) return;
        v = next_stream++;
        cv.wait(lock, [&] { return error || v < drain_head + lookahead; });
        if (error) return;
      }
      std::int64_t errors = 0;
      try {
        errors = make_chunk(v, buffer);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
        cv.notify_all();
        return;
      }
      std::unique_lock<std::mutex> lock(mu);
      done[v] = {std::move(buffer), errors};
      buffer = {};
      while (!done.empty() && done.begin()->first == drain_head) {
        auto node = done.extract(done.begin());
        auto& [records, errs] = node.mapped();
        summary.n_records += static_cast<std::int64_t>(records.size());
        summary.n_errors += errs;
        lock.unlock();
        try {
          if (sink) sink(node.key(), records);
        } catch (...) {
          lock.lock();
          if (!error) error = std::current_exception();
          cv.notify_all();
          return;
        }
        lock.lock();
        ++drain_head;
        cv.notify_all();
      }
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(nthreads) - 1);
  for (int t = 1; t < nthreads; ++t) threads.emplace_back(worker_body);
  worker_body();
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
  return summary;
}

}  // namespace bflights
