#include "bflights/fractalgen.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <vector>

#include "bflights/rng.hpp"

namespace bflights {

namespace {

constexpr double kSqrt3Half = 0.86602540378443864676;  // sin 60

struct Site {
  std::int64_t x, y;
};

// The 7 non-identity symmetries of the square lattice.
Site apply_symmetry(std::uint32_t g, Site d) {
  switch (g) {
    case 0: return {-d.y, d.x};    // rot 90
    case 1: return {-d.x, -d.y};   // rot 180
    case 2: return {d.y, -d.x};    // rot 270
    case 3: return {d.x, -d.y};    // mirror x
    case 4: return {-d.x, d.y};    // mirror y
    case 5: return {d.y, d.x};     // mirror diagonal
    default: return {-d.y, -d.x};  // mirror anti-diagonal
  }
}

std::uint64_t pack_site(Site s) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.x)) << 32) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.y));
}

std::uint64_t hash_u64(std::uint64_t k) {
  k ^= k >> 33;
  k *= 0xFF51AFD7ED558CCDull;
  k ^= k >> 33;
  k *= 0xC4CEB9FE1A85EC53ull;
  k ^= k >> 33;
  return k;
}

// Open-addressing site set with epoch stamping: one self-avoidance check per
// epoch, no clearing between attempts.
class EpochSet {
 public:
  explicit EpochSet(std::size_t max_keys) {
    std::size_t cap = 64;
    while (cap < max_keys * 4) cap <<= 1;
    keys_.resize(cap);
    stamps_.assign(cap, 0);
    mask_ = cap - 1;
  }

  void new_epoch() {
    if (++epoch_ == 0) {
      std::fill(stamps_.begin(), stamps_.end(), 0);
      epoch_ = 1;
    }
  }

  // false if the site was already inserted this epoch
  bool insert(Site s) {
    const std::uint64_t k = pack_site(s);
    std::size_t i = hash_u64(k) & mask_;
    while (stamps_[i] == epoch_) {
      if (keys_[i] == k) return false;
      i = (i + 1) & mask_;
    }
    stamps_[i] = epoch_;
    keys_[i] = k;
    return true;
  }

 private:
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> stamps_;
  std::size_t mask_ = 0;
  std::uint32_t epoch_ = 0;
};

}  // namespace

Boundary koch_generate(const KochConfig& cfg) {
  if (cfg.iterations < 0) throw DomainError("koch iterations must be >= 0");
  if (cfg.iterations > 10) throw SizeError("koch iterations > 10 (over ~1M segments)");
  std::vector<Point> v = {{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
  for (int it = 0; it < cfg.iterations; ++it) {
    std::vector<Point> next;
    next.reserve((v.size() - 1) * 4 + 1);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      const Point p = v[i];
      const Point q = v[i + 1];
      const Point d = {(q.x - p.x) / 3.0, (q.y - p.y) / 3.0, 0.0};
      const Point a = p + d;
      const Point b = {p.x + 2.0 * d.x, p.y + 2.0 * d.y, 0.0};
      // rotate d by +60 degrees: the bump points to the left of the travel direction
      const Point peak = {a.x + 0.5 * d.x - kSqrt3Half * d.y, a.y + kSqrt3Half * d.x + 0.5 * d.y,
                          0.0};
      next.push_back(p);
      next.push_back(a);
      next.push_back(peak);
      next.push_back(b);
    }
    next.push_back(v.back());
    v = std::move(next);
  }
  return Boundary::polyline2d(std::move(v));
}

struct PivotChain::Impl {
  std::vector<Site> path;
  Rng rng;
  EpochSet set;

  Impl(std::int64_t n_steps, std::uint64_t seed)
      : path(static_cast<std::size_t>(n_steps) + 1), rng(seed),
        set(static_cast<std::size_t>(n_steps) + 1) {
    for (std::size_t i = 0; i < path.size(); ++i) path[i] = {static_cast<std::int64_t>(i), 0};
  }

  bool attempt() {
    const std::size_t n = path.size() - 1;
    const auto p = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n)));
    const auto g = static_cast<std::uint32_t>(rng.below(7));
    const Site pivot = path[p];

    // Interleaved outward duplicate check: prefix sites and transformed
    // suffix sites share one epoch table, so the first cross-collision
    // rejects early. Each half is internally self-avoiding (isometry).
    set.new_epoch();
    set.insert(pivot);
    const std::size_t reach = std::max(p, n - p);
    for (std::size_t k = 1; k <= reach; ++k) {
      if (p >= k && !set.insert(path[p - k])) return false;
      if (p + k <= n) {
        const Site s = path[p + k];
        const Site t = apply_symmetry(g, {s.x - pivot.x, s.y - pivot.y});
        if (!set.insert({pivot.x + t.x, pivot.y + t.y})) return false;
      }
    }
    for (std::size_t i = p + 1; i <= n; ++i) {
      const Site t = apply_symmetry(g, {path[i].x - pivot.x, path[i].y - pivot.y});
      path[i] = {pivot.x + t.x, pivot.y + t.y};
    }
    return true;
  }
};

PivotChain::PivotChain(std::int64_t n_steps, std::uint64_t seed) {
  if (n_steps < 1) throw DomainError("saw n_steps must be >= 1");
  impl_ = std::make_unique<Impl>(n_steps, seed);
}
PivotChain::~PivotChain() = default;
PivotChain::PivotChain(PivotChain&&) noexcept = default;
PivotChain& PivotChain::operator=(PivotChain&&) noexcept = default;

bool PivotChain::attempt() { return impl_->attempt(); }

std::int64_t PivotChain::n_steps() const { return static_cast<std::int64_t>(impl_->path.size()) - 1; }

Boundary PivotChain::boundary() const {
  std::vector<Point> verts;
  verts.reserve(impl_->path.size());
  for (const Site& s : impl_->path) {
    verts.push_back({static_cast<double>(s.x), static_cast<double>(s.y), 0.0});
  }
  Boundary b = Boundary::lattice_path2d(std::move(verts));
  b.validate();
  return b;
}

Boundary saw_generate(const SawConfig& cfg) {
  if (cfg.n_steps < 1) throw DomainError("saw n_steps must be >= 1");
  if (cfg.n_pivot_attempts < 0) throw DomainError("saw n_pivot_attempts must be >= 0");

  PivotChain chain(cfg.n_steps, cfg.seed);
  // Equilibration from the straight path; the attempt cap guards against a
  // pathologically low acceptance rate.
  const std::int64_t burnin_target = 10 * cfg.n_steps;
  std::int64_t accepted = 0;
  for (std::int64_t a = 0; accepted < burnin_target && a < 200 * cfg.n_steps; ++a) {
    if (chain.attempt()) ++accepted;
  }
  for (std::int64_t a = 0; a < cfg.n_pivot_attempts; ++a) chain.attempt();
  return chain.boundary();
}

Boundary line_reference(int ambient_dim) {
  if (ambient_dim == 2) return Boundary::analytic_line2d();
  if (ambient_dim == 3) return Boundary::analytic_plane3d();
  throw UnsupportedError("line_reference supports ambient dimension 2 or 3");
}

}  // namespace bflights
