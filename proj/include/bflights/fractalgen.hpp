#pragma once

#include <cstdint>
#include <memory>

#include "bflights/geometry.hpp"

namespace bflights {

struct KochConfig {
  int iterations = 0;  // triadic variant; vertex count 4^k + 1
};

struct SawConfig {
  std::int64_t n_steps = 1;
  std::int64_t n_pivot_attempts = 0;  // measured attempts after burn-in
  std::uint64_t seed = 0;
};

// Triadic Koch prefractal on [0,1]: 4^k segments of length 3^-k.
Boundary koch_generate(const KochConfig& cfg);

// Pivot Markov chain on self-avoiding lattice paths: uniform pivot site,
// uniform element of the 7 non-identity lattice symmetries applied to the
// path suffix, accepted iff the transformed path is self-avoiding.
class PivotChain {
 public:
  PivotChain(std::int64_t n_steps, std::uint64_t seed);
  ~PivotChain();
  PivotChain(PivotChain&&) noexcept;
  PivotChain& operator=(PivotChain&&) noexcept;

  // One pivot attempt; true when the move was accepted.
  bool attempt();
  std::int64_t n_steps() const;
  Boundary boundary() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Pivot-algorithm self-avoiding walk on Z^2. Starts from the straight path,
// equilibrates (burn-in discards the first 10*n_steps accepted moves), then
// applies n_pivot_attempts further pivots. Same (seed, config) gives the
// identical path.
Boundary saw_generate(const SawConfig& cfg);

// Analytic reference boundary with d = d_e - 1.
Boundary line_reference(int ambient_dim);

}  // namespace bflights
