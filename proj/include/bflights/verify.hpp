#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bflights {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 0;          // 0 -> preset default
  std::int64_t flights = 0;        // 0 -> preset default
  int workers = 0;                 // 0 -> hardware
  std::string out_dir;             // empty -> no artifact files
};

// Acceptance scenarios (one-command reproductions at desk scale).
CriterionResult verify_line2d(const VerifyOptions& opt);
CriterionResult verify_plane3d(const VerifyOptions& opt);
CriterionResult verify_koch(const VerifyOptions& opt);
CriterionResult verify_saw(const VerifyOptions& opt);

// Structural acceptance checks.
CriterionResult verify_prop22(const VerifyOptions& opt);
CriterionResult verify_level_hit(const VerifyOptions& opt);
CriterionResult verify_determinism(const VerifyOptions& opt);
CriterionResult verify_oracles(const VerifyOptions& opt);

// Named preset for the CLI `verify` subcommand.
std::vector<CriterionResult> run_preset(const std::string& preset, const VerifyOptions& opt);

std::vector<CriterionResult> run_all_criteria(const VerifyOptions& opt);

}  // namespace bflights
