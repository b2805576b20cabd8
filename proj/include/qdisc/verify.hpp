#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qdisc {

struct VerifyOptions {
  std::uint64_t seed = 1;
  int samples = 50;
  int restarts = 64;  // restarts for every numerical search
  std::string dump_dir = ".";
};

struct InvariantCheck {
  std::string name;
  double tolerance = 0.0;
  double max_violation = 0.0;
  int cases = 0;
  bool passed = true;
  std::optional<std::uint64_t> offending_seed;  // sample seed of the worst failing case
  std::string dump_path;                        // state file of that case
};

struct VerifyReport {
  std::vector<InvariantCheck> checks;
  bool passed() const;
};

/// Runs every module invariant on seeded random states. Each sample draws
/// from its own stream, so a failing case is reproducible from its seed.
VerifyReport run_verification(const VerifyOptions& opts);

/// One line per invariant; contains no timing, so output is reproducible.
std::string format_verify_report(const VerifyReport& report);

}  // namespace qdisc
