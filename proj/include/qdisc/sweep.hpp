#pragma once

#include <map>
#include <string>
#include <vector>

namespace qdisc {

enum class Family { three_qubit, rank2, phase_damping };

Family parse_family(const std::string& name);
std::string to_string(Family f);

struct SweepAxis {
  std::string name;
  double start = 0.0;
  double end = 1.0;
  int points = 2;

  double value(int i) const;
};

/// Parameter grid over one state family. Families and their parameters:
///   three-qubit:   lambda0..lambda4 (rescaled to unit norm), phi
///   rank2:         p1 (p2 = 1 - p1), phi or sin2_phi, theta1, theta2
///   phase-damping: alpha_sq, p or gamma_t
/// Unset parameters take family defaults. The first axis varies slowest.
struct SweepSpec {
  Family family = Family::rank2;
  std::map<std::string, double> fixed;
  std::vector<SweepAxis> axes;
  std::string output_path;

  /// Throws ContractViolation naming the offending field.
  void validate() const;
};

/// sin2_phi over [0, 1] at p1 = p2 = 1/2, theta1 = 0, theta2 = pi/3.
SweepSpec fig1_preset(int points = 400);
/// (alpha_sq, p) over [0, 1]^2 for the phase-damping family.
SweepSpec fig2_preset(int points = 101);

struct SweepTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Points are evaluated concurrently; rows come back in grid order.
SweepTable run_sweep(const SweepSpec& spec, int threads = 0);

/// '.' decimal, 9 significant digits, ',' separator, LF line endings.
std::string format_csv_value(double v);
std::string to_csv(const SweepTable& table);
void write_csv(const SweepTable& table, const std::string& path);

}  // namespace qdisc
