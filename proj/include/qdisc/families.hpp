#pragma once

#include <array>

#include "qdisc/discord.hpp"

namespace qdisc {

// Canonical three-qubit pure states
//   l0|000> + l1 e^{i phi}|010> + l2|011> + l3|110> + l4|111>
// with subsystem order A, B, C.

struct ThreeQubitParams {
  std::array<double, 5> lambda{1.0, 0.0, 0.0, 0.0, 0.0};
  double phi = 0.0;

  /// Throws ContractViolation unless lambda_i >= 0 and sum lambda_i^2 = 1
  /// within 1e-12.
  void validate() const;
  /// Rescales lambda to unit norm.
  static ThreeQubitParams normalized(std::array<double, 5> lambda, double phi);
};

PureState three_qubit_state(const ThreeQubitParams& p);

struct PairConcurrences {
  double ab;
  double bc;
  double ac;
};

/// Closed forms C_AB = 2 l0 l3, C_BC = 2 l0 l2, C_AC = 2|l2 l3 - l1 l4 e^{i phi}|.
PairConcurrences three_qubit_concurrences(const ThreeQubitParams& p);

enum class QubitPair { AB, BC, AC };

struct ThreeQubitReport {
  CorrelationReport report;
  // l2 == l3 case: both candidate closed forms for Q_AB = E(AB).
  bool symmetric = false;
  double delta_literal = 0.0;   // sqrt(1 - l0^2 l2^2)
  double delta_composed = 0.0;  // sqrt(1 - 4 l0^2 l2^2), from C_AB through h(x)
  double eof_literal = 0.0;
  double eof_composed = 0.0;
};

/// Discord and EoF of one pair with the third qubit as purifying ancilla.
/// `measured` is 0 for the first listed qubit of the pair, 1 for the second.
ThreeQubitReport three_qubit_report(const ThreeQubitParams& p, QubitPair pair, int measured);

// Rank-2 family on a 4 x 2 system: p1|psi1><psi1| + p2|psi2><psi2| with
//   psi1 = cos(phi)|00> + sin(phi)|11>
//   psi2 = sin(phi)|a3 0> + cos(phi)|a4 1>
//   a3 = cos(t1)|1> + sin(t1)|2>,  a4 = cos(t2)|0> + sin(t2)|3>.

struct Rank2Params {
  double p1 = 0.5;
  double p2 = 0.5;
  double phi = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;

  void validate() const;
};

DensityMatrix rank2_state(const Rank2Params& p);

/// sqrt(p1)|psi1>|0_C> + sqrt(p2)|psi2>|1_C> on dims {4, 2, 2}.
PureState rank2_purification(const Rank2Params& p);

/// The X-shaped two-qubit marginal on (B, C) of the purification.
DensityMatrix rank2_bc_xstate(const Rank2Params& p);

struct Rank2Report {
  std::array<double, 4> rho_a_spectrum{};
  std::array<double, 4> wootters_lambdas{};
  std::array<double, 3> chis{};
  double chi = 0.0;
  int chi_branch = 0;  // 1-based index of the |chi_i| attaining the maximum
  double s_a = 0.0;
  double s_ab = 0.0;
  double concurrence_bc = 0.0;
  double eof_bc = 0.0;  // = S(B|A)
  double discord = 0.0;
  double eof_ab = 0.0;
  bool eof_closed_form = false;  // p1 = p2 = 1/2 Bell-diagonal route
};

Rank2Report rank2_report(const Rank2Params& p);

/// Measured-on-C conditional entropy of a two-qubit X state on (B, C):
/// polar-angle scan of 721 points in the two azimuthal planes phi = 0 and
/// phi = pi/2, then golden-section refinement.
double xstate_conditional_entropy(const DensityMatrix& x_state);

// Phase damping of a|00> + b|11> on one qubit: coherences decay by
// e^{-gamma t} = 1 - p.

struct PhaseDampingParams {
  double alpha_sq = 0.5;
  double p = 0.0;

  static PhaseDampingParams from_gamma_t(double alpha_sq, double gamma_t);
  double decay() const { return 1.0 - p; }
  void validate() const;
};

DensityMatrix phase_damping_state(const PhaseDampingParams& p);

struct PhaseDampingReport {
  CorrelationReport report;
  double concurrence = 0.0;  // 2|ab| e^{-gamma t}
  std::array<double, 2> rho_ab_spectrum{};
  double eta = 0.0;  // E - Q
  // Concurrences of the other two pairs in the numerical purification.
  double concurrence_bc = 0.0;
  double concurrence_ac = 0.0;
};

PhaseDampingReport phase_damping_report(const PhaseDampingParams& p);

}  // namespace qdisc
