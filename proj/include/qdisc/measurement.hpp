#pragma once

#include <variant>
#include <vector>

#include "qdisc/qstate.hpp"

namespace qdisc {

/// Orthonormal basis {|k>} on one subsystem; projectors are |k><k|.
struct ProjectiveMeasurement {
  int subsystem = 0;
  ComplexMatrix basis;  // columns are the basis vectors

  /// Throws ContractViolation unless the columns are orthonormal within 1e-10.
  void validate() const;
};

/// Rank-one POVM {v_k v_k^dagger} with sum_k v_k v_k^dagger = I.
struct RankOnePOVM {
  int subsystem = 0;
  ComplexMatrix vectors;  // d x n, column k is v_k

  /// Throws ContractViolation unless completeness holds within 1e-8.
  void validate() const;
  static RankOnePOVM from_projective(const ProjectiveMeasurement& m);
};

using MeasurementSet = std::variant<ProjectiveMeasurement, RankOnePOVM>;

struct Ensemble {
  std::vector<double> probabilities;
  std::vector<PureState> states;

  ComplexMatrix reconstruct() const;
  /// Max entrywise deviation of sum_k p_k |psi_k><psi_k| from `target`.
  double reconstruction_error(const ComplexMatrix& target) const;
};

/// Unnormalized conditional state of the unmeasured party of a bipartite
/// state after outcome v: (v^dagger x I) rho (v x I) for measured = 0, and the
/// mirrored contraction for measured = 1.
ComplexMatrix conditional_state(const ComplexMatrix& rho, const Dims& dims, int measured, const ComplexVector& v);

/// sum_k p_k S(rho_k) for rank-one outcomes given as the columns of `vectors`.
double average_conditional_entropy(const ComplexMatrix& rho, const Dims& dims, int measured, const ComplexMatrix& vectors);

double average_conditional_entropy(const DensityMatrix& rho, const MeasurementSet& m);

/// Post-measurement ensemble of relative states of the remaining parties of
/// a pure state when `subsystem` is measured with rank-one outcomes.
Ensemble relative_state_ensemble(const PureState& psi, int subsystem, const ComplexMatrix& vectors);

}  // namespace qdisc
