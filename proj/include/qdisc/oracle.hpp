#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "qdisc/measurement.hpp"

namespace qdisc {

struct SearchConfig {
  std::uint64_t seed = 0;
  int restarts = 64;
  int max_iterations = 2000;
  double objective_tolerance = 1e-8;
  int povm_elements = 0;  // 0: d^2 for a d-dimensional measured party
  int threads = 0;        // 0: hardware concurrency

  void validate() const;
};

struct SearchResult {
  double value;
  std::variant<MeasurementSet, Ensemble> argmin;
  bool converged;
  double spread;
};

/// exp(iH) with H Hermitian built from d^2 reals: the diagonal first, then
/// (re, im) of each strictly upper entry in row-major order.
ComplexMatrix unitary_from_generator(std::span<const double> params, int dim);

/// Polar-normalized rows x cols isometry W (W^dagger W)^{-1/2} from
/// 2*rows*cols reals (re, im interleaved, row-major). Empty if W is singular.
std::optional<ComplexMatrix> isometry_from_params(std::span<const double> params, int rows, int cols);

/// Qubit basis {cos(t/2)|0> + e^{ip} sin(t/2)|1>, and its orthogonal partner}.
ComplexMatrix bloch_basis(double theta, double phi);

/// Minimum of the average conditional entropy of the unmeasured party over
/// orthonormal bases of the measured party. Always an upper bound on the
/// true projective minimum.
SearchResult projective_search(const DensityMatrix& rho_ab, int measured, const SearchConfig& cfg = {});

/// Same over rank-one POVMs with cfg.povm_elements outcomes. One restart
/// starts from the projective optimum, so the value never exceeds it.
SearchResult povm_search(const DensityMatrix& rho_ab, int measured, const SearchConfig& cfg = {});

/// Minimal average entanglement over `components`-member pure-state
/// decompositions of a bipartite state, reached through components x rank
/// isometries acting on the eigen-ensemble.
SearchResult ensemble_eof_search(const DensityMatrix& rho, int components, const SearchConfig& cfg = {});

/// Ensemble of relative states of subsystems 1.. of the purification after
/// U_AE acts on (A, ancilla E in |0>) and A x E is measured in the product
/// basis. Outcomes are ordered k_A * ancilla_dim + k_E.
Ensemble dilated_ensemble(const Purification& purification, const ComplexMatrix& unitary_ae, int ancilla_dim);

/// Kraus operators A_k = <k_E| U_AE |0_E> acting on A.
std::vector<ComplexMatrix> dilation_kraus(const ComplexMatrix& unitary_ae, int dim_a, int ancilla_dim);

/// Ensemble produced by the refined POVM {|k'><k'| A_k}, outcomes ordered
/// k' * n + k.
Ensemble partitioned_povm_ensemble(const Purification& purification, const std::vector<ComplexMatrix>& kraus);

}  // namespace qdisc
