#pragma once

#include <vector>

#include "qdisc/qstate.hpp"

namespace qdisc {

/// Subsystem indices forming side A; the complement is side B.
struct Bipartition {
  std::vector<int> side_a{0};
};

/// h(x) = -x log2 x - (1-x) log2 (1-x), with h(0) = h(1) = 0.
double binary_entropy(double x);

/// Wootters concurrence max{0, l1 - l2 - l3 - l4} of a two-qubit state.
/// Throws ContractViolation unless dims are {2, 2}.
double concurrence_two_qubit(const DensityMatrix& rho);

/// Descending square roots of the spectrum of rho (sy x sy) rho* (sy x sy),
/// computed as singular values of the Wootters tau matrix.
RealVector wootters_lambdas(const DensityMatrix& rho);

/// x = (1 + sqrt(1 - c^2)) / 2, the larger Schmidt weight of a pure state of
/// concurrence c.
double eof_x_parameter(double c);

/// Two-qubit entanglement of formation h(x) for concurrence c in [0, 1].
double eof_from_concurrence(double c);

/// Von Neumann entropy of the side-A marginal of a pure state.
double entropy_entanglement(const PureState& psi, const Bipartition& split = {});

double mutual_information(const DensityMatrix& rho, const Bipartition& split = {});

struct PairMeasures {
  double concurrence;
  double eof;
  double x_parameter;
  double mutual_information;
};

PairMeasures pair_measures(const DensityMatrix& rho);

}  // namespace qdisc
