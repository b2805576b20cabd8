#include "qdisc/pair_measures.hpp"

#include <algorithm>
#include <cmath>

namespace qdisc {

namespace {

// Eigenvalues of rho at or below this are treated as exact zeros when building
// the tau matrix; their square roots would otherwise inject ~1e-8 noise.
constexpr double kTauCutoff = 1e-13;

std::vector<int> complement(const std::vector<int>& side, std::size_t n) {
  std::vector<bool> in(n, false);
  for (int k : side) {
    if (k < 0 || static_cast<std::size_t>(k) >= n) throw ContractViolation("bipartition: index out of range");
    in[static_cast<std::size_t>(k)] = true;
  }
  std::vector<int> out;
  for (std::size_t k = 0; k < n; ++k)
    if (!in[k]) out.push_back(static_cast<int>(k));
  if (out.empty() || side.empty()) throw ContractViolation("bipartition: both sides must be nonempty");
  return out;
}

}  // namespace

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

RealVector wootters_lambdas(const DensityMatrix& rho) {
  if (rho.dims() != Dims{2, 2}) throw ContractViolation("concurrence_two_qubit: state must have dims {2, 2}");
  const Spectrum sp = hermitian_eig(rho.matrix());
  int rank = 0;
  while (rank < 4 && sp.eigenvalues(rank) > kTauCutoff) ++rank;

  // Columns x_i = sqrt(mu_i) v_i; tau = X^T (sy x sy) X is complex symmetric
  // and its singular values are the Wootters lambdas.
  ComplexMatrix x(4, rank);
  for (int i = 0; i < rank; ++i) x.col(i) = std::sqrt(sp.eigenvalues(i)) * sp.eigenvectors.col(i);
  ComplexMatrix flip = ComplexMatrix::Zero(4, 4);
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;

  RealVector out = RealVector::Zero(4);
  if (rank > 0) {
    const ComplexMatrix tau = x.transpose() * flip * x;
    Eigen::JacobiSVD<ComplexMatrix> svd(tau);
    const RealVector sv = svd.singularValues();
    out.head(sv.size()) = sv;
  }
  std::sort(out.data(), out.data() + out.size(), std::greater<>());
  return out;
}

double concurrence_two_qubit(const DensityMatrix& rho) {
  const RealVector l = wootters_lambdas(rho);
  return std::clamp(l(0) - l(1) - l(2) - l(3), 0.0, 1.0);
}

double eof_x_parameter(double c) {
  if (c < -1e-12 || c > 1.0 + 1e-12) throw ContractViolation("eof_from_concurrence: concurrence must lie in [0, 1]");
  c = std::clamp(c, 0.0, 1.0);
  return 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
}

double eof_from_concurrence(double c) { return binary_entropy(eof_x_parameter(c)); }

double entropy_entanglement(const PureState& psi, const Bipartition& split) {
  complement(split.side_a, psi.dims().size());
  const ComplexMatrix rho_a = reduced_density(psi, split.side_a);
  return std::max(0.0, entropy_bits(rho_a));
}

double mutual_information(const DensityMatrix& rho, const Bipartition& split) {
  const auto side_b = complement(split.side_a, rho.dims().size());
  const double s_a = entropy_bits(partial_trace(rho.matrix(), rho.dims(), split.side_a));
  const double s_b = entropy_bits(partial_trace(rho.matrix(), rho.dims(), side_b));
  return s_a + s_b - entropy_bits(rho.matrix());
}

PairMeasures pair_measures(const DensityMatrix& rho) {
  const double c = concurrence_two_qubit(rho);
  return PairMeasures{c, eof_from_concurrence(c), eof_x_parameter(c), mutual_information(rho)};
}

}  // namespace qdisc
