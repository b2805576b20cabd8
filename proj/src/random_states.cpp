#include "qdisc/random_states.hpp"

#include <cmath>

namespace qdisc {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x9e3779b9u};
  return Rng(seq);
}

ComplexMatrix random_ginibre(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

ComplexMatrix random_unitary(Rng& rng, int dim) {
  const ComplexMatrix g = random_ginibre(rng, dim, dim);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(k) *= d / mag;
  }
  return q;
}

PureState random_pure_state(Rng& rng, const Dims& dims) {
  const auto n = static_cast<Eigen::Index>(total_dim(dims));
  ComplexVector v = random_ginibre(rng, n, 1).col(0);
  return PureState::normalized(dims, std::move(v));
}

DensityMatrix random_density_matrix(Rng& rng, const Dims& dims, int rank) {
  const auto n = static_cast<Eigen::Index>(total_dim(dims));
  if (rank < 1 || rank > n) throw ContractViolation("random_density_matrix: rank must be in [1, dim]");
  const ComplexMatrix g = random_ginibre(rng, n, rank);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(dims, std::move(rho));
}

}  // namespace qdisc
