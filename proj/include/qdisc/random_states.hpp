#pragma once

#include <cstdint>
#include <random>

#include "qdisc/qstate.hpp"

namespace qdisc {

using Rng = std::mt19937_64;

/// Independent, reproducible stream for (seed, stream) pairs.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

ComplexMatrix random_ginibre(Rng& rng, Eigen::Index rows, Eigen::Index cols);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix random_unitary(Rng& rng, int dim);

PureState random_pure_state(Rng& rng, const Dims& dims);

/// G G^dagger / tr with G a dim x rank Ginibre block; rank is exact with
/// probability one.
DensityMatrix random_density_matrix(Rng& rng, const Dims& dims, int rank);

}  // namespace qdisc
