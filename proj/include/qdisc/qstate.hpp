#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qdisc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Ordered subsystem dimensions of a composite Hilbert space, e.g. {4, 2}.
using Dims = std::vector<int>;

/// Thrown when an operation is called outside its documented preconditions.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a route cannot handle the shape of the input (e.g. a state
/// whose purification does not reduce to a pair of qubits).
class UnsupportedShape : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kPositivity = 1e-10;
inline constexpr double kPureNorm = 1e-12;
inline constexpr double kRankCutoff = 1e-12;
inline constexpr double kEntropyCutoff = 1e-12;
}  // namespace tol

std::size_t total_dim(const Dims& dims);

class PureState {
 public:
  /// Throws ContractViolation unless the squared norm is within 1e-12 of 1.
  PureState(Dims dims, ComplexVector amplitudes);

  /// Normalizes `amplitudes` first; throws if the norm is zero.
  static PureState normalized(Dims dims, ComplexVector amplitudes);

  const Dims& dims() const { return dims_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }

 private:
  Dims dims_;
  ComplexVector amplitudes_;
};

/// Hermitian, positive semidefinite, unit-trace operator with recorded
/// subsystem dimensions. Construction validates all three invariants.
class DensityMatrix {
 public:
  DensityMatrix(Dims dims, ComplexMatrix matrix);

  static DensityMatrix from_pure(const PureState& psi);

  const Dims& dims() const { return dims_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

 private:
  Dims dims_;
  ComplexMatrix matrix_;
};

/// Eigenpairs with eigenvalues sorted in descending order; eigenvectors are
/// the matching columns.
struct Spectrum {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Pure state on dims {source dims..., d_C} whose marginal over the last
/// subsystem is the source density matrix; d_C equals the source rank.
struct Purification {
  PureState state;
  int source_rank;
};

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
PureState tensor(const PureState& a, const PureState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Marginal on the subsystems listed in `keep`, in the order they appear in
/// `dims` (not the order of `keep`).
ComplexMatrix partial_trace(const ComplexMatrix& rho, const Dims& dims, const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

/// Marginal of |psi><psi| on `keep`, computed without forming the full projector.
ComplexMatrix reduced_density(const PureState& psi, const std::vector<int>& keep);
DensityMatrix partial_trace(const PureState& psi, const std::vector<int>& keep);

/// Reorders subsystems: result subsystem i is input subsystem order[i].
PureState permute_subsystems(const PureState& psi, const std::vector<int>& order);

/// Throws ContractViolation if `m` is not Hermitian within 1e-10.
Spectrum hermitian_eig(const ComplexMatrix& m);

/// Descending eigenvalues only; no Hermiticity check (hot path).
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// Shannon entropy in bits of a probability vector; entries below the
/// cutoff contribute nothing.
double shannon_bits(const RealVector& probabilities);

/// -tr(m log2 m) for a Hermitian PSD matrix of any trace; used by the
/// optimizers where conditional states are not yet normalized.
double entropy_bits(const ComplexMatrix& m);

double von_neumann_entropy(const DensityMatrix& rho);

/// Number of eigenvalues strictly above `cutoff`.
int numerical_rank(const DensityMatrix& rho, double cutoff = tol::kRankCutoff);

Purification purify(const DensityMatrix& rho, double rank_cutoff = tol::kRankCutoff);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix projector(const ComplexVector& v);

// State files: {"dims": [...], "re": [row-major], "im": [row-major]}.

class StateFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

DensityMatrix parse_state_json(const std::string& text);
std::string to_state_json(const DensityMatrix& rho);
DensityMatrix load_state_file(const std::string& path);
void save_state_file(const DensityMatrix& rho, const std::string& path);

}  // namespace qdisc
