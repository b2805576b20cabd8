#include "qdisc/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qdisc {

namespace {

void check_dims(const Dims& dims, std::size_t size, const char* what) {
  if (dims.empty()) throw ContractViolation(std::string(what) + ": empty subsystem dimensions");
  for (int d : dims) {
    if (d < 1) throw ContractViolation(std::string(what) + ": subsystem dimension must be >= 1");
  }
  if (total_dim(dims) != size) {
    std::ostringstream msg;
    msg << what << ": product of dims (" << total_dim(dims) << ") does not match size " << size;
    throw ContractViolation(msg.str());
  }
}

// Row-major strides: index = sum_k digit_k * stride_k.
std::vector<std::size_t> strides_of(const Dims& dims) {
  std::vector<std::size_t> strides(dims.size());
  std::size_t s = 1;
  for (std::size_t k = dims.size(); k-- > 0;) {
    strides[k] = s;
    s *= static_cast<std::size_t>(dims[k]);
  }
  return strides;
}

// For a kept/traced split, full_index[kept][traced] as a flat table.
struct SplitIndex {
  std::size_t kept_dim = 1;
  std::size_t traced_dim = 1;
  std::vector<std::size_t> full;  // kept_dim * traced_dim entries
};

SplitIndex split_index(const Dims& dims, const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(dims.size(), false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw ContractViolation("partial_trace: subsystem index out of range");
    if (kept[static_cast<std::size_t>(k)]) throw ContractViolation("partial_trace: duplicate subsystem index");
    kept[static_cast<std::size_t>(k)] = true;
  }
  if (keep.empty()) throw ContractViolation("partial_trace: keep set must be nonempty");

  const auto strides = strides_of(dims);
  std::vector<int> kept_axes;
  std::vector<int> traced_axes;
  for (int k = 0; k < n; ++k) (kept[static_cast<std::size_t>(k)] ? kept_axes : traced_axes).push_back(k);

  SplitIndex out;
  for (int k : kept_axes) out.kept_dim *= static_cast<std::size_t>(dims[static_cast<std::size_t>(k)]);
  for (int k : traced_axes) out.traced_dim *= static_cast<std::size_t>(dims[static_cast<std::size_t>(k)]);

  auto offset = [&](const std::vector<int>& axes, std::size_t flat) {
    std::size_t off = 0;
    for (std::size_t j = axes.size(); j-- > 0;) {
      const auto ax = static_cast<std::size_t>(axes[j]);
      const auto d = static_cast<std::size_t>(dims[ax]);
      off += (flat % d) * strides[ax];
      flat /= d;
    }
    return off;
  };

  out.full.resize(out.kept_dim * out.traced_dim);
  for (std::size_t i = 0; i < out.kept_dim; ++i) {
    const std::size_t oi = offset(kept_axes, i);
    for (std::size_t t = 0; t < out.traced_dim; ++t) out.full[i * out.traced_dim + t] = oi + offset(traced_axes, t);
  }
  return out;
}

Dims kept_dims(const Dims& dims, const std::vector<int>& keep) {
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  Dims out;
  for (int k : sorted) out.push_back(dims[static_cast<std::size_t>(k)]);
  return out;
}

}  // namespace

std::size_t total_dim(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         [](std::size_t acc, int d) { return acc * static_cast<std::size_t>(d); });
}

PureState::PureState(Dims dims, ComplexVector amplitudes) : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
  check_dims(dims_, static_cast<std::size_t>(amplitudes_.size()), "PureState");
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > tol::kPureNorm) {
    std::ostringstream msg;
    msg << "PureState: squared norm " << norm2 << " is not within 1e-12 of 1";
    throw ContractViolation(msg.str());
  }
}

PureState PureState::normalized(Dims dims, ComplexVector amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0)) throw ContractViolation("PureState: zero vector cannot be normalized");
  amplitudes /= n;
  return PureState(std::move(dims), std::move(amplitudes));
}

DensityMatrix::DensityMatrix(Dims dims, ComplexMatrix matrix) : dims_(std::move(dims)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw ContractViolation("DensityMatrix: matrix is not square");
  check_dims(dims_, static_cast<std::size_t>(matrix_.rows()), "DensityMatrix");
  for (Eigen::Index i = 0; i < matrix_.size(); ++i) {
    if (!std::isfinite(matrix_.data()[i].real()) || !std::isfinite(matrix_.data()[i].imag()))
      throw ContractViolation("DensityMatrix: non-finite entry");
  }
  const double herm = max_abs_diff(matrix_, matrix_.adjoint());
  if (herm > tol::kHermitian) {
    std::ostringstream msg;
    msg << "DensityMatrix: not Hermitian (max |M - M^dagger| = " << herm << " > 1e-10)";
    throw ContractViolation(msg.str());
  }
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > tol::kTrace) {
    std::ostringstream msg;
    msg << "DensityMatrix: trace " << tr << " is not within 1e-10 of 1";
    throw ContractViolation(msg.str());
  }
  const RealVector ev = hermitian_eigenvalues(matrix_);
  const double min_ev = ev.size() ? ev.minCoeff() : 0.0;
  if (min_ev < -tol::kPositivity) {
    std::ostringstream msg;
    msg << "DensityMatrix: not positive semidefinite (smallest eigenvalue " << min_ev << " < -1e-10)";
    throw ContractViolation(msg.str());
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.dims(), projector(psi.amplitudes()));
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

PureState tensor(const PureState& a, const PureState& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  ComplexVector v = tensor(ComplexMatrix(a.amplitudes()), ComplexMatrix(b.amplitudes()));
  return PureState::normalized(std::move(dims), std::move(v));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix(std::move(dims), tensor(a.matrix(), b.matrix()));
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const Dims& dims, const std::vector<int>& keep) {
  if (rho.rows() != rho.cols()) throw ContractViolation("partial_trace: matrix is not square");
  check_dims(dims, static_cast<std::size_t>(rho.rows()), "partial_trace");
  const SplitIndex s = split_index(dims, keep);
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(s.kept_dim), static_cast<Eigen::Index>(s.kept_dim));
  for (std::size_t i = 0; i < s.kept_dim; ++i)
    for (std::size_t j = 0; j < s.kept_dim; ++j) {
      Complex acc{0.0, 0.0};
      for (std::size_t t = 0; t < s.traced_dim; ++t)
        acc += rho(static_cast<Eigen::Index>(s.full[i * s.traced_dim + t]),
                   static_cast<Eigen::Index>(s.full[j * s.traced_dim + t]));
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
    }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  if (keep.size() >= rho.dims().size()) throw ContractViolation("partial_trace: keep must be a proper subset");
  return DensityMatrix(kept_dims(rho.dims(), keep), partial_trace(rho.matrix(), rho.dims(), keep));
}

ComplexMatrix reduced_density(const PureState& psi, const std::vector<int>& keep) {
  const SplitIndex s = split_index(psi.dims(), keep);
  ComplexMatrix m(static_cast<Eigen::Index>(s.kept_dim), static_cast<Eigen::Index>(s.traced_dim));
  for (std::size_t i = 0; i < s.kept_dim; ++i)
    for (std::size_t t = 0; t < s.traced_dim; ++t)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t)) =
          psi.amplitudes()(static_cast<Eigen::Index>(s.full[i * s.traced_dim + t]));
  return m * m.adjoint();
}

DensityMatrix partial_trace(const PureState& psi, const std::vector<int>& keep) {
  return DensityMatrix(kept_dims(psi.dims(), keep), reduced_density(psi, keep));
}

PureState permute_subsystems(const PureState& psi, const std::vector<int>& order) {
  const Dims& dims = psi.dims();
  if (order.size() != dims.size()) throw ContractViolation("permute_subsystems: order must list every subsystem");
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k)
    if (sorted[k] != static_cast<int>(k)) throw ContractViolation("permute_subsystems: order is not a permutation");

  Dims out_dims;
  for (int k : order) out_dims.push_back(dims[static_cast<std::size_t>(k)]);
  const auto in_strides = strides_of(dims);
  ComplexVector out(psi.amplitudes().size());
  std::vector<int> digits(dims.size(), 0);
  for (Eigen::Index flat = 0; flat < out.size(); ++flat) {
    std::size_t src = 0;
    for (std::size_t i = 0; i < order.size(); ++i) src += static_cast<std::size_t>(digits[i]) * in_strides[static_cast<std::size_t>(order[i])];
    out(flat) = psi.amplitudes()(static_cast<Eigen::Index>(src));
    for (std::size_t i = digits.size(); i-- > 0;) {
      if (++digits[i] < out_dims[i]) break;
      digits[i] = 0;
    }
  }
  return PureState(std::move(out_dims), std::move(out));
}

Spectrum hermitian_eig(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ContractViolation("hermitian_eig: matrix is not square");
  const double herm = max_abs_diff(m, m.adjoint());
  if (herm > tol::kHermitian) {
    std::ostringstream msg;
    msg << "hermitian_eig: input is not Hermitian (max |M - M^dagger| = " << herm << ")";
    throw ContractViolation(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  const Eigen::Index n = m.rows();
  Spectrum out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = solver.eigenvalues()(n - 1 - k);
    out.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  const Eigen::Index n = m.rows();
  RealVector out(n);
  if (n == 1) {
    out(0) = m(0, 0).real();
    return out;
  }
  if (n == 2) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double half_tr = 0.5 * (a + d);
    const double half_diff = 0.5 * (a - d);
    const double r = std::sqrt(half_diff * half_diff + std::norm(m(0, 1)));
    out(0) = half_tr + r;
    out(1) = half_tr - r;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  for (Eigen::Index k = 0; k < n; ++k) out(k) = solver.eigenvalues()(n - 1 - k);
  return out;
}

double shannon_bits(const RealVector& probabilities) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < probabilities.size(); ++k) {
    const double p = probabilities(k);
    if (p > tol::kEntropyCutoff) s -= p * std::log2(p);
  }
  return s;
}

double entropy_bits(const ComplexMatrix& m) {
  return shannon_bits(hermitian_eigenvalues(m));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const double s = entropy_bits(rho.matrix());
  return std::clamp(s, 0.0, std::log2(static_cast<double>(rho.dim())));
}

int numerical_rank(const DensityMatrix& rho, double cutoff) {
  const RealVector ev = hermitian_eigenvalues(rho.matrix());
  return static_cast<int>((ev.array() > cutoff).count());
}

Purification purify(const DensityMatrix& rho, double rank_cutoff) {
  const Spectrum sp = hermitian_eig(rho.matrix());
  int rank = 0;
  while (rank < sp.eigenvalues.size() && sp.eigenvalues(rank) > rank_cutoff) ++rank;
  if (rank == 0) throw ContractViolation("purify: state has no eigenvalue above the rank cutoff");

  const auto n = static_cast<Eigen::Index>(rho.dim());
  ComplexVector psi = ComplexVector::Zero(n * rank);
  for (int i = 0; i < rank; ++i) {
    const double amp = std::sqrt(sp.eigenvalues(i));
    for (Eigen::Index row = 0; row < n; ++row) psi(row * rank + i) = amp * sp.eigenvectors(row, i);
  }
  Dims dims = rho.dims();
  dims.push_back(rank);
  return Purification{PureState::normalized(std::move(dims), std::move(psi)), rank};
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ContractViolation("max_abs_diff: shape mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

}  // namespace qdisc
