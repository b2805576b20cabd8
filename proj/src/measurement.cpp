#include "qdisc/measurement.hpp"

#include <cmath>

namespace qdisc {

namespace {

constexpr double kOutcomeCutoff = 1e-15;

void check_bipartite(const Dims& dims, int measured) {
  if (dims.size() != 2) throw ContractViolation("measurement: state must be bipartite");
  if (measured != 0 && measured != 1) throw ContractViolation("measurement: measured subsystem must be 0 or 1");
}

}  // namespace

void ProjectiveMeasurement::validate() const {
  if (basis.rows() != basis.cols()) throw ContractViolation("ProjectiveMeasurement: basis must be square");
  const ComplexMatrix gram = basis.adjoint() * basis;
  if (max_abs_diff(gram, ComplexMatrix::Identity(basis.cols(), basis.cols())) > 1e-10)
    throw ContractViolation("ProjectiveMeasurement: basis is not orthonormal");
}

void RankOnePOVM::validate() const {
  if (vectors.cols() < vectors.rows()) throw ContractViolation("RankOnePOVM: needs at least d elements");
  const ComplexMatrix sum = vectors * vectors.adjoint();
  if (max_abs_diff(sum, ComplexMatrix::Identity(vectors.rows(), vectors.rows())) > 1e-8)
    throw ContractViolation("RankOnePOVM: elements do not sum to the identity");
}

RankOnePOVM RankOnePOVM::from_projective(const ProjectiveMeasurement& m) { return RankOnePOVM{m.subsystem, m.basis}; }

ComplexMatrix Ensemble::reconstruct() const {
  if (states.empty()) return ComplexMatrix();
  const auto n = static_cast<Eigen::Index>(states.front().dim());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < states.size(); ++k) out += probabilities[k] * projector(states[k].amplitudes());
  return out;
}

double Ensemble::reconstruction_error(const ComplexMatrix& target) const { return max_abs_diff(reconstruct(), target); }

ComplexMatrix conditional_state(const ComplexMatrix& rho, const Dims& dims, int measured, const ComplexVector& v) {
  check_bipartite(dims, measured);
  const int dm = dims[static_cast<std::size_t>(measured)];
  const int du = dims[static_cast<std::size_t>(1 - measured)];
  if (v.size() != dm) throw ContractViolation("conditional_state: outcome vector has wrong dimension");
  // Flat index of (measured digit m, unmeasured digit u).
  auto idx = [&](int m, int u) -> Eigen::Index { return measured == 0 ? m * du + u : u * dm + m; };

  ComplexMatrix out = ComplexMatrix::Zero(du, du);
  for (int a = 0; a < dm; ++a) {
    const Complex ca = std::conj(v(a));
    if (ca == Complex(0.0, 0.0)) continue;
    for (int a2 = 0; a2 < dm; ++a2) {
      const Complex w = ca * v(a2);
      if (w == Complex(0.0, 0.0)) continue;
      for (int b = 0; b < du; ++b)
        for (int b2 = 0; b2 < du; ++b2) out(b, b2) += w * rho(idx(a, b), idx(a2, b2));
    }
  }
  return out;
}

double average_conditional_entropy(const ComplexMatrix& rho, const Dims& dims, int measured, const ComplexMatrix& vectors) {
  double total = 0.0;
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    const ComplexMatrix sub = conditional_state(rho, dims, measured, vectors.col(k));
    const double p = sub.trace().real();
    if (p <= kOutcomeCutoff) continue;
    total += p * entropy_bits(sub / p);
  }
  return total;
}

double average_conditional_entropy(const DensityMatrix& rho, const MeasurementSet& m) {
  return std::visit(
      [&](const auto& meas) {
        using T = std::decay_t<decltype(meas)>;
        if constexpr (std::is_same_v<T, ProjectiveMeasurement>)
          return average_conditional_entropy(rho.matrix(), rho.dims(), meas.subsystem, meas.basis);
        else
          return average_conditional_entropy(rho.matrix(), rho.dims(), meas.subsystem, meas.vectors);
      },
      m);
}

Ensemble relative_state_ensemble(const PureState& psi, int subsystem, const ComplexMatrix& vectors) {
  const Dims& dims = psi.dims();
  if (subsystem < 0 || static_cast<std::size_t>(subsystem) >= dims.size())
    throw ContractViolation("relative_state_ensemble: subsystem out of range");
  const int dm = dims[static_cast<std::size_t>(subsystem)];
  if (vectors.rows() != dm) throw ContractViolation("relative_state_ensemble: outcome vectors have wrong dimension");

  Dims rest;
  std::size_t inner = 1;
  std::size_t outer = 1;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (static_cast<int>(k) == subsystem) continue;
    rest.push_back(dims[k]);
    (static_cast<int>(k) < subsystem ? outer : inner) *= static_cast<std::size_t>(dims[k]);
  }

  Ensemble out;
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    ComplexVector rel = ComplexVector::Zero(static_cast<Eigen::Index>(outer * inner));
    for (std::size_t o = 0; o < outer; ++o)
      for (int m = 0; m < dm; ++m) {
        const Complex w = std::conj(vectors(m, k));
        for (std::size_t i = 0; i < inner; ++i)
          rel(static_cast<Eigen::Index>(o * inner + i)) +=
              w * psi.amplitudes()(static_cast<Eigen::Index>((o * static_cast<std::size_t>(dm) + static_cast<std::size_t>(m)) * inner + i));
      }
    const double p = rel.squaredNorm();
    if (p <= kOutcomeCutoff) continue;
    out.probabilities.push_back(p);
    out.states.push_back(PureState::normalized(rest, std::move(rel)));
  }
  return out;
}

}  // namespace qdisc
