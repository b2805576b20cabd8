#include "qdisc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qdisc/optimize.hpp"
#include "qdisc/pair_measures.hpp"

namespace qdisc {

namespace {

constexpr double kInfeasible = 1e6;
constexpr int kGridTheta = 25;
constexpr int kGridPhi = 48;
constexpr int kGridStarts = 8;

void check_bipartite(const DensityMatrix& rho, int measured) {
  if (rho.dims().size() != 2) throw ContractViolation("search: state must be bipartite");
  if (measured != 0 && measured != 1) throw ContractViolation("search: measured subsystem must be 0 or 1");
}

optimize::MultiStartOptions multistart_options(const SearchConfig& cfg, double step, double tolerance) {
  optimize::MultiStartOptions opts;
  opts.seed = cfg.seed;
  opts.restarts = cfg.restarts;
  opts.threads = cfg.threads;
  opts.local.max_iterations = cfg.max_iterations;
  opts.local.tolerance = tolerance;
  opts.local.initial_step = step;
  return opts;
}

// Entropy of entanglement of an unnormalized pure state on dA x dB, with
// squared norm p > 0.
double pure_entanglement(const ComplexVector& psi, int dim_a, int dim_b, double p) {
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(psi.data(), dim_a, dim_b);
  const ComplexMatrix gram = dim_a >= dim_b ? ComplexMatrix(m.adjoint() * m) : ComplexMatrix(m * m.adjoint());
  return std::max(0.0, entropy_bits(gram / p));
}

std::vector<double> uniform_params(Rng& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> out(n);
  for (auto& x : out) x = dist(rng);
  return out;
}

std::vector<double> gaussian_params(Rng& rng, std::size_t n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& x : out) x = dist(rng);
  return out;
}

std::vector<double> params_from_matrix(const ComplexMatrix& w) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(2 * w.size()));
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      out.push_back(w(i, j).real());
      out.push_back(w(i, j).imag());
    }
  return out;
}

}  // namespace

void SearchConfig::validate() const {
  if (restarts < 1) throw ContractViolation("SearchConfig: restarts must be >= 1");
  if (max_iterations < 1) throw ContractViolation("SearchConfig: max_iterations must be >= 1");
  if (!(objective_tolerance > 0.0)) throw ContractViolation("SearchConfig: objective_tolerance must be > 0");
  if (povm_elements < 0) throw ContractViolation("SearchConfig: povm_elements must be >= 0");
}

ComplexMatrix unitary_from_generator(std::span<const double> params, int dim) {
  if (params.size() != static_cast<std::size_t>(dim * dim))
    throw ContractViolation("unitary_from_generator: expected d^2 parameters");
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  std::size_t k = 0;
  for (int i = 0; i < dim; ++i) h(i, i) = params[k++];
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      h(i, j) = Complex(params[k], params[k + 1]);
      h(j, i) = std::conj(h(i, j));
      k += 2;
    }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  ComplexVector phases(dim);
  for (int i = 0; i < dim; ++i) phases(i) = std::polar(1.0, solver.eigenvalues()(i));
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

std::optional<ComplexMatrix> isometry_from_params(std::span<const double> params, int rows, int cols) {
  if (params.size() != static_cast<std::size_t>(2 * rows * cols))
    throw ContractViolation("isometry_from_params: expected 2*rows*cols parameters");
  if (rows < cols) throw ContractViolation("isometry_from_params: rows must be >= cols");
  ComplexMatrix w(rows, cols);
  std::size_t k = 0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j, k += 2) w(i, j) = Complex(params[k], params[k + 1]);
  const ComplexMatrix gram = w.adjoint() * w;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram);
  const RealVector ev = solver.eigenvalues();
  if (!(ev.minCoeff() > 1e-10 * std::max(1.0, ev.maxCoeff()))) return std::nullopt;
  const RealVector inv_sqrt = ev.cwiseSqrt().cwiseInverse();
  return ComplexMatrix(w * (solver.eigenvectors() * inv_sqrt.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint()));
}

ComplexMatrix bloch_basis(double theta, double phi) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const Complex e = std::polar(1.0, phi);
  ComplexMatrix b(2, 2);
  b(0, 0) = c;
  b(1, 0) = e * s;
  b(0, 1) = -std::conj(e) * s;
  b(1, 1) = c;
  return b;
}

SearchResult projective_search(const DensityMatrix& rho_ab, int measured, const SearchConfig& cfg) {
  check_bipartite(rho_ab, measured);
  cfg.validate();
  const ComplexMatrix& rho = rho_ab.matrix();
  const Dims& dims = rho_ab.dims();
  const int d = dims[static_cast<std::size_t>(measured)];

  if (d == 1) {
    const ProjectiveMeasurement m{measured, ComplexMatrix::Identity(1, 1)};
    return SearchResult{average_conditional_entropy(rho, dims, measured, m.basis), MeasurementSet{m}, true, 0.0};
  }

  if (d == 2) {
    auto objective = [&](std::span<const double> x) {
      return average_conditional_entropy(rho, dims, measured, bloch_basis(x[0], x[1]));
    };
    struct GridPoint {
      double value, theta, phi;
    };
    std::vector<GridPoint> grid;
    for (int i = 0; i < kGridTheta; ++i)
      for (int j = 0; j < kGridPhi; ++j) {
        const double t = std::numbers::pi * i / (kGridTheta - 1);
        const double p = 2.0 * std::numbers::pi * j / kGridPhi;
        const double x[2] = {t, p};
        grid.push_back({objective(x), t, p});
        if (i == 0 || i == kGridTheta - 1) break;  // poles: phi is irrelevant
      }
    std::stable_sort(grid.begin(), grid.end(), [](const GridPoint& a, const GridPoint& b) { return a.value < b.value; });
    const int seeded = std::min<int>({kGridStarts, cfg.restarts, static_cast<int>(grid.size())});

    auto start = [&](int index, Rng& rng) -> std::vector<double> {
      if (index < seeded) return {grid[static_cast<std::size_t>(index)].theta, grid[static_cast<std::size_t>(index)].phi};
      return {std::uniform_real_distribution<double>(0.0, std::numbers::pi)(rng),
              std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng)};
    };
    const double tolerance = std::min(cfg.objective_tolerance, 1e-12);
    const auto best = optimize::multistart(objective, start, multistart_options(cfg, 0.1, tolerance));
    const ProjectiveMeasurement m{measured, bloch_basis(best.x[0], best.x[1])};
    return SearchResult{best.value, MeasurementSet{m}, best.converged, best.spread};
  }

  auto objective = [&](std::span<const double> x) {
    return average_conditional_entropy(rho, dims, measured, unitary_from_generator(x, d));
  };
  auto start = [&](int index, Rng& rng) -> std::vector<double> {
    if (index == 0) return std::vector<double>(static_cast<std::size_t>(d * d), 0.0);
    return uniform_params(rng, static_cast<std::size_t>(d * d), -std::numbers::pi, std::numbers::pi);
  };
  const auto best = optimize::multistart(objective, start, multistart_options(cfg, 0.5, cfg.objective_tolerance));
  const ProjectiveMeasurement m{measured, unitary_from_generator(best.x, d)};
  return SearchResult{best.value, MeasurementSet{m}, best.converged, best.spread};
}

SearchResult povm_search(const DensityMatrix& rho_ab, int measured, const SearchConfig& cfg) {
  check_bipartite(rho_ab, measured);
  cfg.validate();
  const ComplexMatrix& rho = rho_ab.matrix();
  const Dims& dims = rho_ab.dims();
  const int d = dims[static_cast<std::size_t>(measured)];
  const int n = cfg.povm_elements > 0 ? cfg.povm_elements : d * d;
  if (n < d) throw ContractViolation("povm_search: povm_elements must be >= measured dimension");

  const SearchResult projective = projective_search(rho_ab, measured, cfg);
  const auto& proj = std::get<ProjectiveMeasurement>(std::get<MeasurementSet>(projective.argmin));
  if (d == 1) return projective;

  // Rows of the isometry W are v_k^dagger; completeness is W^dagger W = I.
  ComplexMatrix seed_w = ComplexMatrix::Zero(n, d);
  seed_w.topRows(d) = proj.basis.adjoint();
  const std::vector<double> seed_params = params_from_matrix(seed_w);

  auto objective = [&](std::span<const double> x) {
    const auto w = isometry_from_params(x, n, d);
    if (!w) return kInfeasible;
    return average_conditional_entropy(rho, dims, measured, w->adjoint());
  };
  auto start = [&](int index, Rng& rng) -> std::vector<double> {
    if (index == 0) return seed_params;
    return gaussian_params(rng, static_cast<std::size_t>(2 * n * d));
  };
  const auto best = optimize::multistart(objective, start, multistart_options(cfg, 0.3, cfg.objective_tolerance));
  const auto w = isometry_from_params(best.x, n, d);
  if (!w || best.value > projective.value) {
    return SearchResult{projective.value, MeasurementSet{RankOnePOVM::from_projective(proj)}, projective.converged,
                        best.spread};
  }
  return SearchResult{best.value, MeasurementSet{RankOnePOVM{measured, w->adjoint()}}, best.converged, best.spread};
}

SearchResult ensemble_eof_search(const DensityMatrix& rho, int components, const SearchConfig& cfg) {
  if (rho.dims().size() != 2) throw ContractViolation("ensemble_eof_search: state must be bipartite");
  cfg.validate();
  const int dim_a = rho.dims()[0];
  const int dim_b = rho.dims()[1];
  const Spectrum sp = hermitian_eig(rho.matrix());
  int rank = 0;
  while (rank < sp.eigenvalues.size() && sp.eigenvalues(rank) > tol::kRankCutoff) ++rank;
  if (components < rank) throw ContractViolation("ensemble_eof_search: components must be >= rank");

  const auto n = static_cast<Eigen::Index>(rho.dim());
  ComplexMatrix x(n, rank);
  for (int j = 0; j < rank; ++j) x.col(j) = std::sqrt(sp.eigenvalues(j)) * sp.eigenvectors.col(j);

  auto average = [&](const ComplexMatrix& u) {
    double total = 0.0;
    for (int k = 0; k < components; ++k) {
      const ComplexVector psi = x * u.row(k).transpose();
      const double p = psi.squaredNorm();
      if (p <= 1e-15) continue;
      total += p * pure_entanglement(psi, dim_a, dim_b, p);
    }
    return total;
  };
  auto to_ensemble = [&](const ComplexMatrix& u) {
    Ensemble e;
    for (int k = 0; k < components; ++k) {
      ComplexVector psi = x * u.row(k).transpose();
      const double p = psi.squaredNorm();
      if (p <= 1e-15) continue;
      e.probabilities.push_back(p);
      e.states.push_back(PureState::normalized(rho.dims(), std::move(psi)));
    }
    return e;
  };

  ComplexMatrix seed_u = ComplexMatrix::Zero(components, rank);
  seed_u.topRows(rank) = ComplexMatrix::Identity(rank, rank);
  if (rank == components && rank == 1) return SearchResult{average(seed_u), to_ensemble(seed_u), true, 0.0};

  auto objective = [&](std::span<const double> p) {
    const auto u = isometry_from_params(p, components, rank);
    if (!u) return kInfeasible;
    return average(*u);
  };
  const std::vector<double> seed_params = params_from_matrix(seed_u);
  auto start = [&](int index, Rng& rng) -> std::vector<double> {
    if (index == 0) return seed_params;
    return gaussian_params(rng, static_cast<std::size_t>(2 * components * rank));
  };
  const auto best = optimize::multistart(objective, start, multistart_options(cfg, 0.3, cfg.objective_tolerance));
  const auto u = isometry_from_params(best.x, components, rank);
  if (!u) return SearchResult{average(seed_u), to_ensemble(seed_u), false, best.spread};
  return SearchResult{best.value, to_ensemble(*u), best.converged, best.spread};
}

std::vector<ComplexMatrix> dilation_kraus(const ComplexMatrix& unitary_ae, int dim_a, int ancilla_dim) {
  const int n = dim_a * ancilla_dim;
  if (unitary_ae.rows() != n || unitary_ae.cols() != n)
    throw ContractViolation("dilation: unitary must act on A x E");
  if (max_abs_diff(unitary_ae.adjoint() * unitary_ae, ComplexMatrix::Identity(n, n)) > 1e-10)
    throw ContractViolation("dilation: input is not unitary");
  std::vector<ComplexMatrix> kraus;
  for (int k = 0; k < ancilla_dim; ++k) {
    ComplexMatrix a(dim_a, dim_a);
    for (int out = 0; out < dim_a; ++out)
      for (int in = 0; in < dim_a; ++in) a(out, in) = unitary_ae(out * ancilla_dim + k, in * ancilla_dim);
    kraus.push_back(std::move(a));
  }
  return kraus;
}

Ensemble partitioned_povm_ensemble(const Purification& purification, const std::vector<ComplexMatrix>& kraus) {
  const PureState& psi = purification.state;
  const int dim_a = psi.dims().front();
  const Eigen::Index rest = static_cast<Eigen::Index>(psi.dim()) / dim_a;
  Dims rest_dims(psi.dims().begin() + 1, psi.dims().end());
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> amp(psi.amplitudes().data(), dim_a, rest);

  Ensemble out;
  for (int kp = 0; kp < dim_a; ++kp)
    for (const auto& a : kraus) {
      // (|k'><k'| A_k x I) Psi = |k'> x (row k' of A_k) Psi
      ComplexVector rel = (a.row(kp) * amp).transpose();
      const double p = rel.squaredNorm();
      if (p <= 1e-15) continue;
      out.probabilities.push_back(p);
      out.states.push_back(PureState::normalized(rest_dims, std::move(rel)));
    }
  return out;
}

Ensemble dilated_ensemble(const Purification& purification, const ComplexMatrix& unitary_ae, int ancilla_dim) {
  const int dim_a = purification.state.dims().front();
  if (ancilla_dim < 1) throw ContractViolation("dilated_ensemble: ancilla_dim must be >= 1");
  const auto kraus = dilation_kraus(unitary_ae, dim_a, ancilla_dim);

  const PureState& psi = purification.state;
  const Eigen::Index rest = static_cast<Eigen::Index>(psi.dim()) / dim_a;
  Dims rest_dims(psi.dims().begin() + 1, psi.dims().end());
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> amp(psi.amplitudes().data(), dim_a, rest);

  // Phi(k_A, k_E; rest) = sum_a U[(k_A, k_E), (a, 0)] Psi(a; rest)
  Ensemble out;
  for (int ka = 0; ka < dim_a; ++ka)
    for (int ke = 0; ke < ancilla_dim; ++ke) {
      ComplexVector rel = ComplexVector::Zero(rest);
      for (int a = 0; a < dim_a; ++a) rel += unitary_ae(ka * ancilla_dim + ke, a * ancilla_dim) * amp.row(a).transpose();
      const double p = rel.squaredNorm();
      if (p <= 1e-15) continue;
      out.probabilities.push_back(p);
      out.states.push_back(PureState::normalized(rest_dims, std::move(rel)));
    }
  return out;
}

}  // namespace qdisc
