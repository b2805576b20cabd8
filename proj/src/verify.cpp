#include "qdisc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "qdisc/discord.hpp"
#include "qdisc/families.hpp"
#include "qdisc/measurement.hpp"
#include "qdisc/oracle.hpp"
#include "qdisc/pair_measures.hpp"
#include "qdisc/random_states.hpp"

namespace qdisc {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t sample_seed(std::uint64_t seed, std::size_t check, int sample) {
  return splitmix(splitmix(seed ^ (static_cast<std::uint64_t>(check) << 40)) + static_cast<std::uint64_t>(sample));
}

// Runs one invariant over `cases` samples. The body returns the violation
// amount for its sample (how far past the invariant, 0 when satisfied) and
// may set the state to dump on failure.
class Suite {
 public:
  explicit Suite(const VerifyOptions& opts) : opts_(opts) {}

  using Body = std::function<double(Rng&, std::optional<DensityMatrix>&)>;

  void run(const std::string& name, double tolerance, int cases, const Body& body) {
    InvariantCheck check;
    check.name = name;
    check.tolerance = tolerance;
    check.cases = cases;
    const std::size_t index = report_.checks.size();
    double worst_failure = -1.0;
    for (int i = 0; i < cases; ++i) {
      const std::uint64_t s = sample_seed(opts_.seed, index, i);
      Rng rng = make_rng(s);
      std::optional<DensityMatrix> state;
      double v = 0.0;
      try {
        v = body(rng, state);
      } catch (const std::exception&) {
        v = std::numeric_limits<double>::infinity();
      }
      if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
      check.max_violation = std::max(check.max_violation, v);
      if (v > tolerance && v > worst_failure) {
        worst_failure = v;
        check.passed = false;
        check.offending_seed = s;
        if (state) {
          std::error_code ec;
          std::filesystem::create_directories(opts_.dump_dir, ec);
          const auto path = std::filesystem::path(opts_.dump_dir) / ("verify_" + name + "_" + std::to_string(s) + ".json");
          try {
            save_state_file(*state, path.string());
            check.dump_path = path.string();
          } catch (const std::exception&) {
            check.dump_path.clear();
          }
        }
      }
    }
    report_.checks.push_back(std::move(check));
  }

  VerifyReport take() { return std::move(report_); }

 private:
  const VerifyOptions& opts_;
  VerifyReport report_;
};

Dims random_dims(Rng& rng) { return std::uniform_int_distribution<int>(0, 1)(rng) ? Dims{2, 2} : Dims{4, 2}; }

int random_rank(Rng& rng, int max_rank) { return std::uniform_int_distribution<int>(1, max_rank)(rng); }

ComplexMatrix local_unitary(Rng& rng, const Dims& dims) {
  return tensor(random_unitary(rng, dims[0]), random_unitary(rng, dims[1]));
}

DensityMatrix conjugate(const DensityMatrix& rho, const ComplexMatrix& u) {
  ComplexMatrix m = u * rho.matrix() * u.adjoint();
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix(rho.dims(), m);
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.passed; });
}

VerifyReport run_verification(const VerifyOptions& opts) {
  if (opts.samples < 1) throw ContractViolation("verify: samples must be >= 1");
  SearchConfig cfg;
  cfg.seed = opts.seed;
  cfg.restarts = opts.restarts;
  cfg.validate();

  Suite suite(opts);
  const int n = opts.samples;

  suite.run("purification_marginal", 1e-10, n, [](Rng& rng, auto& state) {
    const Dims dims = random_dims(rng);
    const DensityMatrix rho = random_density_matrix(rng, dims, random_rank(rng, 4));
    state = rho;
    const Purification pur = purify(rho);
    return max_abs_diff(reduced_density(pur.state, {0, 1}), rho.matrix());
  });

  suite.run("purification_entropies_agree", 1e-10, n, [](Rng& rng, auto& state) {
    const Dims dims = random_dims(rng);
    const int rank = random_rank(rng, 4);
    const auto dim = static_cast<Eigen::Index>(total_dim(dims));
    const ComplexMatrix g = random_ginibre(rng, dim, rank);
    const double tr = (g * g.adjoint()).trace().real();
    ComplexMatrix m = g * g.adjoint() / tr;
    m = 0.5 * (m + m.adjoint()).eval();
    const DensityMatrix rho(dims, m);
    state = rho;
    // Second purification from the non-orthogonal ensemble of columns of g.
    ComplexVector alt(dim * rank);
    for (Eigen::Index row = 0; row < dim; ++row)
      for (int j = 0; j < rank; ++j) alt(row * rank + j) = g(row, j) / std::sqrt(tr);
    const PureState other = PureState::normalized({dims[0], dims[1], rank}, alt);
    const PureState mine = purify(rho).state;
    double worst = 0.0;
    for (const std::vector<int>& keep : {std::vector<int>{0}, std::vector<int>{1}, std::vector<int>{0, 1}})
      worst = std::max(worst, std::abs(entropy_bits(reduced_density(mine, keep)) - entropy_bits(reduced_density(other, keep))));
    return worst;
  });

  suite.run("entropy_unitary_invariance", 1e-9, n, [](Rng& rng, auto& state) {
    const Dims dims = random_dims(rng);
    const DensityMatrix rho = random_density_matrix(rng, dims, random_rank(rng, 4));
    state = rho;
    const DensityMatrix rotated = conjugate(rho, random_unitary(rng, static_cast<int>(rho.dim())));
    return std::abs(von_neumann_entropy(rho) - von_neumann_entropy(rotated));
  });

  suite.run("eig_reconstruction", 1e-9, n, [](Rng& rng, auto& state) {
    const DensityMatrix rho = random_density_matrix(rng, random_dims(rng), random_rank(rng, 4));
    state = rho;
    const Spectrum sp = hermitian_eig(rho.matrix());
    const ComplexMatrix back = sp.eigenvectors * sp.eigenvalues.cast<Complex>().asDiagonal() * sp.eigenvectors.adjoint();
    const ComplexMatrix gram = sp.eigenvectors.adjoint() * sp.eigenvectors;
    return std::max(max_abs_diff(back, rho.matrix()),
                    max_abs_diff(gram, ComplexMatrix::Identity(gram.rows(), gram.cols())));
  });

  suite.run("concurrence_local_unitary", 1e-9, n, [](Rng& rng, auto& state) {
    const DensityMatrix rho = random_density_matrix(rng, {2, 2}, random_rank(rng, 4));
    state = rho;
    const DensityMatrix moved = conjugate(rho, local_unitary(rng, {2, 2}));
    return std::abs(concurrence_two_qubit(rho) - concurrence_two_qubit(moved));
  });

  suite.run("pure_eof_matches_entanglement", 1e-9, n, [](Rng& rng, auto& state) {
    const PureState psi = random_pure_state(rng, {2, 2});
    const DensityMatrix rho = DensityMatrix::from_pure(psi);
    state = rho;
    return std::abs(eof_from_concurrence(concurrence_two_qubit(rho)) - entropy_entanglement(psi));
  });

  suite.run("mutual_information_nonnegative", 1e-12, n, [](Rng& rng, auto& state) {
    const DensityMatrix rho = random_density_matrix(rng, random_dims(rng), random_rank(rng, 4));
    state = rho;
    return std::max(0.0, -mutual_information(rho));
  });

  suite.run("pure_state_collapse", 1e-9, n, [&](Rng& rng, auto& state) {
    const PureState psi = random_pure_state(rng, random_dims(rng));
    const DensityMatrix rho = DensityMatrix::from_pure(psi);
    state = rho;
    DiscordOptions o;
    o.search = cfg;
    o.with_duality_residual = false;
    const CorrelationReport r = discord(rho, 0, o);
    const double e = entropy_entanglement(psi);
    return std::max({std::abs(r.discord_projective - e), std::abs(r.discord_povm - e), std::abs(*r.eof_ab - e)});
  });

  // Reports are computed once and shared by the two checks below, which
  // differ only in tolerance.
  std::vector<CorrelationReport> reports;
  std::vector<DensityMatrix> report_states;
  suite.run("discord_decomposition", 1e-9, n, [&](Rng& rng, auto& state) {
    const DensityMatrix rho = random_density_matrix(rng, {2, 2}, random_rank(rng, 2));
    state = rho;
    DiscordOptions o;
    o.search = cfg;
    o.with_duality_residual = false;
    report_states.push_back(rho);
    reports.push_back(discord(rho, 0, o));
    const CorrelationReport& r = reports.back();
    return std::max(std::abs(r.mutual_information - r.classical_j_projective - r.discord_projective),
                    std::abs(r.mutual_information - r.classical_j_povm - r.discord_povm));
  });

  std::size_t next_report = 0;
  suite.run("report_invariants", 2e-3, static_cast<int>(reports.size()), [&](Rng&, auto& state) {
    const std::size_t i = next_report++;
    state = report_states[i];
    const CorrelationReport& r = reports[i];
    return std::max({r.discord_povm - r.discord_projective, r.eof_complement - r.eof_d_component,
                     -r.discord_projective, -r.discord_povm});
  });

  suite.run("povm_duality", 2e-3, n, [&](Rng& rng, auto& state) {
    const DensityMatrix rho = random_density_matrix(rng, {2, 2}, 2);
    state = rho;
    return std::abs(povm_search(rho, 0, cfg).value - duality_conditional_entropy(rho, 0));
  });

  suite.run("trilateral_identity", 5e-3, n, [&](Rng& rng, auto& state) {
    const DensityMatrix rho = random_density_matrix(rng, {2, 2}, 2);
    state = rho;
    return duality_residual(rho, cfg).residual;
  });

  suite.run("symmetric_three_qubit", 1e-6, 20, [&](Rng& rng, auto& state) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double l23 = u(rng);
    const auto p = ThreeQubitParams::normalized({u(rng), u(rng), l23, l23, u(rng)}, 2.0 * std::numbers::pi * u(rng));
    const DensityMatrix rho = partial_trace(three_qubit_state(p), {0, 1});
    state = rho;
    const double q = entropy_bits(partial_trace(rho.matrix(), rho.dims(), {0})) + projective_search(rho, 0, cfg).value -
                     entropy_bits(rho.matrix());
    return std::abs(q - eof_from_concurrence(concurrence_two_qubit(rho)));
  });

  suite.run("dilated_ensemble_reconstruction", 1e-8, n, [](Rng& rng, auto& state) {
    const DensityMatrix rho = random_density_matrix(rng, random_dims(rng), random_rank(rng, 4));
    state = rho;
    const Purification pur = purify(rho);
    const int ancilla = random_rank(rng, 3);
    const Ensemble e = dilated_ensemble(pur, random_unitary(rng, rho.dims()[0] * ancilla), ancilla);
    return e.reconstruction_error(reduced_density(pur.state, {1, 2}));
  });

  suite.run("loader_rejects_non_psd", 0.0, 1, [&](Rng& rng, auto&) {
    // Hermitian, unit trace, one negative eigenvalue.
    const double x = 0.2 + 0.1 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const std::string doc = "{\"dims\":[2],\"re\":[" + std::to_string(1.0 + x) + ",0,0," + std::to_string(-x) +
                            "],\"im\":[0,0,0,0]}";
    const auto path = std::filesystem::path(opts.dump_dir) / "verify_adversarial_non_psd.json";
    std::error_code ec;
    std::filesystem::create_directories(opts.dump_dir, ec);
    {
      std::FILE* f = std::fopen(path.string().c_str(), "wb");
      if (!f) return 1.0;
      std::fputs(doc.c_str(), f);
      std::fclose(f);
    }
    double violation = 1.0;
    try {
      load_state_file(path.string());
    } catch (const StateFileError& e) {
      if (std::string(e.what()).find("positive semidefinite") != std::string::npos) violation = 0.0;
    }
    std::filesystem::remove(path, ec);
    return violation;
  });

  return suite.take();
}

std::string format_verify_report(const VerifyReport& report) {
  std::ostringstream out;
  for (const auto& c : report.checks) {
    char line[256];
    std::snprintf(line, sizeof line, "%-32s %-4s max_violation=%.3e tolerance=%.1e cases=%d", c.name.c_str(),
                  c.passed ? "PASS" : "FAIL", c.max_violation, c.tolerance, c.cases);
    out << line;
    if (!c.passed && c.offending_seed) out << " seed=" << *c.offending_seed;
    if (!c.passed && !c.dump_path.empty()) out << " dump=" << c.dump_path;
    out << '\n';
  }
  out << (report.passed() ? "verify: all invariants hold\n" : "verify: FAILED\n");
  return out.str();
}

}  // namespace qdisc
