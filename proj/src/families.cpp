#include "qdisc/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qdisc/optimize.hpp"
#include "qdisc/pair_measures.hpp"

namespace qdisc {

namespace {

constexpr int kXStateScanPoints = 721;

// Two-qubit marginal (first, ancilla) from a pure state whose last subsystem
// may be one-dimensional; pads the ancilla to a qubit.
DensityMatrix qubit_pair(const PureState& psi, int first) {
  const int last = static_cast<int>(psi.dims().size()) - 1;
  ComplexMatrix m = reduced_density(psi, {first, last});
  if (psi.dims().back() == 1) {
    ComplexMatrix padded = ComplexMatrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) padded(2 * i, 2 * j) = m(i, j);
    m = padded;
  }
  return DensityMatrix({2, 2}, m);
}

double pair_concurrence(const PairConcurrences& c, int x, int y) {
  const int lo = std::min(x, y);
  const int hi = std::max(x, y);
  if (lo == 0 && hi == 1) return c.ab;
  if (lo == 1 && hi == 2) return c.bc;
  return c.ac;
}

}  // namespace

void ThreeQubitParams::validate() const {
  double norm2 = 0.0;
  for (double l : lambda) {
    if (!(l >= 0.0)) throw ContractViolation("ThreeQubitParams: lambda_i must be nonnegative");
    norm2 += l * l;
  }
  if (std::abs(norm2 - 1.0) > 1e-12) throw ContractViolation("ThreeQubitParams: sum of lambda_i^2 must be 1");
}

ThreeQubitParams ThreeQubitParams::normalized(std::array<double, 5> lambda, double phi) {
  double norm2 = 0.0;
  for (double l : lambda) norm2 += l * l;
  if (!(norm2 > 0.0)) throw ContractViolation("ThreeQubitParams: lambda must not vanish");
  for (double& l : lambda) l /= std::sqrt(norm2);
  ThreeQubitParams p{lambda, phi};
  p.validate();
  return p;
}

PureState three_qubit_state(const ThreeQubitParams& p) {
  p.validate();
  ComplexVector v = ComplexVector::Zero(8);
  v(0b000) = p.lambda[0];
  v(0b010) = std::polar(p.lambda[1], p.phi);
  v(0b011) = p.lambda[2];
  v(0b110) = p.lambda[3];
  v(0b111) = p.lambda[4];
  return PureState::normalized({2, 2, 2}, std::move(v));
}

PairConcurrences three_qubit_concurrences(const ThreeQubitParams& p) {
  p.validate();
  const auto& l = p.lambda;
  return PairConcurrences{2.0 * l[0] * l[3], 2.0 * l[0] * l[2],
                          2.0 * std::abs(Complex(l[2] * l[3], 0.0) - l[1] * l[4] * std::polar(1.0, p.phi))};
}

ThreeQubitReport three_qubit_report(const ThreeQubitParams& p, QubitPair pair, int measured) {
  if (measured != 0 && measured != 1) throw ContractViolation("three_qubit_report: measured must be 0 or 1");
  const PureState psi = three_qubit_state(p);
  const PairConcurrences conc = three_qubit_concurrences(p);

  int x = 0;
  int y = 1;
  if (pair == QubitPair::BC) {
    x = 1;
    y = 2;
  } else if (pair == QubitPair::AC) {
    x = 0;
    y = 2;
  }
  const int z = 3 - x - y;
  const int o = measured == 0 ? y : x;

  CorrelationReport r;
  r.measured = measured;
  r.s_a = entropy_bits(reduced_density(psi, {x}));
  r.s_b = entropy_bits(reduced_density(psi, {y}));
  r.s_ab = entropy_bits(reduced_density(psi, {z}));
  r.mutual_information = r.s_a + r.s_b - r.s_ab;

  // The optimal decomposition of (o, z) has two members, reachable by
  // projective measurement of the qubit m.
  const double cond = eof_from_concurrence(pair_concurrence(conc, o, z));
  r.cond_entropy_projective = cond;
  r.cond_entropy_povm = cond;
  const double s_m = measured == 0 ? r.s_a : r.s_b;
  const double s_o = measured == 0 ? r.s_b : r.s_a;
  r.classical_j_projective = s_o - cond;
  r.classical_j_povm = s_o - cond;
  r.discord_projective = s_m + cond - r.s_ab;
  r.discord_povm = r.discord_projective;
  r.eof_ab = eof_from_concurrence(pair_concurrence(conc, x, y));
  r.eof_d_component = cond;
  r.eof_complement = cond;
  r.eof_provenance = Provenance::analytic;
  r.method = Provenance::analytic;

  ThreeQubitReport out{r};
  const auto& l = p.lambda;
  out.symmetric = std::abs(l[2] - l[3]) <= 1e-12;
  out.delta_literal = std::sqrt(std::max(0.0, 1.0 - l[0] * l[0] * l[2] * l[2]));
  out.delta_composed = std::sqrt(std::max(0.0, 1.0 - 4.0 * l[0] * l[0] * l[2] * l[2]));
  out.eof_literal = binary_entropy(0.5 * (1.0 + out.delta_literal));
  out.eof_composed = binary_entropy(0.5 * (1.0 + out.delta_composed));
  return out;
}

void Rank2Params::validate() const {
  if (!(p1 >= 0.0 && p1 <= 1.0 && p2 >= 0.0 && p2 <= 1.0))
    throw ContractViolation("Rank2Params: p1 and p2 must lie in [0, 1]");
  if (std::abs(p1 + p2 - 1.0) > 1e-12) throw ContractViolation("Rank2Params: p1 + p2 must equal 1");
  if (!std::isfinite(phi) || !std::isfinite(theta1) || !std::isfinite(theta2))
    throw ContractViolation("Rank2Params: angles must be finite");
}

namespace {

std::array<ComplexVector, 2> rank2_eigenvectors(const Rank2Params& p) {
  const double c = std::cos(p.phi);
  const double s = std::sin(p.phi);
  ComplexVector psi1 = ComplexVector::Zero(8);
  psi1(0 * 2 + 0) = c;
  psi1(1 * 2 + 1) = s;
  ComplexVector psi2 = ComplexVector::Zero(8);
  // sin(phi)|a3>|0> with a3 = cos t1|1> + sin t1|2>
  psi2(1 * 2 + 0) = s * std::cos(p.theta1);
  psi2(2 * 2 + 0) = s * std::sin(p.theta1);
  // cos(phi)|a4>|1> with a4 = cos t2|0> + sin t2|3>
  psi2(0 * 2 + 1) = c * std::cos(p.theta2);
  psi2(3 * 2 + 1) = c * std::sin(p.theta2);
  return {psi1, psi2};
}

}  // namespace

DensityMatrix rank2_state(const Rank2Params& p) {
  p.validate();
  const auto [psi1, psi2] = rank2_eigenvectors(p);
  return DensityMatrix({4, 2}, p.p1 * projector(psi1) + p.p2 * projector(psi2));
}

PureState rank2_purification(const Rank2Params& p) {
  p.validate();
  const auto [psi1, psi2] = rank2_eigenvectors(p);
  ComplexVector v = ComplexVector::Zero(16);
  for (int ab = 0; ab < 8; ++ab) {
    v(ab * 2 + 0) = std::sqrt(p.p1) * psi1(ab);
    v(ab * 2 + 1) = std::sqrt(p.p2) * psi2(ab);
  }
  return PureState::normalized({4, 2, 2}, std::move(v));
}

DensityMatrix rank2_bc_xstate(const Rank2Params& p) {
  p.validate();
  const double c2 = std::cos(p.phi) * std::cos(p.phi);
  const double s2 = std::sin(p.phi) * std::sin(p.phi);
  const double root = std::sqrt(p.p1 * p.p2);
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = p.p1 * c2;
  m(1, 1) = p.p2 * s2;
  m(2, 2) = p.p1 * s2;
  m(3, 3) = p.p2 * c2;
  m(0, 3) = m(3, 0) = root * c2 * std::cos(p.theta2);
  m(1, 2) = m(2, 1) = root * s2 * std::cos(p.theta1);
  return DensityMatrix({2, 2}, m);
}

double xstate_conditional_entropy(const DensityMatrix& x_state) {
  if (x_state.dims() != Dims{2, 2}) throw ContractViolation("xstate_conditional_entropy: state must have dims {2, 2}");
  const ComplexMatrix& rho = x_state.matrix();
  double best = std::numeric_limits<double>::infinity();
  const double step = std::numbers::pi / (kXStateScanPoints - 1);
  for (double azimuth : {0.0, 0.5 * std::numbers::pi}) {
    auto f = [&](double theta) { return average_conditional_entropy(rho, {2, 2}, 1, bloch_basis(theta, azimuth)); };
    double best_theta = 0.0;
    double best_value = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kXStateScanPoints; ++i) {
      const double theta = step * i;
      const double v = f(theta);
      if (v < best_value) {
        best_value = v;
        best_theta = theta;
      }
    }
    const auto refined = optimize::golden_section(f, best_theta - step, best_theta + step, 1e-10);
    best = std::min({best, best_value, refined.value});
  }
  return std::max(0.0, best);
}

Rank2Report rank2_report(const Rank2Params& p) {
  p.validate();
  Rank2Report r;
  const double s2 = std::sin(p.phi) * std::sin(p.phi);
  const double c2 = std::cos(p.phi) * std::cos(p.phi);
  const double pp = p.p1 * p.p2;
  const double st1 = std::sin(p.theta1);
  const double st2 = std::sin(p.theta2);
  const double root1 = std::sqrt(std::max(0.0, 1.0 - 4.0 * pp * st1 * st1));
  const double root2 = std::sqrt(std::max(0.0, 1.0 - 4.0 * pp * st2 * st2));
  r.rho_a_spectrum = {0.5 * s2 * (1.0 + root1), 0.5 * s2 * (1.0 - root1), 0.5 * c2 * (1.0 + root2),
                      0.5 * c2 * (1.0 - root2)};

  const double dp = p.p1 - p.p2;
  const double base = std::sqrt(std::max(0.0, 1.0 - dp * dp));
  const double cross = 2.0 * std::sqrt(pp);
  r.wootters_lambdas = {0.5 * s2 * (base + cross * std::cos(p.theta1)), 0.5 * s2 * (base - cross * std::cos(p.theta1)),
                        0.5 * c2 * (base + cross * std::cos(p.theta2)), 0.5 * c2 * (base - cross * std::cos(p.theta2))};
  const double lmax = *std::max_element(r.wootters_lambdas.begin(), r.wootters_lambdas.end());
  double lsum = 0.0;
  for (double l : r.wootters_lambdas) lsum += l;
  r.concurrence_bc = std::clamp(2.0 * lmax - lsum, 0.0, 1.0);
  r.eof_bc = eof_from_concurrence(r.concurrence_bc);

  r.chis = {-std::cos(2.0 * p.phi), c2 * std::cos(p.theta2) + s2 * std::cos(p.theta1),
            c2 * std::cos(p.theta2) - s2 * std::cos(p.theta1)};
  r.chi = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(r.chis[static_cast<std::size_t>(i)]) > r.chi) {
      r.chi = std::abs(r.chis[static_cast<std::size_t>(i)]);
      r.chi_branch = i + 1;
    }
  }
  if (r.chi_branch == 0) r.chi_branch = 1;

  RealVector spec(4);
  for (int i = 0; i < 4; ++i) spec(i) = r.rho_a_spectrum[static_cast<std::size_t>(i)];
  r.s_a = shannon_bits(spec);
  RealVector probs(2);
  probs << p.p1, p.p2;
  r.s_ab = shannon_bits(probs);
  r.discord = r.s_a + r.eof_bc - r.s_ab;

  r.eof_closed_form = std::abs(p.p1 - 0.5) <= 1e-12;
  if (r.eof_closed_form)
    r.eof_ab = binary_entropy(0.5 * (1.0 + r.chi));
  else
    r.eof_ab = xstate_conditional_entropy(rank2_bc_xstate(p));
  return r;
}

PhaseDampingParams PhaseDampingParams::from_gamma_t(double alpha_sq, double gamma_t) {
  if (!(gamma_t >= 0.0)) throw ContractViolation("PhaseDampingParams: gamma_t must be nonnegative");
  PhaseDampingParams out{alpha_sq, 1.0 - std::exp(-gamma_t)};
  out.validate();
  return out;
}

void PhaseDampingParams::validate() const {
  if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0)) throw ContractViolation("PhaseDampingParams: |alpha|^2 must lie in [0, 1]");
  if (!(p >= 0.0 && p <= 1.0)) throw ContractViolation("PhaseDampingParams: p must lie in [0, 1]");
}

DensityMatrix phase_damping_state(const PhaseDampingParams& p) {
  p.validate();
  const double a = p.alpha_sq;
  const double b = 1.0 - a;
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = a;
  m(3, 3) = b;
  m(0, 3) = m(3, 0) = p.decay() * std::sqrt(a * b);
  return DensityMatrix({2, 2}, m);
}

PhaseDampingReport phase_damping_report(const PhaseDampingParams& p) {
  p.validate();
  const double a = p.alpha_sq;
  const double ab = a * (1.0 - a);
  const double e = p.decay();

  PhaseDampingReport out;
  const double root = std::sqrt(std::max(0.0, 0.25 - ab * (1.0 - e * e)));
  out.rho_ab_spectrum = {0.5 + root, 0.5 - root};
  RealVector spec(2);
  spec << out.rho_ab_spectrum[0], out.rho_ab_spectrum[1];
  out.concurrence = std::clamp(2.0 * std::sqrt(ab) * e, 0.0, 1.0);

  CorrelationReport& r = out.report;
  r.measured = 0;
  r.s_a = binary_entropy(a);
  r.s_b = r.s_a;
  r.s_ab = shannon_bits(spec);
  r.mutual_information = r.s_a + r.s_b - r.s_ab;
  // The complementary pairs of the purification are separable, so both
  // conditional entropies vanish.
  r.cond_entropy_projective = 0.0;
  r.cond_entropy_povm = 0.0;
  r.classical_j_projective = r.s_b;
  r.classical_j_povm = r.s_b;
  r.discord_projective = r.s_a - r.s_ab;
  r.discord_povm = r.discord_projective;
  r.eof_ab = eof_from_concurrence(out.concurrence);
  r.eof_d_component = 0.0;
  r.eof_complement = 0.0;
  r.eof_provenance = Provenance::analytic;
  r.method = Provenance::analytic;
  out.eta = *r.eof_ab - r.discord_projective;

  const Purification pur = purify(phase_damping_state(p));
  out.concurrence_bc = concurrence_two_qubit(qubit_pair(pur.state, 1));
  out.concurrence_ac = concurrence_two_qubit(qubit_pair(pur.state, 0));
  return out;
}

}  // namespace qdisc
