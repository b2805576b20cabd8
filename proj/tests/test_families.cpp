#include <doctest.h>

#include "helpers.hpp"
#include "qdisc/families.hpp"
#include "qdisc/pair_measures.hpp"
#include "qdisc/random_states.hpp"

using namespace qdisc;

namespace {

Rank2Params fig1_point(double sin2_phi) {
  Rank2Params p;
  p.phi = std::asin(std::sqrt(sin2_phi));
  p.theta2 = std::numbers::pi / 3.0;
  return p;
}

}  // namespace

TEST_CASE("three-qubit states") {
  ThreeQubitParams ghz;
  ghz.lambda = {1.0 / std::sqrt(2.0), 0.0, 0.0, 0.0, 1.0 / std::sqrt(2.0)};
  const PureState s = three_qubit_state(ghz);
  CHECK(std::abs(s.amplitudes()(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(s.amplitudes()(7) - 1.0 / std::sqrt(2.0)) < 1e-15);
  const PairConcurrences c = three_qubit_concurrences(ghz);
  CHECK(c.ab == 0.0);
  CHECK(c.bc == 0.0);
  CHECK(c.ac == 0.0);

  CHECK(std::abs(three_qubit_state(ThreeQubitParams{}).amplitudes()(0) - 1.0) < 1e-15);
  ThreeQubitParams bad;
  bad.lambda = {0.5, 0.5, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(bad.validate(), ContractViolation);
}

TEST_CASE("equal-weight three-qubit state") {
  const double t = 1.0 / std::sqrt(3.0);
  const auto p = ThreeQubitParams::normalized({t, 0.0, t, t, 0.0}, 0.0);
  const PureState psi = three_qubit_state(p);
  const double sa = entropy_bits(reduced_density(psi, {0}));
  CHECK(entropy_bits(reduced_density(psi, {1})) == doctest::Approx(sa).epsilon(1e-12));
  CHECK(entropy_bits(reduced_density(psi, {2})) == doctest::Approx(sa).epsilon(1e-12));
  const PairConcurrences c = three_qubit_concurrences(p);
  CHECK(c.ab == doctest::Approx(2.0 / 3.0));
  CHECK(c.bc == doctest::Approx(2.0 / 3.0));
  CHECK(c.ac == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("property: three-qubit concurrences match the reduced matrices") {
  Rng rng = make_rng(90);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const auto p = ThreeQubitParams::normalized({u(rng), u(rng), u(rng), u(rng), u(rng)}, 6.0 * u(rng));
    const PureState psi = three_qubit_state(p);
    const PairConcurrences c = three_qubit_concurrences(p);
    CHECK(std::abs(c.ab - concurrence_two_qubit(partial_trace(psi, {0, 1}))) < 1e-9);
    CHECK(std::abs(c.bc - concurrence_two_qubit(partial_trace(psi, {1, 2}))) < 1e-9);
    CHECK(std::abs(c.ac - concurrence_two_qubit(partial_trace(psi, {0, 2}))) < 1e-9);
  }
}

TEST_CASE("symmetric three-qubit report") {
  const auto p = ThreeQubitParams::normalized({0.7, 0.3, 0.4, 0.4, 0.2}, 1.0);
  const ThreeQubitReport r = three_qubit_report(p, QubitPair::AB, 0);
  CHECK(r.symmetric);
  CHECK(std::abs(r.report.discord_povm - *r.report.eof_ab) < 1e-12);
  CHECK(r.eof_composed == doctest::Approx(*r.report.eof_ab).epsilon(1e-12));
  CHECK(std::abs(r.eof_literal - r.eof_composed) > 1e-3);

  ThreeQubitParams product;
  const ThreeQubitReport z = three_qubit_report(product, QubitPair::BC, 1);
  CHECK(z.report.discord_povm == 0.0);
  CHECK(*z.report.eof_ab == 0.0);
  CHECK(z.report.mutual_information == 0.0);
}

TEST_CASE("rank-2 family states") {
  Rank2Params pure;
  pure.p1 = 1.0;
  pure.p2 = 0.0;
  pure.phi = 0.3;
  const DensityMatrix rho = rank2_state(pure);
  CHECK(numerical_rank(rho) == 1);
  const DensityMatrix marg = partial_trace(rho, {1});
  CHECK(entropy_bits(marg.matrix()) == doctest::Approx(binary_entropy(std::cos(0.3) * std::cos(0.3))));

  const Rank2Params f = fig1_point(0.4);
  const DensityMatrix r = rank2_state(f);
  ComplexVector psi1 = ComplexVector::Zero(8);
  psi1(0) = std::cos(f.phi);
  psi1(3) = std::sin(f.phi);
  CHECK((psi1.adjoint() * r.matrix() * psi1)(0).real() == doctest::Approx(0.5).epsilon(1e-14));
  const Spectrum s = hermitian_eig(r.matrix());
  CHECK(s.eigenvalues(0) == doctest::Approx(0.5));
  CHECK(s.eigenvalues(1) == doctest::Approx(0.5));

  Rank2Params bad;
  bad.p1 = 0.7;
  CHECK_THROWS_AS(bad.validate(), ContractViolation);
}

TEST_CASE("purification and X state") {
  const Rank2Params f = fig1_point(0.8);
  const PureState psi = rank2_purification(f);
  CHECK(max_abs_diff(reduced_density(psi, {0, 1}), rank2_state(f).matrix()) < 1e-14);
  const DensityMatrix x = rank2_bc_xstate(f);
  CHECK(max_abs_diff(reduced_density(psi, {1, 2}), x.matrix()) < 1e-14);
  CHECK(x.matrix()(1, 2).real() == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(x.matrix()(0, 3).real() == doctest::Approx(0.05).epsilon(1e-14));

  Rank2Params bell;
  bell.phi = std::numbers::pi / 4.0;
  const DensityMatrix bd = rank2_bc_xstate(bell);
  for (int i = 0; i < 4; ++i) CHECK(bd.matrix()(i, i).real() == doctest::Approx(0.25));
  CHECK(bd.matrix()(0, 3).real() == doctest::Approx(0.25));
  CHECK(bd.matrix()(1, 2).real() == doctest::Approx(0.25));

  Rank2Params one;
  one.p1 = 1.0;
  one.p2 = 0.0;
  one.phi = 0.5;
  const DensityMatrix d = rank2_bc_xstate(one);
  CHECK(d.matrix()(0, 3) == Complex(0.0));
  CHECK(d.matrix()(0, 0).real() == doctest::Approx(std::cos(0.5) * std::cos(0.5)));
  CHECK(d.matrix()(2, 2).real() == doctest::Approx(std::sin(0.5) * std::sin(0.5)));
}

TEST_CASE("rank-2 report closed forms") {
  const Rank2Report r = rank2_report(fig1_point(0.8));
  CHECK(r.chis[0] == doctest::Approx(0.6));
  CHECK(r.chis[1] == doctest::Approx(0.9));
  CHECK(r.chis[2] == doctest::Approx(-0.7));
  CHECK(r.chi == doctest::Approx(0.9));
  CHECK(r.chi_branch == 2);
  CHECK(r.concurrence_bc == doctest::Approx(0.6));
  CHECK(r.eof_bc == doctest::Approx(0.468996).epsilon(1e-6));
  CHECK(r.eof_ab == doctest::Approx(binary_entropy(0.95)));

  Rank2Params t;
  t.phi = 0.6;
  t.theta2 = 0.9;
  const Rank2Report z = rank2_report(t);
  CHECK(z.rho_a_spectrum[0] == doctest::Approx(std::sin(0.6) * std::sin(0.6)));
  CHECK(z.rho_a_spectrum[1] == doctest::Approx(0.0));

  Rank2Params bell;
  bell.phi = std::numbers::pi / 4.0;
  CHECK(rank2_report(bell).eof_ab == doctest::Approx(0.0));
}

TEST_CASE("property: rank-2 closed forms match numerics") {
  Rng rng = make_rng(14);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    Rank2Params p;
    p.p1 = i < 5 ? 0.5 : u(rng);
    p.p2 = 1.0 - p.p1;
    p.phi = 3.0 * u(rng);
    p.theta1 = 3.0 * u(rng);
    p.theta2 = 3.0 * u(rng);
    const Rank2Report r = rank2_report(p);
    const DensityMatrix rho = rank2_state(p);
    const RealVector a = hermitian_eigenvalues(partial_trace(rho, {0}).matrix());
    std::array<double, 4> closed = r.rho_a_spectrum;
    std::sort(closed.begin(), closed.end(), std::greater<>());
    for (int k = 0; k < 4; ++k) CHECK(std::abs(a(k) - closed[static_cast<std::size_t>(k)]) < 1e-9);
    const DensityMatrix x = rank2_bc_xstate(p);
    CHECK(std::abs(r.concurrence_bc - concurrence_two_qubit(x)) < 1e-9);
    CHECK(std::abs(r.s_a - von_neumann_entropy(partial_trace(rho, {0}))) < 1e-9);
    // E(AB) is the C-measured conditional entropy of (B, C).
    CHECK(std::abs(r.eof_ab - xstate_conditional_entropy(x)) < 1e-9);
  }
}

TEST_CASE("phase damping") {
  const DensityMatrix pure = phase_damping_state({0.3, 0.0});
  CHECK(numerical_rank(pure) == 1);
  const DensityMatrix classical = phase_damping_state({0.3, 1.0});
  CHECK(classical.matrix()(0, 3) == Complex(0.0));
  const DensityMatrix half = phase_damping_state({0.5, 0.5});
  CHECK(half.matrix()(0, 3).real() == doctest::Approx(0.25));

  const PhaseDampingReport r = phase_damping_report({0.5, 0.5});
  CHECK(r.rho_ab_spectrum[0] == doctest::Approx(0.75));
  CHECK(r.rho_ab_spectrum[1] == doctest::Approx(0.25));
  CHECK(r.concurrence == doctest::Approx(0.5));
  CHECK(*r.report.eof_ab == doctest::Approx(0.354579).epsilon(1e-6));
  CHECK(r.report.discord_povm == doctest::Approx(0.188722).epsilon(1e-6));
  CHECK(r.eta > 0.0);
  CHECK(r.concurrence_bc < 1e-9);

  // e^{-gamma t} = 1/sqrt(2)
  const PhaseDampingReport g = phase_damping_report(PhaseDampingParams::from_gamma_t(0.5, 0.5 * std::log(2.0)));
  CHECK(g.rho_ab_spectrum[0] == doctest::Approx(0.853553).epsilon(1e-6));
  CHECK(g.rho_ab_spectrum[1] == doctest::Approx(0.146447).epsilon(1e-6));
  CHECK(g.report.s_ab == doctest::Approx(0.600876).epsilon(1e-6));
  const Spectrum s = hermitian_eig(phase_damping_state(PhaseDampingParams::from_gamma_t(0.5, 0.5 * std::log(2.0))).matrix());
  CHECK(s.eigenvalues(0) == doctest::Approx(g.rho_ab_spectrum[0]).epsilon(1e-12));

  for (double a : {0.0, 0.2, 0.7}) {
    const PhaseDampingReport p0 = phase_damping_report({a, 0.0});
    CHECK(p0.report.discord_povm == doctest::Approx(binary_entropy(a)));
    CHECK(*p0.report.eof_ab == doctest::Approx(binary_entropy(a)));
    const PhaseDampingReport p1 = phase_damping_report({a, 1.0});
    CHECK(p1.report.discord_povm == doctest::Approx(0.0));
    CHECK(*p1.report.eof_ab == doctest::Approx(0.0));
  }
  CHECK_THROWS_AS(phase_damping_report({1.2, 0.0}), ContractViolation);
}
