#include <doctest.h>

#include "helpers.hpp"
#include "qdisc/families.hpp"
#include "qdisc/pair_measures.hpp"
#include "qdisc/random_states.hpp"

using namespace qdisc;

TEST_CASE("concurrence of Bell and product states") {
  CHECK(concurrence_two_qubit(DensityMatrix::from_pure(testing::bell())) == doctest::Approx(1.0).epsilon(1e-14));
  Rng rng = make_rng(1);
  const DensityMatrix product = tensor(random_density_matrix(rng, {2}, 2), random_density_matrix(rng, {2}, 1));
  CHECK(concurrence_two_qubit(product) < 1e-12);
  CHECK_THROWS_AS(concurrence_two_qubit(random_density_matrix(rng, {4, 2}, 2)), ContractViolation);
}

TEST_CASE("concurrence of the rank-2 family X state") {
  Rank2Params p;
  p.phi = std::asin(std::sqrt(0.8));
  p.theta2 = std::numbers::pi / 3.0;
  const DensityMatrix x = rank2_bc_xstate(p);
  CHECK(concurrence_two_qubit(x) == doctest::Approx(0.6).epsilon(1e-12));
  // max{0, 2 lambda_max - sum lambda} on the closed-form spectrum
  const RealVector l = wootters_lambdas(x);
  CHECK(2.0 * l(0) - l.sum() == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("eof from concurrence") {
  CHECK(eof_from_concurrence(0.0) == 0.0);
  CHECK(eof_from_concurrence(1.0) == doctest::Approx(1.0));
  CHECK(eof_x_parameter(0.6) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(eof_from_concurrence(0.6) == doctest::Approx(0.468996).epsilon(1e-6));
  CHECK(eof_from_concurrence(0.5) == doctest::Approx(0.354579).epsilon(1e-6));
  CHECK_THROWS_AS(eof_from_concurrence(1.1), ContractViolation);
  CHECK_THROWS_AS(eof_from_concurrence(-0.1), ContractViolation);
}

TEST_CASE("entropy of entanglement") {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = 1.0;
  CHECK(entropy_entanglement(PureState({2, 2}, v)) == 0.0);
  CHECK(entropy_entanglement(testing::bell()) == doctest::Approx(1.0));
  CHECK(entropy_entanglement(testing::schmidt(0.3)) == doctest::Approx(0.881291).epsilon(1e-6));
}

TEST_CASE("mutual information") {
  ComplexVector v = ComplexVector::Zero(4);
  v(1) = 1.0;
  CHECK(mutual_information(DensityMatrix::from_pure(PureState({2, 2}, v))) == doctest::Approx(0.0));
  CHECK(mutual_information(DensityMatrix::from_pure(testing::bell())) == doctest::Approx(2.0));
  // fully dephased |00>+|11>
  CHECK(mutual_information(testing::diag_state({2, 2}, {0.5, 0, 0, 0.5})) == doctest::Approx(1.0));
}

TEST_CASE("pair measures bundle agrees with the pieces") {
  Rng rng = make_rng(17);
  const DensityMatrix rho = random_density_matrix(rng, {2, 2}, 2);
  const PairMeasures m = pair_measures(rho);
  CHECK(m.concurrence == concurrence_two_qubit(rho));
  CHECK(m.eof == eof_from_concurrence(m.concurrence));
  CHECK(m.x_parameter == eof_x_parameter(m.concurrence));
  CHECK(m.mutual_information == mutual_information(rho));
}

TEST_CASE("property: concurrence invariant under local unitaries") {
  Rng rng = make_rng(23);
  for (int i = 0; i < 30; ++i) {
    const DensityMatrix rho = random_density_matrix(rng, {2, 2}, 1 + i % 4);
    const ComplexMatrix u = tensor(random_unitary(rng, 2), random_unitary(rng, 2));
    ComplexMatrix m = u * rho.matrix() * u.adjoint();
    m = 0.5 * (m + m.adjoint()).eval();
    CHECK(std::abs(concurrence_two_qubit(DensityMatrix({2, 2}, m)) - concurrence_two_qubit(rho)) < 1e-9);
  }
}

TEST_CASE("property: pure-state eof equals entropy of entanglement") {
  Rng rng = make_rng(29);
  for (int i = 0; i < 30; ++i) {
    const PureState psi = random_pure_state(rng, {2, 2});
    CHECK(std::abs(eof_from_concurrence(concurrence_two_qubit(DensityMatrix::from_pure(psi))) - entropy_entanglement(psi)) < 1e-9);
  }
}
