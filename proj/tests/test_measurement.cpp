#include <doctest.h>

#include "helpers.hpp"
#include "qdisc/oracle.hpp"
#include "qdisc/pair_measures.hpp"
#include "qdisc/random_states.hpp"

using namespace qdisc;

TEST_CASE("measurement validation") {
  ProjectiveMeasurement good{0, ComplexMatrix::Identity(2, 2)};
  CHECK_NOTHROW(good.validate());
  ProjectiveMeasurement bad{0, ComplexMatrix::Ones(2, 2)};
  CHECK_THROWS_AS(bad.validate(), ContractViolation);
  const RankOnePOVM povm = RankOnePOVM::from_projective(good);
  CHECK_NOTHROW(povm.validate());
  RankOnePOVM incomplete{0, ComplexMatrix::Identity(2, 1)};
  CHECK_THROWS_AS(incomplete.validate(), ContractViolation);
}

TEST_CASE("conditional entropy of classical and pure states") {
  const DensityMatrix cc = testing::diag_state({2, 2}, {0.4, 0, 0, 0.6});
  CHECK(average_conditional_entropy(cc, ProjectiveMeasurement{0, ComplexMatrix::Identity(2, 2)}) == doctest::Approx(0.0));
  const DensityMatrix pure = DensityMatrix::from_pure(testing::schmidt(0.3));
  CHECK(average_conditional_entropy(pure, ProjectiveMeasurement{0, ComplexMatrix::Identity(2, 2)}) == doctest::Approx(0.0));
  CHECK(average_conditional_entropy(pure, ProjectiveMeasurement{1, bloch_basis(1.0, 0.3)}) == doctest::Approx(0.0));
}

TEST_CASE("relative-state ensemble reproduces the marginal") {
  Rng rng = make_rng(4);
  const PureState psi = random_pure_state(rng, {3, 2, 2});
  const ComplexMatrix u = random_unitary(rng, 3);
  const Ensemble e = relative_state_ensemble(psi, 0, u);
  CHECK(e.states.size() == 3);
  CHECK(e.reconstruction_error(reduced_density(psi, {1, 2})) < 1e-13);
}

TEST_CASE("parametrizations are unitary") {
  std::vector<double> g(9);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = 0.1 * static_cast<double>(i) - 0.3;
  const ComplexMatrix u = unitary_from_generator(g, 3);
  CHECK(max_abs_diff(u.adjoint() * u, ComplexMatrix::Identity(3, 3)) < 1e-13);
  std::vector<double> w(2 * 4 * 2);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::sin(1.0 + static_cast<double>(i));
  const auto iso = isometry_from_params(w, 4, 2);
  REQUIRE(iso);
  CHECK(max_abs_diff(iso->adjoint() * *iso, ComplexMatrix::Identity(2, 2)) < 1e-13);
  CHECK(!isometry_from_params(std::vector<double>(16, 0.0), 4, 2));
  const ComplexMatrix b = bloch_basis(0.7, 1.1);
  CHECK(max_abs_diff(b.adjoint() * b, ComplexMatrix::Identity(2, 2)) < 1e-15);
}

TEST_CASE("projective search on simple states") {
  SearchConfig cfg;
  cfg.restarts = 8;
  const DensityMatrix cc = testing::diag_state({2, 2}, {0.4, 0, 0, 0.6});
  CHECK(projective_search(cc, 0, cfg).value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(projective_search(DensityMatrix::from_pure(testing::schmidt(0.3)), 0, cfg).value < 1e-9);
  // Maximally mixed: every outcome leaves I/2.
  CHECK(projective_search(testing::diag_state({2, 2}, {0.25, 0.25, 0.25, 0.25}), 0, cfg).value == doctest::Approx(1.0));
}

TEST_CASE("povm search never exceeds the projective value") {
  SearchConfig cfg;
  cfg.restarts = 8;
  Rng rng = make_rng(31);
  for (int i = 0; i < 3; ++i) {
    const DensityMatrix rho = random_density_matrix(rng, {2, 2}, 3);
    const double proj = projective_search(rho, 0, cfg).value;
    const SearchResult povm = povm_search(rho, 0, cfg);
    CHECK(povm.value <= proj + 1e-12);
    REQUIRE(std::holds_alternative<MeasurementSet>(povm.argmin));
    const auto& m = std::get<MeasurementSet>(povm.argmin);
    REQUIRE(std::holds_alternative<RankOnePOVM>(m));
    CHECK_NOTHROW(std::get<RankOnePOVM>(m).validate());
  }
}

TEST_CASE("ensemble eof search") {
  SearchConfig cfg;
  cfg.restarts = 8;
  const PureState psi = testing::schmidt(0.3);
  CHECK(ensemble_eof_search(DensityMatrix::from_pure(psi), 1, cfg).value == doctest::Approx(0.881291).epsilon(1e-6));
  // Equal mixture of Phi+ and Psi+ is separable.
  ComplexMatrix m = ComplexMatrix::Constant(4, 4, 0.0);
  m(0, 0) = m(3, 3) = m(1, 1) = m(2, 2) = 0.25;
  m(0, 3) = m(3, 0) = m(1, 2) = m(2, 1) = 0.25;
  const DensityMatrix sep({2, 2}, m);
  CHECK(ensemble_eof_search(sep, 4, cfg).value < 1e-5);
  CHECK_THROWS_AS(ensemble_eof_search(sep, 1, cfg), ContractViolation);
}

TEST_CASE("dilations") {
  Rng rng = make_rng(8);
  const DensityMatrix rho = random_density_matrix(rng, {2, 2}, 3);
  const Purification pur = purify(rho);
  const Ensemble eigen = dilated_ensemble(pur, ComplexMatrix::Identity(2, 2), 1);
  CHECK(eigen.states.size() == 2);
  CHECK(eigen.reconstruction_error(reduced_density(pur.state, {1, 2})) < 1e-14);

  const ComplexMatrix u = random_unitary(rng, 4);
  const Ensemble e = dilated_ensemble(pur, u, 2);
  CHECK(e.states.size() == 4);
  CHECK(e.reconstruction_error(reduced_density(pur.state, {1, 2})) < 1e-13);

  const auto kraus = dilation_kraus(u, 2, 2);
  ComplexMatrix completeness = ComplexMatrix::Zero(2, 2);
  for (const auto& k : kraus) completeness += k.adjoint() * k;
  CHECK(max_abs_diff(completeness, ComplexMatrix::Identity(2, 2)) < 1e-13);
  const Ensemble refined = partitioned_povm_ensemble(pur, kraus);
  CHECK(refined.reconstruction_error(reduced_density(pur.state, {1, 2})) < 1e-13);
  CHECK_THROWS_AS(dilation_kraus(ComplexMatrix::Ones(4, 4), 2, 2), ContractViolation);
}
