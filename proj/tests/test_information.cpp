#include <doctest.h>

#include <cmath>

#include "qpred/channels.hpp"
#include "qpred/information.hpp"
#include "test_support.hpp"

using namespace qpred;
using testsup::make_rng;

TEST_CASE("entropy anchors") {
  ComplexMatrix half = ComplexMatrix::identity(2);
  half *= Complex(0.5, 0.0);
  CHECK(von_neumann_entropy(DensityMatrix(half, {2})) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(von_neumann_entropy(DensityMatrix(ops::ket0_proj(), {2})) ==
        doctest::Approx(0.0).epsilon(1e-12));

  ComplexMatrix biased(2);
  biased(0, 0) = 0.85;
  biased(1, 1) = 0.15;
  // -0.85 log2 0.85 - 0.15 log2 0.15, evaluated independently
  CHECK(von_neumann_entropy(DensityMatrix(biased, {2})) ==
        doctest::Approx(0.609840304716400).epsilon(1e-12));
}

TEST_CASE("conditional entropy is additive on products and -1 on Bell") {
  auto rng = make_rng(41);
  const ComplexMatrix rho_s = testsup::random_density(rng, 2);
  const ComplexMatrix rho_x = testsup::random_density(rng, 2);
  const DensityMatrix product(kron(rho_s, rho_x), {2, 2});
  CHECK(conditional_entropy(product) ==
        doctest::Approx(von_neumann_entropy(DensityMatrix(rho_s, {2}))).epsilon(1e-10));

  CHECK(conditional_entropy(testsup::bell_phi_plus()) == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("conditional entropy of the relaxation steady state") {
  const DensityMatrix rho(testsup::exact_steady_state(), {2, 2});
  // frozen from an independent eigendecomposition of the closed-form matrix
  CHECK(conditional_entropy(rho) == doctest::Approx(0.842808212533381).epsilon(1e-12));
  CHECK(von_neumann_entropy(rho) == doctest::Approx(1.842808212533381).epsilon(1e-12));
  CHECK(mutual_information(rho) == doctest::Approx(0.148267847304841).epsilon(1e-10));
}

TEST_CASE("mutual information anchors") {
  auto rng = make_rng(42);
  const DensityMatrix product(
      kron(testsup::random_density(rng, 2), testsup::random_density(rng, 2)), {2, 2});
  CHECK(mutual_information(product) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(mutual_information(testsup::bell_phi_plus()) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(mutual_information(testsup::classical_copy()) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("info_report satisfies its internal identities") {
  auto rng = make_rng(43);
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix rho = testsup::random_two_qubit_state(rng);
    const InfoReport rep = info_report(rho);
    CHECK(std::abs(rep.mutual_info - (rep.h_marginal_s - rep.h_cond_s_given_x)) < 1e-10);
    CHECK(std::abs(rep.h_cond_s_given_x - (rep.h_joint - rep.h_marginal_x)) < 1e-10);
    // subadditivity
    CHECK(rep.h_joint <= rep.h_marginal_s + rep.h_marginal_x + 1e-10);
    // symmetry of I under the role swap
    const InfoReport swapped = info_report(rho.swapped());
    CHECK(std::abs(rep.mutual_info - swapped.mutual_info) < 1e-10);
    // range
    CHECK(rep.mutual_info >= -1e-10);
    CHECK(rep.mutual_info <= 2.0 + 1e-10);
  }
}

TEST_CASE("data processing: local channels on X cannot raise mutual information") {
  auto rng = make_rng(44);
  double worst = 1.0;
  for (int k = 0; k < 1000; ++k) {
    const DensityMatrix rho = testsup::random_two_qubit_state(rng);
    const KrausChannel ch = testsup::random_qubit_channel(rng);
    const DensityMatrix moved = apply(lift_local(ch, {2, 2}), rho);
    worst = std::min(worst, mutual_information(rho) - mutual_information(moved));
  }
  CHECK(worst >= -1e-9);
}
