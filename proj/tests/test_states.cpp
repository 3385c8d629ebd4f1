#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qpred/channels.hpp"
#include "qpred/errors.hpp"
#include "qpred/information.hpp"
#include "qpred/states.hpp"
#include "test_support.hpp"

using namespace qpred;
using testsup::make_rng;

TEST_CASE("validate accepts the maximally mixed and the relaxation steady state") {
  ComplexMatrix mixed = ComplexMatrix::identity(4);
  mixed *= Complex(0.25, 0.0);
  CHECK(validate(mixed).ok);
  CHECK(validate(testsup::exact_steady_state()).ok);
}

TEST_CASE("validate reports positivity violations with their magnitude") {
  ComplexMatrix bad(4);
  bad(0, 0) = 0.6;
  bad(1, 1) = 0.6;
  bad(2, 2) = -0.1;
  bad(3, 3) = -0.1;
  const auto rep = validate(bad);
  CHECK_FALSE(rep.ok);
  CHECK(rep.violation == "positivity");
  CHECK(rep.magnitude == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("validate reports hermiticity and trace violations") {
  ComplexMatrix skew = ComplexMatrix::identity(2);
  skew(0, 1) = Complex(0.0, 0.5);
  skew *= Complex(0.5, 0.0);
  CHECK(validate(skew).violation == "hermiticity");

  ComplexMatrix offtrace = ComplexMatrix::identity(2);
  CHECK(validate(offtrace).violation == "unit-trace");
}

TEST_CASE("positivity policy clamps tiny negatives and rejects real ones") {
  ComplexMatrix borderline(2);
  borderline(0, 0) = 1.0 + 5e-10;
  borderline(1, 1) = -5e-10;
  CHECK(validate(borderline).ok);
  const auto spectrum = clamped_spectrum(borderline);
  CHECK(spectrum.front() == 0.0);
  CHECK(spectrum.back() == doctest::Approx(1.0).epsilon(1e-12));

  ComplexMatrix corrupt(2);
  corrupt(0, 0) = 1.0 + 1e-8;
  corrupt(1, 1) = -1e-8;
  CHECK_THROWS_AS(clamped_spectrum(corrupt), ValidationError);
  CHECK_THROWS_AS(DensityMatrix(corrupt, {2}), ValidationError);
}

TEST_CASE("initial_state is |0><0| (x) I/2") {
  const DensityMatrix rho = initial_state();
  CHECK(rho.matrix()(0, 0) == Complex(0.5, 0.0));
  CHECK(rho.matrix()(1, 1) == Complex(0.5, 0.0));
  CHECK(rho.matrix()(2, 2) == Complex(0.0, 0.0));
  CHECK(rho.matrix()(3, 3) == Complex(0.0, 0.0));
  CHECK(rho.marginal(Subsystem::S).matrix()(0, 0) == Complex(1.0, 0.0));
  CHECK(mutual_information(rho) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("projectors at the poles and on the x axis") {
  auto [pz0, pz1] = projectors({0.0, 0.0});
  CHECK(max_abs_diff(pz0, ops::ket0_proj()) < 1e-15);
  CHECK(max_abs_diff(pz1, ops::ket1_proj()) < 1e-15);

  auto [px0, px1] = projectors({3.14159265358979323846 / 2.0, 0.0});
  ComplexMatrix plus(2);
  plus(0, 0) = plus(0, 1) = plus(1, 0) = plus(1, 1) = 0.5;
  CHECK(max_abs_diff(px0, plus) < 1e-15);
  ComplexMatrix minus(2);
  minus(0, 0) = minus(1, 1) = 0.5;
  minus(0, 1) = minus(1, 0) = -0.5;
  CHECK(max_abs_diff(px1, minus) < 1e-15);
}

TEST_CASE("projectors at random angles form an idempotent complete pair") {
  auto rng = make_rng(21);
  for (int k = 0; k < 50; ++k) {
    const MeasurementBasis b = testsup::random_basis(rng);
    auto [p, q] = projectors(b);
    CHECK(p.hermiticity_defect() < 1e-12);
    CHECK(max_abs_diff(p * p, p) < 1e-12);
    CHECK(max_abs_diff(q * q, q) < 1e-12);
    CHECK(max_abs_diff(p + q, ComplexMatrix::identity(2)) < 1e-12);
  }
}

TEST_CASE("conditioned_state on a product state keeps the S marginal") {
  auto rng = make_rng(22);
  const ComplexMatrix rho_s = testsup::random_density(rng, 2);
  const ComplexMatrix rho_x = testsup::random_density(rng, 2);
  const DensityMatrix rho(kron(rho_s, rho_x), {2, 2});
  const MeasurementBasis b = testsup::random_basis(rng);
  for (int outcome = 0; outcome < 2; ++outcome) {
    const auto branch = conditioned_state(rho, b, Subsystem::X, outcome);
    REQUIRE(branch.state.has_value());
    CHECK(max_abs_diff(branch.state->marginal(Subsystem::S).matrix(), rho_s) < 1e-12);
  }
}

TEST_CASE("conditioned_state on Bell in the z basis is perfectly correlated") {
  const DensityMatrix bell = testsup::bell_phi_plus();
  const auto branch = conditioned_state(bell, {0.0, 0.0}, Subsystem::X, 0);
  CHECK(branch.probability == doctest::Approx(0.5).epsilon(1e-12));
  REQUIRE(branch.state.has_value());
  CHECK(max_abs_diff(branch.state->marginal(Subsystem::S).matrix(), ops::ket0_proj()) < 1e-12);
}

TEST_CASE("conditioned_state branch probabilities sum to one on the steady state") {
  const DensityMatrix rho(testsup::exact_steady_state(), {2, 2});
  const auto b0 = conditioned_state(rho, {0.0, 0.0}, Subsystem::X, 0);
  const auto b1 = conditioned_state(rho, {0.0, 0.0}, Subsystem::X, 1);
  CHECK(b0.probability == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(b0.probability + b1.probability == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("zero-probability branches carry the null-state marker") {
  // |0><0|_S (x) |0><0|_X measured along z on X: outcome 1 never happens
  const DensityMatrix pure(kron(ops::ket0_proj(), ops::ket0_proj()), {2, 2});
  const auto branch = conditioned_state(pure, {0.0, 0.0}, Subsystem::X, 1);
  CHECK(branch.probability <= 1e-12);
  CHECK_FALSE(branch.state.has_value());
}

TEST_CASE("tiny but non-null branches normalize cleanly") {
  // measuring a pure X factor a hair off its axis leaves a branch with
  // probability ~2.5e-9; normalization must not amplify roundoff into a
  // validation failure
  const DensityMatrix pure(kron(ops::ket0_proj(), ops::ket0_proj()), {2, 2});
  const auto branch = conditioned_state(pure, {1e-4, 0.0}, Subsystem::X, 1);
  CHECK(branch.probability == doctest::Approx(2.5e-9).epsilon(1e-3));
  REQUIRE(branch.state.has_value());
  CHECK(std::abs(branch.state->matrix().trace().real() - 1.0) < 1e-12);
}

TEST_CASE("recombined branches reproduce the decoherence channel") {
  auto rng = make_rng(23);
  for (int k = 0; k < 30; ++k) {
    const DensityMatrix rho = testsup::random_two_qubit_state(rng);
    const MeasurementBasis b = testsup::random_basis(rng);
    for (Subsystem side : {Subsystem::X, Subsystem::S}) {
      ComplexMatrix sum(4);
      for (int outcome = 0; outcome < 2; ++outcome) {
        const auto branch = conditioned_state(rho, b, side, outcome);
        if (!branch.state) continue;
        ComplexMatrix weighted = branch.state->matrix();
        weighted *= Complex(branch.probability, 0.0);
        sum += weighted;
      }
      CHECK(max_abs_diff(sum, decohere(rho, b, side).matrix()) < 1e-12);
    }
  }
}

TEST_CASE("unnormalized branch sum preserves the measured-basis diagonal") {
  auto rng = make_rng(24);
  const DensityMatrix rho = testsup::random_two_qubit_state(rng);
  const MeasurementBasis b = testsup::random_basis(rng);
  // diagonal in the measured eigenbasis: p_k equals <n_k| rho_X |n_k>
  auto [p0, p1] = projectors(b);
  const ComplexMatrix rho_x = rho.marginal(Subsystem::X).matrix();
  const double want0 = (p0 * rho_x).trace().real();
  const auto branch0 = conditioned_state(rho, b, Subsystem::X, 0);
  CHECK(branch0.probability == doctest::Approx(want0).epsilon(1e-10));
}

TEST_CASE("ordering tag maps roles to factors") {
  auto rng = make_rng(25);
  const DensityMatrix rho = testsup::random_two_qubit_state(rng);
  const DensityMatrix flipped = rho.swapped();
  CHECK(flipped.ordering() == Ordering::XS);
  CHECK(max_abs_diff(rho.marginal(Subsystem::S).matrix(),
                     flipped.marginal(Subsystem::S).matrix()) < 1e-14);
  CHECK(max_abs_diff(rho.marginal(Subsystem::X).matrix(),
                     flipped.marginal(Subsystem::X).matrix()) < 1e-14);
  const DensityMatrix back = flipped.swapped();
  CHECK(back.ordering() == Ordering::SX);
  CHECK(max_abs_diff(back.matrix(), rho.matrix()) == 0.0);
  CHECK(mutual_information(rho) == doctest::Approx(mutual_information(flipped)).epsilon(1e-12));
}

TEST_CASE("state files round-trip bit-exactly") {
  auto rng = make_rng(26);
  for (int k = 0; k < 5; ++k) {
    const DensityMatrix rho = testsup::random_two_qubit_state(rng);
    std::stringstream buffer;
    write_state(buffer, rho);
    const DensityMatrix loaded = read_state(buffer);
    CHECK(loaded.ordering() == rho.ordering());
    CHECK(loaded.dims() == rho.dims());
    for (std::size_t i = 0; i < 16; ++i) {
      CHECK(loaded.matrix().data()[i] == rho.matrix().data()[i]);  // bit-exact
    }
    std::stringstream second;
    write_state(second, loaded);
    CHECK(second.str() == buffer.str());
  }
}

TEST_CASE("state files reject malformed input") {
  std::istringstream notjson("not json at all");
  CHECK_THROWS_AS(read_state(notjson), ParseError);
  std::istringstream missing(R"({"dims": [2, 2]})");
  CHECK_THROWS_AS(read_state(missing), ParseError);
  std::istringstream shortmat(R"({"dims": [2, 2], "matrix": [[1.0, 0.0]]})");
  CHECK_THROWS_AS(read_state(shortmat), ParseError);
  std::istringstream badorder(R"({"dims": [2], "ordering": "YZ", "matrix": [[1,0],[0,0],[0,0],[0,0]]})");
  CHECK_THROWS_AS(read_state(badorder), ParseError);
}
