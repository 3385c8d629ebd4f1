#include "qpred/dynamics.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "qpred/errors.hpp"
#include "qpred/tolerances.hpp"

namespace qpred {

namespace {

// column-stacked index of matrix entry (i, j)
constexpr std::size_t vec_index(std::size_t i, std::size_t j, std::size_t d) { return j * d + i; }

// X-state pattern: diagonal plus anti-diagonal (the sigma_z (x) sigma_z
// parity-even sector, preserved by the generator)
constexpr std::array<std::pair<std::size_t, std::size_t>, 8> kXPattern = {
    {{0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 3}, {1, 2}, {2, 1}, {3, 0}}};

}  // namespace

Liouvillian build_liouvillian(double kappa) {
  if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
  const ComplexMatrix id2 = ComplexMatrix::identity(2);
  const ComplexMatrix id4 = ComplexMatrix::identity(4);
  // H = i kappa (sigma_- - sigma_+)_S (x) (sigma_x)_X  (Hermitian)
  ComplexMatrix h = kron(ops::sigma_minus() - ops::sigma_plus(), ops::sigma_x());
  h *= Complex(0.0, kappa);
  // C = sqrt(2 kappa) (I (x) sigma_x + sigma_- (x) I)
  ComplexMatrix c = kron(id2, ops::sigma_x()) + kron(ops::sigma_minus(), id2);
  c *= Complex(std::sqrt(2.0 * kappa), 0.0);
  const ComplexMatrix cdc = c.adjoint() * c;

  // column stacking: A rho B  ->  (B^T (x) A) vec(rho)
  ComplexMatrix gen = kron(id4, h) - kron(h.transpose(), id4);
  gen *= Complex(0.0, -1.0);
  gen += kron(c.conjugate(), c);
  gen -= Complex(0.5, 0.0) * kron(id4, cdc);
  gen -= Complex(0.5, 0.0) * kron(cdc.transpose(), id4);

  const double scale = std::max(1.0, kappa);
  // trace functional is a left null vector
  for (std::size_t col = 0; col < 16; ++col) {
    Complex sum{};
    for (std::size_t i = 0; i < 4; ++i) sum += gen(vec_index(i, i, 4), col);
    if (std::abs(sum) > tol.hermiticity * scale) {
      throw ConsistencyError("Liouvillian does not preserve the trace");
    }
  }
  const auto spectrum = general_eigenvalues(gen);
  bool has_zero = false;
  for (const Complex& lambda : spectrum) {
    if (lambda.real() > tol.liouvillian_zero * scale) {
      throw ConsistencyError("Liouvillian has an eigenvalue with positive real part");
    }
    if (std::abs(lambda) < tol.liouvillian_zero * scale) has_zero = true;
  }
  if (!has_zero) throw ConsistencyError("Liouvillian has no zero mode");
  return Liouvillian(std::move(gen), kappa);
}

DensityMatrix propagate(const DensityMatrix& rho, const Liouvillian& liouvillian,
                        double duration) {
  if (duration < 0.0) throw DomainError("duration must be non-negative");
  if (rho.dim() * rho.dim() != liouvillian.matrix().dim()) {
    throw DimensionError("state does not match the generator dimension");
  }
  ComplexMatrix gen = liouvillian.matrix();
  gen *= Complex(duration, 0.0);
  const ComplexMatrix prop = matrix_exp(gen);
  const auto evolved = matvec(prop, vec(rho.matrix()));
  ComplexMatrix out = unvec(evolved);
  const auto rep = validate(out);
  if (!rep.ok) {
    std::ostringstream msg;
    msg << "propagation produced an invalid state: " << rep.violation << " residual "
        << rep.magnitude;
    throw IntegratorError(msg.str());
  }
  return DensityMatrix(std::move(out), rho.dims(), rho.ordering());
}

DensityMatrix steady_state(const Liouvillian& liouvillian) {
  const ComplexMatrix& gen = liouvillian.matrix();
  if (gen.dim() != 16) throw DimensionError("steady_state expects the two-qubit generator");
  const double scale = std::max(1.0, liouvillian.kappa());

  // restrict to the X-state sector
  ComplexMatrix sector(8);
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c)
      sector(r, c) = gen(vec_index(kXPattern[r].first, kXPattern[r].second, 4),
                         vec_index(kXPattern[c].first, kXPattern[c].second, 4));

  const auto sector_eigs = general_eigenvalues(sector);
  int zero_modes = 0;
  for (const Complex& lambda : sector_eigs) {
    if (std::abs(lambda) < tol.liouvillian_zero * scale) ++zero_modes;
  }
  if (zero_modes == 0) throw AmbiguityError("no steady state in the X-state sector");
  if (zero_modes > 1) {
    throw AmbiguityError("degenerate steady-state eigenspace in the X-state sector");
  }

  // inverse iteration for the null vector; the maximally mixed state has a
  // nonzero overlap and makes a good start
  std::vector<Complex> x(8);
  for (int k = 0; k < 4; ++k) x[k] = 0.25;
  for (int iter = 0; iter < 4; ++iter) {
    x = solve_linear(sector, std::move(x));
    double mx = 0.0;
    for (const auto& c : x) mx = std::max(mx, std::abs(c));
    for (auto& c : x) c /= mx;
  }

  // rotate the arbitrary overall phase so the trace is real positive
  Complex trace_phase{};
  for (int k = 0; k < 4; ++k) trace_phase += x[k];
  trace_phase /= std::abs(trace_phase);
  for (auto& c : x) c /= trace_phase;

  ComplexMatrix m(4);
  for (std::size_t k = 0; k < 8; ++k) m(kXPattern[k].first, kXPattern[k].second) = x[k];
  ComplexMatrix herm = m.adjoint();
  herm += m;
  herm *= Complex(0.5, 0.0);
  herm *= Complex(1.0 / herm.trace().real(), 0.0);

  double residual = 0.0;
  for (const Complex& c : matvec(gen, vec(herm))) residual += std::norm(c);
  residual = std::sqrt(residual);
  if (residual > tol.steady_state_residual * scale) {
    std::ostringstream msg;
    msg << "steady-state residual " << residual << " exceeds tolerance";
    throw ConsistencyError(msg.str());
  }
  return DensityMatrix(std::move(herm), {2, 2}, Ordering::SX);
}

}  // namespace qpred
