#include "qpred/discord.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "qpred/errors.hpp"
#include "qpred/information.hpp"
#include "qpred/tolerances.hpp"

namespace qpred {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kAxisTol = 1e-7;  // dominant-component decision band

struct Vertex {
  double theta;
  double phi;
  double value;
};

bool better(const Vertex& a, const Vertex& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.theta != b.theta) return a.theta < b.theta;
  return a.phi < b.phi;
}

double diameter(const std::array<Vertex, 3>& s) {
  double d = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      d = std::max(d, std::abs(s[i].theta - s[j].theta));
      d = std::max(d, std::abs(s[i].phi - s[j].phi));
    }
  return d;
}

}  // namespace

MeasurementBasis canonical_basis(double theta, double phi) {
  double n[3] = {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                 std::cos(theta)};
  const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  if (len == 0.0) return {0.0, 0.0};
  for (auto& c : n) c /= len;
  // The pair {P, I-P} is invariant under n -> -n; fix the sign by the first
  // decisive component so that theta <= pi/2, and phi in [0, pi) on the
  // equator (the smallest-(theta, phi) representative).
  bool flip = false;
  if (n[2] < -kAxisTol) {
    flip = true;
  } else if (std::abs(n[2]) <= kAxisTol) {
    if (n[1] < -kAxisTol) {
      flip = true;
    } else if (std::abs(n[1]) <= kAxisTol && n[0] < 0.0) {
      flip = true;
    }
  }
  if (flip)
    for (auto& c : n) c = -c;
  const double th = std::acos(std::clamp(n[2], -1.0, 1.0));
  double ph = std::atan2(n[1], n[0]);
  if (ph < 0.0) ph += 2.0 * kPi;
  if (2.0 * kPi - ph < kAxisTol) ph = 0.0;
  if (std::sin(th) < tol.pole_sin_theta) {
    // coordinate degeneracy at the poles
    return {th < kPi / 2.0 ? 0.0 : kPi, 0.0};
  }
  return {th, ph};
}

MinimizeResult minimize_over_bases(const std::function<double(double, double)>& objective,
                                   const OptimizerConfig& cfg) {
  OptimizerTrace trace;
  const double dth = cfg.grid_theta_step_deg * kPi / 180.0;
  const double dph = cfg.grid_phi_step_deg * kPi / 180.0;

  // coarse grid, ordered reduction (first-seen wins on exact ties)
  Vertex best{0.0, 0.0, objective(0.0, 0.0)};
  ++trace.grid_evaluations;
  for (double th = 0.0; th <= kPi + 1e-12; th += dth) {
    for (double ph = 0.0; ph < 2.0 * kPi - 1e-12; ph += dph) {
      if (th == 0.0 && ph == 0.0) continue;
      const double v = objective(th, ph);
      ++trace.grid_evaluations;
      if (v < best.value) best = {th, ph, v};
    }
  }

  // Nelder-Mead refinement from the best grid point
  std::array<Vertex, 3> s;
  s[0] = best;
  s[1] = {best.theta + dth, best.phi, objective(best.theta + dth, best.phi)};
  s[2] = {best.theta, best.phi + dph, objective(best.theta, best.phi + dph)};
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    std::sort(s.begin(), s.end(), better);
    trace.final_spread = s[2].value - s[0].value;
    if (trace.final_spread < cfg.simplex_spread && diameter(s) < cfg.simplex_diameter) break;
    trace.simplex_iterations = it + 1;
    const double cth = 0.5 * (s[0].theta + s[1].theta);
    const double cph = 0.5 * (s[0].phi + s[1].phi);
    const auto eval = [&](double th, double ph) { return Vertex{th, ph, objective(th, ph)}; };
    Vertex refl = eval(cth + alpha * (cth - s[2].theta), cph + alpha * (cph - s[2].phi));
    if (refl.value < s[0].value) {
      Vertex exp_ = eval(cth + gamma * (refl.theta - cth), cph + gamma * (refl.phi - cph));
      s[2] = exp_.value < refl.value ? exp_ : refl;
    } else if (refl.value < s[1].value) {
      s[2] = refl;
    } else {
      const Vertex& base = refl.value < s[2].value ? refl : s[2];
      Vertex contr = eval(cth + rho * (base.theta - cth), cph + rho * (base.phi - cph));
      if (contr.value < std::min(refl.value, s[2].value)) {
        s[2] = contr;
      } else {
        // shrink toward the best vertex
        for (int k = 1; k < 3; ++k) {
          s[k] = eval(s[0].theta + sigma * (s[k].theta - s[0].theta),
                      s[0].phi + sigma * (s[k].phi - s[0].phi));
        }
      }
    }
  }
  std::sort(s.begin(), s.end(), better);
  trace.final_spread = s[2].value - s[0].value;

  // canonical representative plus near-tie reduction toward (0, 0)
  MeasurementBasis refined = canonical_basis(s[0].theta, s[0].phi);
  const double refined_value = objective(refined.theta, refined.phi);
  MinimizeResult out;
  out.trace = trace;
  out.value = std::min(s[0].value, refined_value);
  out.basis = refined;
  const double pole_value = objective(0.0, 0.0);
  if (pole_value <= out.value + tol.optimizer_tie) {
    out.value = std::min(out.value, pole_value);
    out.basis = {0.0, 0.0};
  }
  return out;
}

namespace {

// sum_k p_k H(conditional other-side marginal) at one basis
double branch_entropy_objective(const DensityMatrix& rho, Subsystem measured, double theta,
                                double phi) {
  const Subsystem other = measured == Subsystem::X ? Subsystem::S : Subsystem::X;
  const MeasurementBasis b{theta, phi};
  double value = 0.0;
  for (int outcome = 0; outcome < 2; ++outcome) {
    const auto branch = conditioned_state(rho, b, measured, outcome);
    if (!branch.state) continue;
    value += branch.probability * von_neumann_entropy(branch.state->marginal(other));
  }
  return value;
}

}  // namespace

SemiclassicalResult semiclassical_conditional_entropy(const DensityMatrix& rho,
                                                      Subsystem measured,
                                                      const OptimizerConfig& cfg) {
  if (rho.dim_of(measured) != 2) throw DimensionError("measured subsystem must be a qubit");
  const auto res = minimize_over_bases(
      [&](double th, double ph) { return branch_entropy_objective(rho, measured, th, ph); }, cfg);
  return {res.value, res.basis, res.trace};
}

DiscordResult discord(const DensityMatrix& rho, Subsystem measured, const OptimizerConfig& cfg) {
  const auto sc = semiclassical_conditional_entropy(rho, measured, cfg);
  const Subsystem other = measured == Subsystem::X ? Subsystem::S : Subsystem::X;
  const double h_joint = von_neumann_entropy(rho);
  const double h_measured = von_neumann_entropy(rho.marginal(measured));
  const double h_other = von_neumann_entropy(rho.marginal(other));
  DiscordResult res;
  res.semiclassical_cond_entropy = sc.value;
  res.discord = sc.value - (h_joint - h_measured);
  res.classical_correlations = h_other - sc.value;
  res.argmin_basis = sc.basis;
  res.trace = sc.trace;
  return res;
}

}  // namespace qpred
