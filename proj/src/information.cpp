#include "qpred/information.hpp"

#include <cmath>

#include "qpred/errors.hpp"
#include "qpred/tolerances.hpp"

namespace qpred {

namespace {

double spectrum_entropy(const std::vector<double>& eigenvalues) {
  double h = 0.0;
  for (double v : eigenvalues) {
    if (v > tol.entropy_eig_clamp) h -= v * std::log2(v);
  }
  return h;
}

}  // namespace

double von_neumann_entropy(const DensityMatrix& rho) {
  return spectrum_entropy(clamped_spectrum(rho.matrix()));
}

double conditional_entropy(const DensityMatrix& rho) {
  if (!rho.bipartite()) throw DimensionError("conditional entropy needs a bipartite state");
  return von_neumann_entropy(rho) - von_neumann_entropy(rho.marginal(Subsystem::X));
}

double mutual_information(const DensityMatrix& rho) {
  return von_neumann_entropy(rho.marginal(Subsystem::S)) - conditional_entropy(rho);
}

InfoReport info_report(const DensityMatrix& rho) {
  InfoReport rep;
  rep.h_joint = von_neumann_entropy(rho);
  rep.h_marginal_s = von_neumann_entropy(rho.marginal(Subsystem::S));
  rep.h_marginal_x = von_neumann_entropy(rho.marginal(Subsystem::X));
  rep.h_cond_s_given_x = rep.h_joint - rep.h_marginal_x;
  rep.mutual_info = rep.h_marginal_s - rep.h_cond_s_given_x;
  return rep;
}

}  // namespace qpred
