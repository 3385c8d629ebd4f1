#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qpred/matrix.hpp"

namespace qpred {

// Which tensor factor comes first. Canonical is SX (S is the slow index).
enum class Ordering { SX, XS };

enum class Subsystem { S, X };

std::string to_string(Ordering o);
Ordering ordering_from_string(const std::string& s);
std::string to_string(Subsystem s);

struct ValidationReport {
  bool ok = true;
  std::string violation;   // empty when ok
  double magnitude = 0.0;  // size of the violation
};

// Validated quantum state with explicit subsystem dimensions and an ordering
// tag recording which factor is S. Construction enforces the invariants
// (Hermitian, unit trace, positive semidefinite up to the clamp floor).
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix mat, std::vector<std::size_t> dims, Ordering ordering = Ordering::SX);

  // Skips the eigenvalue (positivity) check; for outputs that are positive
  // by construction (channel and measurement images). Hermiticity and trace
  // are still enforced.
  static DensityMatrix trusted(ComplexMatrix mat, std::vector<std::size_t> dims,
                               Ordering ordering = Ordering::SX);

  const ComplexMatrix& matrix() const { return mat_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  Ordering ordering() const { return ordering_; }
  std::size_t dim() const { return mat_.dim(); }
  bool bipartite() const { return dims_.size() == 2; }

  // role -> tensor factor index under the ordering tag
  std::size_t factor_of(Subsystem s) const;
  std::size_t dim_of(Subsystem s) const;
  DensityMatrix marginal(Subsystem s) const;

  // Same state with the two factors swapped and the tag flipped.
  DensityMatrix swapped() const;

 private:
  DensityMatrix() = default;
  ComplexMatrix mat_;
  std::vector<std::size_t> dims_;
  Ordering ordering_ = Ordering::SX;
};

// Reports pass/fail with the violated invariant and its magnitude; never throws.
ValidationReport validate(const ComplexMatrix& mat);

// Eigenvalues of rho, clamped per the positivity policy: values in
// [psd_floor, 0) go to 0 and the spectrum is renormalized to sum 1.
// Throws ValidationError below the floor.
std::vector<double> clamped_spectrum(const ComplexMatrix& mat);

// rho_SX(t0) = |0><0|_S (x) I/2, the uncorrelated start of the protocol.
DensityMatrix initial_state();

// Rank-one projective qubit measurement parametrized by Bloch angles.
struct MeasurementBasis {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2*pi)
};

// P_pm = (I pm n.sigma)/2 with n = (sin t cos p, sin t sin p, cos t).
std::pair<ComplexMatrix, ComplexMatrix> projectors(const MeasurementBasis& b);

struct ConditionedBranch {
  double probability = 0.0;
  // Joint-space state conditioned on the outcome; empty when the branch
  // probability is below tolerance (null-state marker).
  std::optional<DensityMatrix> state;
};

// rho_k = (P_k on `measured`) rho (P_k on `measured`) / p_k for outcome k in {0,1}.
ConditionedBranch conditioned_state(const DensityMatrix& rho, const MeasurementBasis& b,
                                    Subsystem measured, int outcome);

// --- state file format (shared with the CLI) ---
// JSON with fields: dims (list of ints), ordering ("SX"/"XS"), matrix
// (row-major list of [re, im] pairs). Doubles round-trip bit-exactly.
DensityMatrix read_state(std::istream& in);
DensityMatrix read_state_file(const std::string& path);

// Parse without enforcing the state invariants; for the validate command,
// which reports violations instead of throwing.
struct UncheckedState {
  ComplexMatrix mat;
  std::vector<std::size_t> dims;
  Ordering ordering = Ordering::SX;
};
UncheckedState read_state_unchecked(std::istream& in);
void write_state(std::ostream& out, const DensityMatrix& rho);
void write_state_file(const std::string& path, const DensityMatrix& rho);

}  // namespace qpred
