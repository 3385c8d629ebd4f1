#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qpred/matrix.hpp"
#include "qpred/states.hpp"

namespace qpred {

// Completely positive trace-preserving map in Kraus form. Construction
// enforces completeness sum K^dag K = I.
class KrausChannel {
 public:
  KrausChannel(std::vector<ComplexMatrix> operators, std::string label);

  static KrausChannel identity(std::size_t dim);

  std::size_t dim() const { return operators_.front().dim(); }
  const std::vector<ComplexMatrix>& operators() const { return operators_; }
  const std::string& label() const { return label_; }

 private:
  std::vector<ComplexMatrix> operators_;
  std::string label_;
};

// Update map with Kraus operators K0 = |0><0| + sqrt(1-p)|1><1|, K1 = sqrt(p)|0><1|.
KrausChannel update_channel(double p);

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);

// Lift a channel on one subsystem to the joint space (identity elsewhere).
KrausChannel lift_local(const KrausChannel& ch, const std::vector<std::size_t>& dims,
                        Subsystem target = Subsystem::X, Ordering ordering = Ordering::SX);

// rho -> sum_k P_k rho P_k with the projectors lifted to `measured`.
DensityMatrix decohere(const DensityMatrix& rho, const MeasurementBasis& b, Subsystem measured);

// --- channel file format (CLI) ---
// JSON with fields: dim, label (optional), kraus (list of matrices in the
// state-file matrix encoding).
KrausChannel read_channel(std::istream& in);
KrausChannel read_channel_file(const std::string& path);
void write_channel(std::ostream& out, const KrausChannel& ch);
void write_channel_file(const std::string& path, const KrausChannel& ch);

}  // namespace qpred
