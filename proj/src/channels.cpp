#include "qpred/channels.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qpred/errors.hpp"
#include "qpred/tolerances.hpp"

namespace qpred {

KrausChannel::KrausChannel(std::vector<ComplexMatrix> operators, std::string label)
    : operators_(std::move(operators)), label_(std::move(label)) {
  if (operators_.empty()) throw ValidationError("channel needs at least one Kraus operator");
  const std::size_t d = operators_.front().dim();
  ComplexMatrix sum(d);
  for (const auto& k : operators_) {
    if (k.dim() != d) throw DimensionError("Kraus operators must share one dimension");
    sum += k.adjoint() * k;
  }
  const double defect = max_abs_diff(sum, ComplexMatrix::identity(d));
  if (defect > tol.kraus_completeness) {
    std::ostringstream msg;
    msg << "Kraus completeness violated by " << defect;
    throw ValidationError(msg.str());
  }
}

KrausChannel KrausChannel::identity(std::size_t dim) {
  return KrausChannel({ComplexMatrix::identity(dim)}, "identity");
}

KrausChannel update_channel(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("update channel needs p in [0, 1]");
  ComplexMatrix k0(2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - p);
  ComplexMatrix k1(2);
  k1(0, 1) = std::sqrt(p);
  std::ostringstream label;
  label << "update(p=" << p << ")";
  return KrausChannel({std::move(k0), std::move(k1)}, label.str());
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  if (ch.dim() != rho.dim()) throw DimensionError("channel/state dimension mismatch");
  ComplexMatrix out(rho.dim());
  for (const auto& k : ch.operators()) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix::trusted(std::move(out), rho.dims(), rho.ordering());
}

KrausChannel lift_local(const KrausChannel& ch, const std::vector<std::size_t>& dims,
                        Subsystem target, Ordering ordering) {
  if (dims.size() != 2) throw DimensionError("lift_local needs a bipartite dims list");
  const bool first = (target == Subsystem::S) == (ordering == Ordering::SX);
  const std::size_t factor = first ? 0 : 1;
  if (ch.dim() != dims[factor]) throw DimensionError("channel does not act on the target factor");
  std::vector<ComplexMatrix> lifted;
  lifted.reserve(ch.operators().size());
  for (const auto& k : ch.operators()) {
    lifted.push_back(factor == 0 ? kron(k, ComplexMatrix::identity(dims[1]))
                                 : kron(ComplexMatrix::identity(dims[0]), k));
  }
  return KrausChannel(std::move(lifted), ch.label() + " on " + to_string(target));
}

DensityMatrix decohere(const DensityMatrix& rho, const MeasurementBasis& b, Subsystem measured) {
  if (rho.dim_of(measured) != 2) throw DimensionError("measured subsystem must be a qubit");
  auto [p0, p1] = projectors(b);
  const std::size_t factor = rho.factor_of(measured);
  const auto lift = [&](const ComplexMatrix& p) {
    return factor == 0 ? kron(p, ComplexMatrix::identity(rho.dims()[1]))
                       : kron(ComplexMatrix::identity(rho.dims()[0]), p);
  };
  const ComplexMatrix l0 = lift(p0), l1 = lift(p1);
  ComplexMatrix out = l0 * rho.matrix() * l0 + l1 * rho.matrix() * l1;
  return DensityMatrix::trusted(std::move(out), rho.dims(), rho.ordering());
}

// --- file format ---

namespace {

using nlohmann::json;

}  // namespace

KrausChannel read_channel(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("channel file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("kraus")) {
    throw ParseError("channel file must contain 'dim' and 'kraus'");
  }
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1) {
    throw ParseError("dim must be a positive integer");
  }
  const auto dim = doc["dim"].get<std::size_t>();
  if (!doc["kraus"].is_array() || doc["kraus"].empty()) {
    throw ParseError("kraus must be a non-empty list of matrices");
  }
  std::vector<ComplexMatrix> operators;
  for (const auto& mat : doc["kraus"]) {
    if (!mat.is_array() || mat.size() != dim * dim) {
      throw ParseError("kraus matrix entry count does not match dim");
    }
    ComplexMatrix k(dim);
    std::size_t idx = 0;
    for (const auto& pair : mat) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
        throw ParseError("matrix entries must be [re, im] pairs");
      }
      k(idx / dim, idx % dim) = Complex(pair[0].get<double>(), pair[1].get<double>());
      ++idx;
    }
    operators.push_back(std::move(k));
  }
  const std::string label = doc.value("label", std::string("channel"));
  return KrausChannel(std::move(operators), label);
}

KrausChannel read_channel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open channel file: " + path);
  return read_channel(in);
}

void write_channel(std::ostream& out, const KrausChannel& ch) {
  json doc;
  doc["dim"] = ch.dim();
  doc["label"] = ch.label();
  json kraus = json::array();
  for (const auto& k : ch.operators()) {
    json mat = json::array();
    for (std::size_t i = 0; i < k.dim(); ++i)
      for (std::size_t j = 0; j < k.dim(); ++j)
        mat.push_back(json::array({k(i, j).real(), k(i, j).imag()}));
    kraus.push_back(std::move(mat));
  }
  doc["kraus"] = std::move(kraus);
  out << doc.dump(1) << '\n';
}

void write_channel_file(const std::string& path, const KrausChannel& ch) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open output file: " + path);
  write_channel(out, ch);
}

}  // namespace qpred
