#include "qpred/states.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qpred/errors.hpp"
#include "qpred/tolerances.hpp"

namespace qpred {

std::string to_string(Ordering o) { return o == Ordering::SX ? "SX" : "XS"; }

Ordering ordering_from_string(const std::string& s) {
  if (s == "SX" || s == "S\xE2\x8A\x97X") return Ordering::SX;  // accepts "S⊗X"
  if (s == "XS" || s == "X\xE2\x8A\x97S") return Ordering::XS;
  throw ParseError("unknown ordering label: " + s);
}

std::string to_string(Subsystem s) { return s == Subsystem::S ? "S" : "X"; }

ValidationReport validate(const ComplexMatrix& mat) {
  ValidationReport rep;
  const double herm = mat.hermiticity_defect();
  if (herm > tol.hermiticity) {
    return {false, "hermiticity", herm};
  }
  const double tr_err = std::abs(mat.trace() - Complex(1.0, 0.0));
  if (tr_err > tol.unit_trace) {
    return {false, "unit-trace", tr_err};
  }
  const auto eig = hermitian_eig(mat);
  const double min_eig = eig.eigenvalues.front();
  if (min_eig < tol.psd_floor) {
    return {false, "positivity", -min_eig};
  }
  return rep;
}

std::vector<double> clamped_spectrum(const ComplexMatrix& mat) {
  auto eig = hermitian_eig(mat);
  double sum = 0.0;
  for (auto& v : eig.eigenvalues) {
    if (v < tol.psd_floor) {
      std::ostringstream msg;
      msg << "state eigenvalue " << v << " below clamp floor";
      throw ValidationError(msg.str());
    }
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  if (sum > 0.0) {
    for (auto& v : eig.eigenvalues) v /= sum;
  }
  return eig.eigenvalues;
}

namespace {

std::size_t product(const std::vector<std::size_t>& dims) {
  std::size_t p = 1;
  for (auto d : dims) p *= d;
  return p;
}

void check_dims(const ComplexMatrix& mat, const std::vector<std::size_t>& dims) {
  if (dims.empty() || product(dims) != mat.dim()) {
    throw DimensionError("subsystem dims do not factor the matrix dimension");
  }
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix mat, std::vector<std::size_t> dims, Ordering ordering) {
  check_dims(mat, dims);
  const auto rep = validate(mat);
  if (!rep.ok) {
    std::ostringstream msg;
    msg << "density matrix violates " << rep.violation << " by " << rep.magnitude;
    throw ValidationError(msg.str());
  }
  mat_ = std::move(mat);
  dims_ = std::move(dims);
  ordering_ = ordering;
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix mat, std::vector<std::size_t> dims,
                                     Ordering ordering) {
  check_dims(mat, dims);
  const double herm = mat.hermiticity_defect();
  if (herm > tol.hermiticity) {
    std::ostringstream msg;
    msg << "density matrix violates hermiticity by " << herm;
    throw ValidationError(msg.str());
  }
  const double tr_err = std::abs(mat.trace() - Complex(1.0, 0.0));
  if (tr_err > tol.unit_trace) {
    std::ostringstream msg;
    msg << "density matrix violates unit-trace by " << tr_err;
    throw ValidationError(msg.str());
  }
  DensityMatrix rho;
  rho.mat_ = std::move(mat);
  rho.dims_ = std::move(dims);
  rho.ordering_ = ordering;
  return rho;
}

std::size_t DensityMatrix::factor_of(Subsystem s) const {
  if (!bipartite()) throw DimensionError("subsystem access on a non-bipartite state");
  const bool first = (s == Subsystem::S) == (ordering_ == Ordering::SX);
  return first ? 0 : 1;
}

std::size_t DensityMatrix::dim_of(Subsystem s) const { return dims_[factor_of(s)]; }

DensityMatrix DensityMatrix::marginal(Subsystem s) const {
  const std::size_t keep = factor_of(s);
  ComplexMatrix red = partial_trace(mat_, dims_[0], dims_[1], keep);
  return DensityMatrix::trusted(std::move(red), {dims_[keep]});
}

DensityMatrix DensityMatrix::swapped() const {
  if (!bipartite()) throw DimensionError("swap on a non-bipartite state");
  const std::size_t d1 = dims_[0], d2 = dims_[1];
  ComplexMatrix out(mat_.dim());
  for (std::size_t a = 0; a < d1; ++a)
    for (std::size_t b = 0; b < d2; ++b)
      for (std::size_t c = 0; c < d1; ++c)
        for (std::size_t e = 0; e < d2; ++e)
          out(b * d1 + a, e * d1 + c) = mat_(a * d2 + b, c * d2 + e);
  DensityMatrix rho;
  rho.mat_ = std::move(out);
  rho.dims_ = {d2, d1};
  rho.ordering_ = ordering_ == Ordering::SX ? Ordering::XS : Ordering::SX;
  return rho;
}

DensityMatrix initial_state() {
  ComplexMatrix m(4);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  return DensityMatrix(std::move(m), {2, 2}, Ordering::SX);
}

std::pair<ComplexMatrix, ComplexMatrix> projectors(const MeasurementBasis& b) {
  const double nx = std::sin(b.theta) * std::cos(b.phi);
  const double ny = std::sin(b.theta) * std::sin(b.phi);
  const double nz = std::cos(b.theta);
  ComplexMatrix p(2);
  p(0, 0) = 0.5 * (1.0 + nz);
  p(1, 1) = 0.5 * (1.0 - nz);
  p(0, 1) = 0.5 * Complex(nx, -ny);
  p(1, 0) = 0.5 * Complex(nx, ny);
  ComplexMatrix q = ComplexMatrix::identity(2) - p;
  return {std::move(p), std::move(q)};
}

ConditionedBranch conditioned_state(const DensityMatrix& rho, const MeasurementBasis& b,
                                    Subsystem measured, int outcome) {
  if (rho.dim_of(measured) != 2) throw DimensionError("measured subsystem must be a qubit");
  auto [p0, p1] = projectors(b);
  const ComplexMatrix& p = outcome == 0 ? p0 : p1;
  const std::size_t factor = rho.factor_of(measured);
  const ComplexMatrix lifted =
      factor == 0 ? kron(p, ComplexMatrix::identity(rho.dims()[1]))
                  : kron(ComplexMatrix::identity(rho.dims()[0]), p);
  ComplexMatrix raw = lifted * rho.matrix() * lifted;
  // symmetrize away matmul roundoff, which 1/prob would otherwise amplify
  // for near-null branches
  ComplexMatrix sandwich = raw.adjoint();
  sandwich += raw;
  sandwich *= Complex(0.5, 0.0);
  const double prob = sandwich.trace().real();
  ConditionedBranch branch;
  branch.probability = prob;
  if (prob <= tol.branch_probability) return branch;  // null-state marker
  sandwich *= Complex(1.0 / prob, 0.0);
  branch.state = DensityMatrix::trusted(std::move(sandwich), rho.dims(), rho.ordering());
  return branch;
}

// --- file format ---

namespace {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
  json arr = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) {
      const Complex& z = m(i, j);
      arr.push_back(json::array({z.real(), z.imag()}));
    }
  return arr;
}

ComplexMatrix matrix_from_json(const json& arr, std::size_t dim) {
  if (!arr.is_array() || arr.size() != dim * dim) {
    throw ParseError("matrix entry count does not match dims");
  }
  ComplexMatrix m(dim);
  std::size_t k = 0;
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
      throw ParseError("matrix entries must be [re, im] pairs");
    }
    m(k / dim, k % dim) = Complex(pair[0].get<double>(), pair[1].get<double>());
    ++k;
  }
  return m;
}

UncheckedState parse_state(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("state file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dims") || !doc.contains("matrix")) {
    throw ParseError("state file must contain 'dims' and 'matrix'");
  }
  UncheckedState raw;
  for (const auto& d : doc["dims"]) {
    if (!d.is_number_integer() || d.get<long long>() < 1) {
      throw ParseError("dims must be positive integers");
    }
    raw.dims.push_back(d.get<std::size_t>());
  }
  if (raw.dims.empty()) throw ParseError("dims must be non-empty");
  if (doc.contains("ordering")) {
    if (!doc["ordering"].is_string()) throw ParseError("ordering must be a string");
    raw.ordering = ordering_from_string(doc["ordering"].get<std::string>());
  }
  raw.mat = matrix_from_json(doc["matrix"], product(raw.dims));
  return raw;
}

}  // namespace

DensityMatrix read_state(std::istream& in) {
  UncheckedState raw = parse_state(in);
  return DensityMatrix(std::move(raw.mat), std::move(raw.dims), raw.ordering);
}

UncheckedState read_state_unchecked(std::istream& in) { return parse_state(in); }

DensityMatrix read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open state file: " + path);
  return read_state(in);
}

void write_state(std::ostream& out, const DensityMatrix& rho) {
  json doc;
  doc["dims"] = rho.dims();
  doc["ordering"] = to_string(rho.ordering());
  doc["matrix"] = matrix_to_json(rho.matrix());
  out << doc.dump(1) << '\n';
}

void write_state_file(const std::string& path, const DensityMatrix& rho) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open output file: " + path);
  write_state(out, rho);
}

}  // namespace qpred
