#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qpred {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major. The universal carrier for states,
// operators and superoperators in this library (dims up to 16).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }
  static ComplexMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }
  std::span<const Complex> data() const { return a_; }
  std::span<Complex> data() { return a_; }

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);
  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  // max |A(i,j) - conj(A(j,i))| over all entries
  double hermiticity_defect() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> a_;
};

// max |a - b| entrywise; dims must match
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Qubit operator constants.
namespace ops {
ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();
ComplexMatrix sigma_plus();   // |1><0|
ComplexMatrix sigma_minus();  // |0><1|
ComplexMatrix ket0_proj();    // |0><0|
ComplexMatrix ket1_proj();    // |1><1|
}  // namespace ops

// Kronecker product; block (i,j) of the result equals a(i,j) * b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Partial trace of a (d1*d2)-dim matrix over one factor; keep is 0 or 1.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t d1, std::size_t d2,
                            std::size_t keep);

struct HermitianEigenResult {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

// Cyclic Jacobi for Hermitian matrices (dims <= 16). Throws NotHermitianError
// when the input asymmetry exceeds tolerance.
HermitianEigenResult hermitian_eig(const ComplexMatrix& m);

// Scaling-and-squaring with a truncated Taylor series; exact at these dims
// for practical purposes (residual ~1e-15 at dim 16).
ComplexMatrix matrix_exp(const ComplexMatrix& m);

// Eigenvalues of a general complex matrix via Hessenberg reduction and
// shifted QR. Needed for Liouvillian spectra; no eigenvectors.
std::vector<Complex> general_eigenvalues(const ComplexMatrix& m);

// Solve a x = b by LU with partial pivoting.
std::vector<Complex> solve_linear(ComplexMatrix a, std::vector<Complex> b);

// Column-stacking vectorization: vec(m)[j*d + i] = m(i,j).
std::vector<Complex> vec(const ComplexMatrix& m);
ComplexMatrix unvec(std::span<const Complex> v);
std::vector<Complex> matvec(const ComplexMatrix& m, std::span<const Complex> x);

}  // namespace qpred
