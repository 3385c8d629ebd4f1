#include "qpred/matrix.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "qpred/errors.hpp"
#include "qpred/tolerances.hpp"

namespace qpred {

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), a_(std::move(entries)) {
  if (dim_ < 1 || a_.size() != dim_ * dim_) {
    throw DimensionError("entry count does not match dim*dim");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  a_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw DimensionError("ragged initializer");
    a_.insert(a_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (o.dim_ != dim_) throw DimensionError("dim mismatch in +");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (o.dim_ != dim_) throw DimensionError("dim mismatch in -");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& x : a_) x *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim_ != b.dim_) throw DimensionError("dim mismatch in *");
  const std::size_t n = a.dim_;
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a.a_[i * n + k];
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) c.a_[i * n + j] += aik * b.a_[k * n + j];
    }
  }
  return c;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix m(dim_);
  for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = std::conj(a_[k]);
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t{};
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : a_) s += std::norm(x);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : a_) m = std::max(m, std::abs(x));
  return m;
}

double ComplexMatrix::hermiticity_defect() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("dim mismatch in max_abs_diff");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

namespace ops {
ComplexMatrix sigma_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix sigma_y() { return {{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}}; }
ComplexMatrix sigma_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
ComplexMatrix sigma_plus() { return {{0.0, 0.0}, {1.0, 0.0}}; }
ComplexMatrix sigma_minus() { return {{0.0, 1.0}, {0.0, 0.0}}; }
ComplexMatrix ket0_proj() { return {{1.0, 0.0}, {0.0, 0.0}}; }
ComplexMatrix ket1_proj() { return {{0.0, 0.0}, {0.0, 1.0}}; }
}  // namespace ops

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  ComplexMatrix c(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) c(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return c;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t d1, std::size_t d2,
                            std::size_t keep) {
  if (m.dim() != d1 * d2) throw DimensionError("partial_trace: dim != d1*d2");
  if (keep > 1) throw DimensionError("partial_trace: keep must be 0 or 1");
  const std::size_t dk = keep == 0 ? d1 : d2;
  const std::size_t dt = keep == 0 ? d2 : d1;
  ComplexMatrix out(dk);
  for (std::size_t i = 0; i < dk; ++i)
    for (std::size_t j = 0; j < dk; ++j) {
      Complex s{};
      for (std::size_t t = 0; t < dt; ++t) {
        const std::size_t r = keep == 0 ? i * d2 + t : t * d2 + i;
        const std::size_t c = keep == 0 ? j * d2 + t : t * d2 + j;
        s += m(r, c);
      }
      out(i, j) = s;
    }
  return out;
}

namespace {

double offdiag_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

HermitianEigenResult hermitian_eig(const ComplexMatrix& m) {
  if (m.hermiticity_defect() > tol.hermiticity) {
    throw NotHermitianError("hermitian_eig: input asymmetry exceeds tolerance");
  }
  const std::size_t n = m.dim();
  // symmetrize away the sub-tolerance asymmetry before iterating
  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  ComplexMatrix v = ComplexMatrix::identity(n);

  // Cyclic Jacobi with complex rotations. Each rotation zeroes a(p,q) by the
  // unitary J = P R, P = diag(1, e^{-i phi}) absorbing the phase of a(p,q),
  // R the classic symmetric 2x2 rotation.
  const double stop = tol.jacobi_offdiag * std::max(1.0, a.frobenius_norm());
  for (int sweep = 0; sweep < 64 && offdiag_norm(a) > stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double b = std::abs(apq);
        if (b == 0.0) continue;
        const Complex phase = apq / b;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * b);
        const double sgn = tau >= 0.0 ? 1.0 : -1.0;
        const double t = sgn / (std::abs(tau) + std::sqrt(tau * tau + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex sp = s * phase;             // s e^{i phi}
        const Complex spc = s * std::conj(phase); // s e^{-i phi}
        // A <- J^dag A J ; columns then rows
        for (std::size_t r = 0; r < n; ++r) {
          const Complex arp = a(r, p), arq = a(r, q);
          a(r, p) = c * arp - spc * arq;
          a(r, q) = s * arp + c * std::conj(phase) * arq;
        }
        for (std::size_t cidx = 0; cidx < n; ++cidx) {
          const Complex apc = a(p, cidx), aqc = a(q, cidx);
          a(p, cidx) = c * apc - sp * aqc;
          a(q, cidx) = s * apc + c * phase * aqc;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const Complex vrp = v(r, p), vrq = v(r, q);
          v(r, p) = c * vrp - spc * vrq;
          v(r, q) = s * vrp + c * std::conj(phase) * vrq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  HermitianEigenResult res;
  res.eigenvalues.resize(n);
  res.eigenvectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    res.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) res.eigenvectors(r, k) = v(r, order[k]);
  }
  return res;
}

ComplexMatrix matrix_exp(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  double norm = 0.0;  // inf-norm
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(m(i, j));
    norm = std::max(norm, row);
  }
  int s = 0;
  while (norm > 0.5) {
    norm /= 2.0;
    ++s;
  }
  ComplexMatrix b = m;
  b *= Complex(std::ldexp(1.0, -s), 0.0);

  ComplexMatrix result = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k <= 40; ++k) {
    term = term * b;
    term *= Complex(1.0 / k, 0.0);
    result += term;
    if (term.max_abs() < tol.expm_tail * std::max(1.0, result.max_abs())) break;
  }
  for (int k = 0; k < s; ++k) result = result * result;
  return result;
}

namespace {

// Householder reduction to upper Hessenberg form (in place).
void to_hessenberg(ComplexMatrix& h) {
  const std::size_t n = h.dim();
  if (n < 3) return;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double scale = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) scale += std::norm(h(i, k));
    scale = std::sqrt(scale);
    if (scale == 0.0) continue;
    Complex x0 = h(k + 1, k);
    const double ax0 = std::abs(x0);
    const Complex phase = ax0 == 0.0 ? Complex(1, 0) : x0 / ax0;
    // v = x + phase*scale*e1
    std::vector<Complex> vvec(n - k - 1);
    for (std::size_t i = 0; i < vvec.size(); ++i) vvec[i] = h(k + 1 + i, k);
    vvec[0] += phase * scale;
    double vnorm2 = 0.0;
    for (const auto& c : vvec) vnorm2 += std::norm(c);
    if (vnorm2 == 0.0) continue;
    // H = I - 2 v v^dag / |v|^2 ; apply from left and right
    for (std::size_t j = k; j < n; ++j) {
      Complex dot{};
      for (std::size_t i = 0; i < vvec.size(); ++i) dot += std::conj(vvec[i]) * h(k + 1 + i, j);
      dot *= 2.0 / vnorm2;
      for (std::size_t i = 0; i < vvec.size(); ++i) h(k + 1 + i, j) -= dot * vvec[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      Complex dot{};
      for (std::size_t j = 0; j < vvec.size(); ++j) dot += h(i, k + 1 + j) * vvec[j];
      dot *= 2.0 / vnorm2;
      for (std::size_t j = 0; j < vvec.size(); ++j) h(i, k + 1 + j) -= dot * std::conj(vvec[j]);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j + 1 < i; ++j) h(i, j) = 0.0;
}

Complex wilkinson_shift(const ComplexMatrix& h, std::size_t m) {
  // eigenvalue of the trailing 2x2 block closest to h(m,m)
  const Complex a = h(m - 1, m - 1), b = h(m - 1, m), c = h(m, m - 1), d = h(m, m);
  const Complex tr = a + d;
  const Complex det = a * d - b * c;
  const Complex disc = std::sqrt(tr * tr - 4.0 * det);
  const Complex l1 = 0.5 * (tr + disc), l2 = 0.5 * (tr - disc);
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace

std::vector<Complex> general_eigenvalues(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  ComplexMatrix h = m;
  to_hessenberg(h);
  std::vector<Complex> eig;
  eig.reserve(n);

  const double eps = 1e-15;
  std::size_t hi = n;  // active block is rows/cols [0, hi)
  int iter = 0;
  while (hi > 0) {
    if (hi == 1) {
      eig.push_back(h(0, 0));
      break;
    }
    // deflate converged subdiagonals
    bool deflated = false;
    for (std::size_t i = hi - 1; i >= 1; --i) {
      if (std::abs(h(i, i - 1)) <= eps * (std::abs(h(i - 1, i - 1)) + std::abs(h(i, i)))) {
        h(i, i - 1) = 0.0;
        if (i == hi - 1) {
          eig.push_back(h(hi - 1, hi - 1));
          --hi;
          iter = 0;
          deflated = true;
        }
        break;
      }
      if (i == 1) break;
    }
    if (deflated) continue;
    if (++iter > 60 * static_cast<int>(n)) {
      throw ConsistencyError("general_eigenvalues: QR iteration failed to converge");
    }
    Complex mu = wilkinson_shift(h, hi - 1);
    if (iter % 10 == 0) {
      // exceptional shift to break rare cycling
      mu = Complex(std::abs(h(hi - 1, hi - 2)) + std::abs(h(hi - 1, hi - 1)), 0.0);
    }
    // explicit shifted QR step on the active block via Givens rotations
    std::vector<std::array<Complex, 2>> rot;
    rot.reserve(hi);
    for (std::size_t i = 0; i < hi; ++i) h(i, i) -= mu;
    for (std::size_t k = 0; k + 1 < hi; ++k) {
      const Complex x = h(k, k), y = h(k + 1, k);
      const double r = std::sqrt(std::norm(x) + std::norm(y));
      Complex cs(1, 0), sn(0, 0);
      if (r > 0.0) {
        cs = x / r;
        sn = y / r;
      }
      rot.push_back({cs, sn});
      for (std::size_t j = k; j < hi; ++j) {
        const Complex hkj = h(k, j), hk1j = h(k + 1, j);
        h(k, j) = std::conj(cs) * hkj + std::conj(sn) * hk1j;
        h(k + 1, j) = -sn * hkj + cs * hk1j;
      }
    }
    for (std::size_t k = 0; k + 1 < hi; ++k) {
      const Complex cs = rot[k][0], sn = rot[k][1];
      const std::size_t top = std::min(k + 2, hi - 1);
      for (std::size_t i = 0; i <= top; ++i) {
        const Complex hik = h(i, k), hik1 = h(i, k + 1);
        h(i, k) = hik * cs + hik1 * sn;
        h(i, k + 1) = -hik * std::conj(sn) + hik1 * std::conj(cs);
      }
    }
    for (std::size_t i = 0; i < hi; ++i) h(i, i) += mu;
  }
  return eig;
}

std::vector<Complex> solve_linear(ComplexMatrix a, std::vector<Complex> b) {
  const std::size_t n = a.dim();
  if (b.size() != n) throw DimensionError("solve_linear: rhs size mismatch");
  std::vector<std::size_t> piv(n);
  std::iota(piv.begin(), piv.end(), std::size_t{0});
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    double bestmag = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > bestmag) {
        best = i;
        bestmag = std::abs(a(i, k));
      }
    }
    if (best != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(best, j));
      std::swap(b[k], b[best]);
    }
    Complex pivot = a(k, k);
    if (std::abs(pivot) == 0.0) pivot = Complex(1e-300, 0.0);  // inverse-iteration use
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = a(i, k) / pivot;
      if (f == Complex{}) continue;
      a(i, k) = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<Complex> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    Complex s = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
    Complex pivot = a(ii, ii);
    if (std::abs(pivot) == 0.0) pivot = Complex(1e-300, 0.0);
    x[ii] = s / pivot;
  }
  return x;
}

std::vector<Complex> vec(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<Complex> v(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) v[j * n + i] = m(i, j);
  return v;
}

ComplexMatrix unvec(std::span<const Complex> v) {
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (n * n != v.size()) throw DimensionError("unvec: length is not a perfect square");
  ComplexMatrix m(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = v[j * n + i];
  return m;
}

std::vector<Complex> matvec(const ComplexMatrix& m, std::span<const Complex> x) {
  const std::size_t n = m.dim();
  if (x.size() != n) throw DimensionError("matvec: size mismatch");
  std::vector<Complex> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex s{};
    for (std::size_t j = 0; j < n; ++j) s += m(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

}  // namespace qpred
