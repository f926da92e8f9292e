#pragma once

// Small dense square matrices (d <= 16 in practice) with the handful of
// operations the scoring math needs: products, determinant, inverse,
// symmetric eigenvalues.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace surpcal {

using Vec = std::vector<double>;

class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t d, double fill = 0.0) : d_(d), a_(d * d, fill) {}
  Matrix(std::size_t d, std::initializer_list<double> values) : d_(d), a_(values) {
    if (a_.size() != d * d) throw std::invalid_argument("Matrix: wrong element count");
  }

  static Matrix identity(std::size_t d) {
    Matrix m(d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t dim() const { return d_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * d_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * d_ + j]; }

  Matrix transpose() const {
    Matrix t(d_);
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    if (o.d_ != d_) throw std::invalid_argument("Matrix: dimension mismatch");
    Matrix r(d_);
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t k = 0; k < d_; ++k) {
        const double aik = (*this)(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < d_; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }

 private:
  std::size_t d_ = 0;
  Vec a_;
};

// Row vector times matrix.
inline Vec operator*(const Vec& v, const Matrix& m) {
  if (v.size() != m.dim()) throw std::invalid_argument("vec*Matrix: dimension mismatch");
  Vec r(m.dim(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0.0) continue;
    for (std::size_t j = 0; j < m.dim(); ++j) r[j] += v[i] * m(i, j);
  }
  return r;
}

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// LU with partial pivoting; takes a copy.
inline double determinant(Matrix a) {
  const std::size_t d = a.dim();
  double det = 1.0;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < d; ++r)
      if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
    if (a(piv, col) == 0.0) return 0.0;
    if (piv != col) {
      for (std::size_t j = 0; j < d; ++j) std::swap(a(piv, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < d; ++r) {
      const double f = a(r, col) / a(col, col);
      for (std::size_t j = col; j < d; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

// Gauss-Jordan inverse. Throws std::domain_error when a pivot degenerates
// relative to the matrix scale (reciprocal pivot ratio below `rcondTol`).
inline Matrix inverse(Matrix a, double rcondTol = 1e-10) {
  const std::size_t d = a.dim();
  Matrix inv = Matrix::identity(d);
  double scale = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) scale = std::max(scale, std::fabs(a(i, j)));
  if (scale == 0.0) throw std::domain_error("inverse: zero matrix");
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < d; ++r)
      if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
    if (std::fabs(a(piv, col)) < rcondTol * scale)
      throw std::domain_error("inverse: singular matrix");
    if (piv != col)
      for (std::size_t j = 0; j < d; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const double p = a(col, col);
    for (std::size_t j = 0; j < d; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

// Cyclic Jacobi for symmetric matrices; eigenvalues only, ascending.
inline Vec symmetric_eigenvalues(Matrix a) {
  const std::size_t d = a.dim();
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-28) break;
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) {
        if (std::fabs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < d; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < d; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  Vec ev(d);
  for (std::size_t i = 0; i < d; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace surpcal
