#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "outerprod/errors.hpp"
#include "outerprod/vector.hpp"

namespace outerprod {

// Desk-scale dense square matrix backing the spectrum oracles. Row-major.
class Matrix {
 public:
  explicit Matrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  std::size_t dim() const { return n_; }
  double& at(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double at(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += at(i, i);
    return t;
  }

  Matrix operator*(const Matrix& rhs) const {
    Matrix out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t k = 0; k < n_; ++k) {
        const double aik = at(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < n_; ++j) out.at(i, j) += aik * rhs.at(k, j);
      }
    }
    return out;
  }

  void add_to_diagonal(double c) {
    for (std::size_t i = 0; i < n_; ++i) at(i, i) += c;
  }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

inline Matrix outer_matrix(const Vector& a, const Vector& b) {
  require_same_dim(a, b);
  Matrix m(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) m.at(i, j) = a[i] * b[j];
  }
  return m;
}

// ab^T - tI
inline Matrix shifted_outer_matrix(const Vector& a, const Vector& b, double t) {
  Matrix m = outer_matrix(a, b);
  m.add_to_diagonal(-t);
  return m;
}

// Monic characteristic polynomial det(tI - M), coefficients in descending
// degree: coeffs[0] = 1.
struct CharPoly {
  std::vector<double> coeffs;

  std::size_t degree() const { return coeffs.size() - 1; }

  double eval(double t) const {
    double acc = 0.0;
    for (double c : coeffs) acc = acc * t + c;
    return acc;
  }

  friend bool operator==(const CharPoly&, const CharPoly&) = default;
};

// Faddeev-LeVerrier recursion: M_1 = M, c_1 = -tr(M_1),
// M_k = M (M_{k-1} + c_{k-1} I), c_k = -tr(M_k)/k. O(n^4), oracle use only.
inline CharPoly char_poly(const Matrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) throw input_error("char_poly: empty matrix");
  if (n > 8) throw input_error("char_poly: oracle limited to n <= 8, got " + std::to_string(n));

  CharPoly p;
  p.coeffs.assign(n + 1, 0.0);
  p.coeffs[0] = 1.0;

  Matrix mk = m;
  double ck = -mk.trace();
  p.coeffs[1] = ck;
  for (std::size_t k = 2; k <= n; ++k) {
    Matrix tmp = mk;
    tmp.add_to_diagonal(ck);
    mk = m * tmp;
    ck = -mk.trace() / static_cast<double>(k);
    p.coeffs[k] = ck;
  }
  return p;
}

// Determinant via row elimination with partial pivoting; the sign is
// tracked through row swaps. Singular matrices come out as 0 within
// rounding.
inline double det_via_elimination(Matrix m) {
  const std::size_t n = m.dim();
  if (n == 0) throw input_error("det_via_elimination: empty matrix");
  if (n > 16) {
    throw input_error("det_via_elimination: oracle limited to n <= 16, got " + std::to_string(n));
  }

  double sign = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(m.at(row, col)) > std::abs(m.at(pivot, col))) pivot = row;
    }
    if (m.at(pivot, col) == 0.0) return 0.0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
      sign = -sign;
    }
    const double d = m.at(col, col);
    for (std::size_t row = col + 1; row < n; ++row) {
      const double f = m.at(row, col) / d;
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) m.at(row, j) -= f * m.at(col, j);
    }
  }

  double det = sign;
  for (std::size_t i = 0; i < n; ++i) det *= m.at(i, i);
  return det;
}

}  // namespace outerprod
