#pragma once

// Dense matrices over exact rationals with the Kronecker product. This is the
// target category for all models: composition is matrix product, tensor is
// Kronecker product, and equality is exact entrywise equality.

#include "laxcat/rational.hpp"

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace laxcat {

class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  const std::vector<Rational>& entries() const { return a_; }
  std::vector<Rational>& entries() { return a_; }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_)
      throw std::invalid_argument("matrix product dimension mismatch: " + x.dim_str() + " * " +
                                  y.dim_str());
    Matrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const Rational& xik = x.at(i, k);
        if (xik == 0) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) {
          const Rational& ykj = y.at(k, j);
          if (ykj != 0) r.at(i, j) += xik * ykj;
        }
      }
    return r;
  }

  friend Matrix kron(const Matrix& x, const Matrix& y) {
    Matrix r(x.rows_ * y.rows_, x.cols_ * y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t j = 0; j < x.cols_; ++j) {
        const Rational& v = x.at(i, j);
        if (v == 0) continue;
        for (std::size_t k = 0; k < y.rows_; ++k)
          for (std::size_t l = 0; l < y.cols_; ++l)
            r.at(i * y.rows_ + k, j * y.cols_ + l) = v * y.at(k, l);
      }
    return r;
  }

  friend Matrix operator*(const Rational& c, const Matrix& x) {
    Matrix r = x;
    for (auto& e : r.a_) e *= c;
    return r;
  }

  friend Matrix operator+(const Matrix& x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
      throw std::invalid_argument("matrix sum dimension mismatch");
    Matrix r = x;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += y.a_[i];
    return r;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    return *this == identity(rows_);
  }

  // The commutation matrix S with S(v (x) w) = w (x) v for dims (m, n).
  static Matrix swap(std::size_t m, std::size_t n) {
    Matrix r(m * n, m * n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) r.at(j * m + i, i * n + j) = 1;
    return r;
  }

  // Gaussian elimination over the rationals; throws on singular input.
  Matrix inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
    std::size_t n = rows_;
    Matrix a = *this;
    Matrix inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      while (piv < n && a.at(piv, col) == 0) ++piv;
      if (piv == n) throw std::invalid_argument("singular matrix");
      if (piv != col)
        for (std::size_t j = 0; j < n; ++j) {
          std::swap(a.at(piv, j), a.at(col, j));
          std::swap(inv.at(piv, j), inv.at(col, j));
        }
      Rational d = a.at(col, col);
      for (std::size_t j = 0; j < n; ++j) {
        a.at(col, j) /= d;
        inv.at(col, j) /= d;
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (i == col) continue;
        Rational f = a.at(i, col);
        if (f == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
          a.at(i, j) -= f * a.at(col, j);
          inv.at(i, j) -= f * inv.at(col, j);
        }
      }
    }
    return inv;
  }

  std::string dim_str() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

  std::string to_string() const {
    std::ostringstream os;
    os << rows_ << "x" << cols_ << " [";
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i) os << " ;";
      for (std::size_t j = 0; j < cols_; ++j) os << " " << laxcat::to_string(at(i, j));
    }
    os << " ]";
    return os.str();
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> a_;
};

}  // namespace laxcat
