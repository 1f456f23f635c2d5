#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "emtopo/rings.hpp"

namespace emtopo {

/// Dense row-major matrix over a coefficient ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Ring<T>::zero()) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Ring<T>::one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  bool operator==(const Matrix&) const = default;

  Matrix operator*(const Matrix& b) const {
    Matrix out(rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (Ring<T>::is_zero(a)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = Ring<T>::add(out(i, j), Ring<T>::mul(a, b(k, j)));
      }
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += s * row[src]
  void add_row(std::size_t dst, std::size_t src, const T& s) {
    if (Ring<T>::is_zero(s)) return;
    for (std::size_t j = 0; j < cols_; ++j)
      if (!Ring<T>::is_zero((*this)(src, j)))
        (*this)(dst, j) = Ring<T>::add((*this)(dst, j), Ring<T>::mul(s, (*this)(src, j)));
  }
  /// col[dst] += s * col[src]
  void add_col(std::size_t dst, std::size_t src, const T& s) {
    if (Ring<T>::is_zero(s)) return;
    for (std::size_t i = 0; i < rows_; ++i)
      if (!Ring<T>::is_zero((*this)(i, src)))
        (*this)(i, dst) = Ring<T>::add((*this)(i, dst), Ring<T>::mul(s, (*this)(i, src)));
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = Ring<T>::neg((*this)(r, j));
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = Ring<T>::neg((*this)(i, c));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<std::int64_t>;
using BigMatrix = Matrix<BigInt>;

/// S = U A V with S diagonal, d_1 | d_2 | ..., U and V unimodular. The
/// inverses are tracked alongside so that no matrix inversion is needed later.
template <class T>
struct SmithDecomposition {
  Matrix<T> S, U, V, U_inv, V_inv;
  std::size_t rank = 0;
};

template <class T>
SmithDecomposition<T> smith_decompose(Matrix<T> A);

struct SNFResult {
  BigMatrix S, U, V;
  std::vector<BigInt> diagonal;  // nonzero invariant factors, in order
  std::size_t rank = 0;
  bool used_big_integers = false;
};

/// Smith normal form of an integer matrix. Runs in checked 64-bit arithmetic
/// and reruns with arbitrary precision when an intermediate exceeds
/// `threshold` in magnitude.
SNFResult smith_normal_form(const IntMatrix& A, std::int64_t threshold = kDefaultOverflowThreshold);

/// Exact determinant (Bareiss) over the big integers.
BigInt determinant(const BigMatrix& A);

BigMatrix to_big(const IntMatrix& A);

/// Integer solution x of A x = b (any one), or nullopt when none exists.
std::optional<std::vector<BigInt>> solve_integer(const BigMatrix& A, const std::vector<BigInt>& b);

}  // namespace emtopo
