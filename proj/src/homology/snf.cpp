#include "emtopo/snf.hpp"

#include <optional>

namespace emtopo {

namespace {

template <class T>
class SmithWorker {
 public:
  using R = Ring<T>;

  explicit SmithWorker(Matrix<T> A)
      : A_(std::move(A)),
        U_(Matrix<T>::identity(A_.rows())),
        Ui_(Matrix<T>::identity(A_.rows())),
        V_(Matrix<T>::identity(A_.cols())),
        Vi_(Matrix<T>::identity(A_.cols())) {}

  SmithDecomposition<T> run() {
    const std::size_t m = A_.rows(), n = A_.cols();
    std::size_t t = 0;
    while (t < std::min(m, n)) {
      auto piv = min_entry(t, m, t, n);
      if (!piv) break;
      row_swap(t, piv->first);
      col_swap(t, piv->second);
      for (;;) {
        for (std::size_t i = t + 1; i < m; ++i)
          if (!R::is_zero(A_(i, t))) row_add(i, t, R::neg(R::divmod(A_(i, t), A_(t, t)).first));
        if (auto r = min_entry(t + 1, m, t, t + 1)) {
          row_swap(t, r->first);
          continue;
        }
        for (std::size_t j = t + 1; j < n; ++j)
          if (!R::is_zero(A_(t, j))) col_add(j, t, R::neg(R::divmod(A_(t, j), A_(t, t)).first));
        if (auto c = min_entry(t, t + 1, t + 1, n)) {
          col_swap(t, c->second);
          continue;
        }
        if (auto bad = non_divisible(t)) {
          row_add(t, *bad, R::one());
          continue;
        }
        break;
      }
      if (R::is_negative(A_(t, t))) row_neg(t);
      ++t;
    }
    return {std::move(A_), std::move(U_), std::move(V_), std::move(Ui_), std::move(Vi_), t};
  }

 private:
  std::optional<std::pair<std::size_t, std::size_t>> min_entry(std::size_t r0, std::size_t r1, std::size_t c0,
                                                               std::size_t c1) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    decltype(R::norm(A_(0, 0))) best_norm{};
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = c0; j < c1; ++j) {
        const T& a = A_(i, j);
        if (R::is_zero(a)) continue;
        auto nrm = R::norm(a);
        if (!best || nrm < best_norm) {
          best = {i, j};
          best_norm = nrm;
        }
      }
    return best;
  }

  std::optional<std::size_t> non_divisible(std::size_t t) const {
    for (std::size_t i = t + 1; i < A_.rows(); ++i)
      for (std::size_t j = t + 1; j < A_.cols(); ++j)
        if (!R::is_zero(A_(i, j)) && !R::is_zero(R::divmod(A_(i, j), A_(t, t)).second)) return i;
    return std::nullopt;
  }

  void row_swap(std::size_t a, std::size_t b) {
    A_.swap_rows(a, b);
    U_.swap_rows(a, b);
    Ui_.swap_cols(a, b);
  }
  // row[dst] += s row[src]
  void row_add(std::size_t dst, std::size_t src, const T& s) {
    A_.add_row(dst, src, s);
    U_.add_row(dst, src, s);
    Ui_.add_col(src, dst, R::neg(s));
  }
  void row_neg(std::size_t r) {
    A_.negate_row(r);
    U_.negate_row(r);
    Ui_.negate_col(r);
  }
  void col_swap(std::size_t a, std::size_t b) {
    A_.swap_cols(a, b);
    V_.swap_cols(a, b);
    Vi_.swap_rows(a, b);
  }
  // col[dst] += s col[src]
  void col_add(std::size_t dst, std::size_t src, const T& s) {
    A_.add_col(dst, src, s);
    V_.add_col(dst, src, s);
    Vi_.add_row(src, dst, R::neg(s));
  }

  Matrix<T> A_, U_, Ui_, V_, Vi_;
};

struct ThresholdScope {
  explicit ThresholdScope(std::int64_t t) : saved(Ring<std::int64_t>::threshold) { Ring<std::int64_t>::threshold = t; }
  ~ThresholdScope() { Ring<std::int64_t>::threshold = saved; }
  std::int64_t saved;
};

}  // namespace

template <class T>
SmithDecomposition<T> smith_decompose(Matrix<T> A) {
  return SmithWorker<T>(std::move(A)).run();
}

template SmithDecomposition<std::int64_t> smith_decompose(Matrix<std::int64_t>);
template SmithDecomposition<BigInt> smith_decompose(Matrix<BigInt>);
template SmithDecomposition<ModP> smith_decompose(Matrix<ModP>);

BigMatrix to_big(const IntMatrix& A) {
  BigMatrix B(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) B(i, j) = A(i, j);
  return B;
}

SNFResult smith_normal_form(const IntMatrix& A, std::int64_t threshold) {
  SNFResult out;
  SmithDecomposition<BigInt> big;
  bool have_big = false;
  {
    ThresholdScope scope(threshold);
    try {
      for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) Ring<std::int64_t>::check(A(i, j));
      auto small = smith_decompose<std::int64_t>(A);
      big = {to_big(small.S), to_big(small.U), to_big(small.V), to_big(small.U_inv), to_big(small.V_inv), small.rank};
      have_big = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Overflow) throw;
    }
  }
  if (!have_big) {
    big = smith_decompose<BigInt>(to_big(A));
    out.used_big_integers = true;
  }
  out.rank = big.rank;
  for (std::size_t i = 0; i < big.rank; ++i) out.diagonal.push_back(big.S(i, i));
  out.S = std::move(big.S);
  out.U = std::move(big.U);
  out.V = std::move(big.V);
  return out;
}

BigInt determinant(const BigMatrix& A) {
  const std::size_t n = A.rows();
  if (n != A.cols()) fail(ErrorCode::DegreeError, "determinant of a non-square matrix");
  if (n == 0) return 1;
  BigMatrix M = A;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (M(k, k).is_zero()) {
      std::size_t i = k + 1;
      while (i < n && M(i, k).is_zero()) ++i;
      if (i == n) return 0;
      M.swap_rows(i, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

std::optional<std::vector<BigInt>> solve_integer(const BigMatrix& A, const std::vector<BigInt>& b) {
  if (b.size() != A.rows()) fail(ErrorCode::DegreeError, "right-hand side size mismatch");
  auto d = smith_decompose<BigInt>(A);
  // S y = U b, x = V y
  std::vector<BigInt> ub(A.rows(), 0);
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.rows(); ++j) ub[i] += d.U(i, j) * b[j];
  std::vector<BigInt> y(A.cols(), 0);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    if (i < d.rank) {
      if (ub[i] % d.S(i, i) != 0) return std::nullopt;
      y[i] = ub[i] / d.S(i, i);
    } else if (!ub[i].is_zero()) {
      return std::nullopt;
    }
  }
  std::vector<BigInt> x(A.cols(), 0);
  for (std::size_t i = 0; i < A.cols(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) x[i] += d.V(i, j) * y[j];
  return x;
}

}  // namespace emtopo
