#include "emtopo/homology.hpp"

#include <algorithm>
#include <queue>
#include <tuple>
#include <unordered_map>

#include "emtopo/snf.hpp"

namespace emtopo {

namespace {

template <class T>
std::int64_t to_int64(const T& v) {
  if constexpr (std::is_same_v<T, std::int64_t>) {
    return v;
  } else if constexpr (std::is_same_v<T, BigInt>) {
    if (v > BigInt(kDefaultOverflowThreshold) || v < -BigInt(kDefaultOverflowThreshold))
      fail(ErrorCode::Overflow, "generator coefficient does not fit in 64 bits");
    return static_cast<std::int64_t>(v);
  } else {
    static_assert(sizeof(T) == 0, "no integer view");
  }
}

// One recorded elimination of the pair (a in C_k, b in C_{k-1}) with
// d_k(b, a) = kappa a unit.
template <class T>
struct Elimination {
  int k;
  std::int32_t a, b;
  T kappa_inv;
  std::vector<std::pair<std::int32_t, T>> alpha;  // column a without b
  std::vector<std::pair<std::int32_t, T>> beta;   // row b without a
};

template <class T>
class Reducer {
 public:
  using R = Ring<T>;
  using Map = std::unordered_map<std::int32_t, T>;

  explicit Reducer(const SimplicialComplex& K) : dim_(std::max(K.dimension(), 0)) {
    for (int d = 0; d <= kMaxDim; ++d) alive_[d].assign(K.count(d), 1);
    const auto bd = boundary_matrices(K);
    for (int k = 1; k <= dim_; ++k) {
      const auto& m = bd[k - 1];
      cols_[k].resize(m.cols);
      rows_[k].resize(m.rows);
      for (std::size_t a = 0; a < m.cols; ++a)
        for (auto [b, v] : m.columns[a]) {
          cols_[k][a].emplace(b, from_int64<T>(v));
          rows_[k][b].emplace(static_cast<std::int32_t>(a), from_int64<T>(v));
        }
    }
  }

  void run() {
    for (int k = 1; k <= dim_; ++k)
      for (std::size_t a = 0; a < cols_[k].size(); ++a) push_column(k, static_cast<std::int32_t>(a));
    while (!queue_.empty()) {
      auto [cost, k, a, b] = queue_.top();
      queue_.pop();
      if (!alive_[k][a] || !alive_[k - 1][b]) continue;
      auto it = cols_[k][a].find(b);
      if (it == cols_[k][a].end() || !R::is_unit(it->second)) continue;
      const auto now = cost_of(k, a, b);
      if (now > cost) {
        queue_.emplace(now, k, a, b);
        continue;
      }
      eliminate(k, a, b);
    }
  }

  int dimension() const { return dim_; }
  const std::vector<Elimination<T>>& log() const { return log_; }

  std::vector<std::int32_t> survivors(int d) const {
    std::vector<std::int32_t> out;
    for (std::size_t i = 0; i < alive_[d].size(); ++i)
      if (alive_[d][i]) out.push_back(static_cast<std::int32_t>(i));
    return out;
  }

  /// Reduced boundary d'_k restricted to surviving bases.
  Matrix<T> reduced_boundary(int k, const std::vector<std::int32_t>& rows,
                             const std::vector<std::int32_t>& cols) const {
    Matrix<T> M(rows.size(), cols.size());
    if (k < 1 || k > dim_) return M;
    std::unordered_map<std::int32_t, std::size_t> row_pos;
    for (std::size_t i = 0; i < rows.size(); ++i) row_pos[rows[i]] = i;
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (const auto& [r, v] : cols_[k][cols[j]]) M(row_pos.at(r), j) = v;
    return M;
  }

 private:
  using Candidate = std::tuple<std::uint64_t, int, std::int32_t, std::int32_t>;

  std::uint64_t cost_of(int k, std::int32_t a, std::int32_t b) const {
    return static_cast<std::uint64_t>(cols_[k][a].size() - 1) * (rows_[k][b].size() - 1);
  }

  void push_column(int k, std::int32_t a) {
    for (const auto& [b, v] : cols_[k][a])
      if (R::is_unit(v)) queue_.emplace(cost_of(k, a, b), k, a, b);
  }

  void set_entry(int k, std::int32_t r, std::int32_t c, const T& v) {
    if (R::is_zero(v)) {
      cols_[k][c].erase(r);
      rows_[k][r].erase(c);
    } else {
      cols_[k][c][r] = v;
      rows_[k][r][c] = v;
    }
  }

  void eliminate(int k, std::int32_t a, std::int32_t b) {
    Elimination<T> e;
    e.k = k;
    e.a = a;
    e.b = b;
    e.kappa_inv = R::unit_inverse(cols_[k][a].at(b));
    for (const auto& [r, v] : cols_[k][a])
      if (r != b) e.alpha.emplace_back(r, v);
    for (const auto& [y, v] : rows_[k][b])
      if (y != a) e.beta.emplace_back(y, v);
    std::sort(e.alpha.begin(), e.alpha.end(), [](auto& x, auto& y) { return x.first < y.first; });
    std::sort(e.beta.begin(), e.beta.end(), [](auto& x, auto& y) { return x.first < y.first; });

    // col_y -= beta_y kappa^-1 col_a, which clears row b outside column a.
    std::vector<std::pair<std::int32_t, T>> col_a(cols_[k][a].begin(), cols_[k][a].end());
    for (const auto& [y, beta] : e.beta) {
      const T s = R::neg(R::mul(beta, e.kappa_inv));
      for (const auto& [r, v] : col_a) {
        auto it = cols_[k][y].find(r);
        const T old = it == cols_[k][y].end() ? R::zero() : it->second;
        set_entry(k, r, y, R::add(old, R::mul(s, v)));
      }
    }
    for (const auto& [r, v] : col_a) rows_[k][r].erase(a);
    cols_[k][a].clear();
    rows_[k][b].clear();

    std::vector<std::int32_t> touched_up;
    if (k + 1 <= dim_) {
      for (const auto& [z, v] : rows_[k + 1][a]) {
        cols_[k + 1][z].erase(a);
        touched_up.push_back(z);
      }
      rows_[k + 1][a].clear();
    }
    std::vector<std::int32_t> touched_down;
    if (k - 1 >= 1) {
      for (const auto& [r, v] : cols_[k - 1][b]) {
        rows_[k - 1][r].erase(b);
        touched_down.push_back(r);
      }
      cols_[k - 1][b].clear();
    }
    alive_[k][a] = 0;
    alive_[k - 1][b] = 0;

    for (const auto& [y, v] : e.beta) push_column(k, y);
    for (auto z : touched_up) push_column(k + 1, z);
    for (auto r : touched_down)
      for (const auto& [c, v] : rows_[k - 1][r])
        if (R::is_unit(v)) queue_.emplace(cost_of(k - 1, c, r), k - 1, c, r);
    // rows of d_k that lost column a
    for (const auto& [r, v] : col_a)
      if (r != b)
        for (const auto& [c, w] : rows_[k][r])
          if (R::is_unit(w)) queue_.emplace(cost_of(k, c, r), k, c, r);
    log_.push_back(std::move(e));
  }

  int dim_;
  std::array<std::vector<std::uint8_t>, kMaxDim + 1> alive_;
  std::array<std::vector<Map>, kMaxDim + 1> cols_;  // cols_[k][a]: entries of d_k column a
  std::array<std::vector<Map>, kMaxDim + 1> rows_;  // rows_[k][b]: entries of d_k row b
  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> queue_;
  std::vector<Elimination<T>> log_;
};

// ker(out) / im(in) for one degree of a small dense complex.
template <class T>
struct DenseDegree {
  std::size_t n = 0, r = 0, r2 = 0;
  Matrix<T> U, U_inv, V2, V2_inv;
  std::vector<T> torsion;

  void compute(const Matrix<T>& in, const Matrix<T>& out) {
    n = in.rows();
    auto s1 = smith_decompose<T>(in);
    r = s1.rank;
    U = std::move(s1.U);
    U_inv = std::move(s1.U_inv);
    for (std::size_t i = 0; i < r; ++i)
      if (!Ring<T>::is_unit(s1.S(i, i))) torsion.push_back(s1.S(i, i));
    const Matrix<T> M = out * U_inv;
    Matrix<T> M2(M.rows(), n - r);
    for (std::size_t i = 0; i < M.rows(); ++i)
      for (std::size_t j = r; j < n; ++j) M2(i, j - r) = M(i, j);
    auto s2 = smith_decompose<T>(M2);
    r2 = s2.rank;
    V2 = std::move(s2.V);
    V2_inv = std::move(s2.V_inv);
  }

  std::size_t betti() const { return n - r - r2; }

  std::vector<T> generator(std::size_t j) const {
    std::vector<T> g(n, Ring<T>::zero());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = r; t < n; ++t)
        g[i] = Ring<T>::add(g[i], Ring<T>::mul(U_inv(i, t), V2(t - r, r2 + j)));
    return g;
  }

  std::vector<T> coordinates(const std::vector<T>& c) const {
    std::vector<T> z(n, Ring<T>::zero());
    for (std::size_t i = r; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) z[i] = Ring<T>::add(z[i], Ring<T>::mul(U(i, j), c[j]));
    std::vector<T> w(n - r, Ring<T>::zero());
    for (std::size_t i = 0; i < n - r; ++i)
      for (std::size_t j = 0; j < n - r; ++j) w[i] = Ring<T>::add(w[i], Ring<T>::mul(V2_inv(i, j), z[r + j]));
    for (std::size_t i = 0; i < r2; ++i)
      if (!Ring<T>::is_zero(w[i])) fail(ErrorCode::NotACycle, "chain is not closed");
    return {w.begin() + static_cast<std::ptrdiff_t>(r2), w.end()};
  }
};

template <class T>
Matrix<T> transpose(const Matrix<T>& A) {
  Matrix<T> B(A.cols(), A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) B(j, i) = A(i, j);
  return B;
}

}  // namespace

struct HomologyEngine::Impl {
  virtual ~Impl() = default;
  int dim = 0;
  std::vector<HomologyResult> hom, coh;
  std::vector<std::size_t> reduced;
  bool big = false;
  HomologyResult empty_result;
  virtual std::vector<std::int64_t> hom_coords(const Chain& c) const = 0;
  virtual std::vector<std::int64_t> coh_coords(int k, std::span<const std::int64_t> phi) const = 0;
};

namespace {

template <class T>
struct EngineImpl final : HomologyEngine::Impl {
  using R = Ring<T>;
  std::array<SparseIntMatrix, kMaxDim> bd;
  std::vector<std::size_t> counts;
  std::vector<Elimination<T>> log;
  std::vector<std::vector<std::int32_t>> surv;
  std::vector<DenseDegree<T>> H, C;

  explicit EngineImpl(const SimplicialComplex& K) {
    dim = std::max(K.dimension(), 0);
    bd = boundary_matrices(K);
    for (int d = 0; d <= dim; ++d) counts.push_back(K.count(d));
    Reducer<T> red(K);
    red.run();
    for (int d = 0; d <= dim; ++d) surv.push_back(red.survivors(d));
    std::vector<Matrix<T>> D(dim + 2);  // D[k]: reduced d_k, k = 1..dim
    for (int k = 1; k <= dim; ++k) D[k] = red.reduced_boundary(k, surv[k - 1], surv[k]);
    log = red.log();
    H.resize(dim + 1);
    C.resize(dim + 1);
    for (int k = 0; k <= dim; ++k) {
      const std::size_t n = surv[k].size();
      Matrix<T> in = k + 1 <= dim ? D[k + 1] : Matrix<T>(n, 0);
      Matrix<T> out = k >= 1 ? D[k] : Matrix<T>(0, n);
      H[k].compute(in, out);
      C[k].compute(transpose(out), transpose(in));
      reduced.push_back(n);
    }
    for (int k = 0; k <= dim; ++k) {
      hom.push_back(make_result(k, H[k], false));
      coh.push_back(make_result(k, C[k], true));
    }
  }

  HomologyResult make_result(int k, const DenseDegree<T>& dd, bool co) const {
    HomologyResult res;
    res.degree = k;
    res.betti = static_cast<int>(dd.betti());
    for (const auto& t : dd.torsion) res.torsion.push_back(to_int64(R::is_negative(t) ? R::neg(t) : t));
    for (std::size_t j = 0; j < dd.betti(); ++j) {
      const auto g = dd.generator(j);
      std::vector<T> full(counts[k], R::zero());
      for (std::size_t i = 0; i < g.size(); ++i) full[surv[k][i]] = g[i];
      if (co) lift_cocycle(k, full);
      else lift_cycle(k, full);
      Chain c(k, counts[k]);
      for (std::size_t i = 0; i < full.size(); ++i) c.coeffs[i] = to_int64(full[i]);
      res.generators.push_back(std::move(c));
    }
    return res;
  }

  // Chain maps of the recorded eliminations.
  void lift_cycle(int k, std::vector<T>& x) const {
    for (auto e = log.rbegin(); e != log.rend(); ++e) {
      if (e->k != k) continue;
      T s = R::zero();
      for (const auto& [y, beta] : e->beta) s = R::add(s, R::mul(beta, x[y]));
      x[e->a] = R::neg(R::mul(e->kappa_inv, s));
    }
  }
  void project_cycle(int k, std::vector<T>& x) const {
    for (const auto& e : log) {
      if (e.k == k) {
        x[e.a] = R::zero();
      } else if (e.k - 1 == k && !R::is_zero(x[e.b])) {
        const T s = R::mul(e.kappa_inv, x[e.b]);
        for (const auto& [r, alpha] : e.alpha) x[r] = R::sub(x[r], R::mul(alpha, s));
        x[e.b] = R::zero();
      }
    }
  }
  void lift_cocycle(int k, std::vector<T>& phi) const {
    for (auto e = log.rbegin(); e != log.rend(); ++e) {
      if (e->k == k) {
        phi[e->a] = R::zero();
      } else if (e->k - 1 == k) {
        T s = R::zero();
        for (const auto& [r, alpha] : e->alpha) s = R::add(s, R::mul(alpha, phi[r]));
        phi[e->b] = R::neg(R::mul(e->kappa_inv, s));
      }
    }
  }
  void project_cocycle(int k, std::vector<T>& phi) const {
    for (const auto& e : log) {
      if (e.k == k) {
        if (!R::is_zero(phi[e.a])) {
          const T s = R::mul(e.kappa_inv, phi[e.a]);
          for (const auto& [y, beta] : e.beta) phi[y] = R::sub(phi[y], R::mul(beta, s));
        }
        phi[e.a] = R::zero();
      } else if (e.k - 1 == k) {
        phi[e.b] = R::zero();
      }
    }
  }

  std::vector<std::int64_t> finish(int k, const DenseDegree<T>& dd, const std::vector<T>& full) const {
    std::vector<T> reduced_vec(surv[k].size());
    for (std::size_t i = 0; i < surv[k].size(); ++i) reduced_vec[i] = full[surv[k][i]];
    const auto w = dd.coordinates(reduced_vec);
    std::vector<std::int64_t> out;
    for (const auto& v : w) out.push_back(to_int64(v));
    return out;
  }

  std::vector<std::int64_t> hom_coords(const Chain& c) const override {
    const int k = c.degree;
    if (k < 0 || k > dim || c.size() != counts[k]) fail(ErrorCode::DegreeError, "chain does not match the complex");
    if (k >= 1) {
      for (auto v : bd[k - 1].apply(c.coeffs))
        if (v != 0) fail(ErrorCode::NotACycle, "chain has nonzero boundary");
    }
    std::vector<T> x(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) x[i] = from_int64<T>(c.coeffs[i]);
    project_cycle(k, x);
    return finish(k, H[k], x);
  }

  std::vector<std::int64_t> coh_coords(int k, std::span<const std::int64_t> phi) const override {
    if (k < 0 || k > dim || phi.size() != counts[k]) fail(ErrorCode::DegreeError, "cochain does not match the complex");
    if (k + 1 <= dim) {
      for (auto v : bd[k].apply_transpose(phi))
        if (v != 0) fail(ErrorCode::NotACycle, "cochain has nonzero coboundary");
    }
    std::vector<T> x(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) x[i] = from_int64<T>(phi[i]);
    project_cocycle(k, x);
    return finish(k, C[k], x);
  }
};

struct ThresholdScope {
  explicit ThresholdScope(std::int64_t t) : saved(Ring<std::int64_t>::threshold) { Ring<std::int64_t>::threshold = t; }
  ~ThresholdScope() { Ring<std::int64_t>::threshold = saved; }
  std::int64_t saved;
};

}  // namespace

HomologyEngine::HomologyEngine(const SimplicialComplex& complex, std::int64_t threshold) {
  {
    ThresholdScope scope(threshold);
    try {
      impl_ = std::make_unique<EngineImpl<std::int64_t>>(complex);
      return;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Overflow) throw;
    }
  }
  impl_ = std::make_unique<EngineImpl<BigInt>>(complex);
  impl_->big = true;
}

HomologyEngine::~HomologyEngine() = default;
HomologyEngine::HomologyEngine(HomologyEngine&&) noexcept = default;
HomologyEngine& HomologyEngine::operator=(HomologyEngine&&) noexcept = default;

int HomologyEngine::dimension() const { return impl_->dim; }

const HomologyResult& HomologyEngine::homology(int k) const {
  if (k < 0 || k > impl_->dim) {
    impl_->empty_result.degree = k;
    return impl_->empty_result;
  }
  return impl_->hom[k];
}

const HomologyResult& HomologyEngine::cohomology(int k) const {
  if (k < 0 || k > impl_->dim) {
    impl_->empty_result.degree = k;
    return impl_->empty_result;
  }
  return impl_->coh[k];
}

std::vector<std::int64_t> HomologyEngine::homology_coordinates(const Chain& cycle) const {
  return impl_->hom_coords(cycle);
}

std::vector<std::int64_t> HomologyEngine::cohomology_coordinates(int k, std::span<const std::int64_t> cocycle) const {
  return impl_->coh_coords(k, cocycle);
}

bool HomologyEngine::used_big_integers() const { return impl_->big; }
std::vector<std::size_t> HomologyEngine::reduced_sizes() const { return impl_->reduced; }

std::vector<int> real_betti_numbers(const SimplicialComplex& complex) {
  Reducer<ModP> red(complex);
  red.run();
  const int dim = red.dimension();
  std::vector<std::vector<std::int32_t>> surv;
  for (int d = 0; d <= dim; ++d) surv.push_back(red.survivors(d));
  std::vector<int> betti;
  for (int k = 0; k <= dim; ++k) {
    const std::size_t n = surv[k].size();
    std::size_t r_in = 0, r_out = 0;
    if (k + 1 <= dim) r_in = smith_decompose<ModP>(red.reduced_boundary(k + 1, surv[k], surv[k + 1])).rank;
    if (k >= 1) r_out = smith_decompose<ModP>(red.reduced_boundary(k, surv[k - 1], surv[k])).rank;
    betti.push_back(static_cast<int>(n - r_in - r_out));
  }
  return betti;
}

namespace {

HomologyResult over_reals(HomologyResult res, const SimplicialComplex& complex, int k) {
  const auto b = real_betti_numbers(complex);
  res.torsion.clear();
  res.betti = k >= 0 && k < static_cast<int>(b.size()) ? b[k] : 0;
  return res;
}

}  // namespace

HomologyResult homology(const SimplicialComplex& complex, int k, Coefficients coefficients) {
  HomologyEngine engine(complex);
  HomologyResult res = engine.homology(k);
  return coefficients == Coefficients::Z ? res : over_reals(std::move(res), complex, k);
}

HomologyResult cohomology(const SimplicialComplex& complex, int k, Coefficients coefficients) {
  HomologyEngine engine(complex);
  HomologyResult res = engine.cohomology(k);
  return coefficients == Coefficients::Z ? res : over_reals(std::move(res), complex, k);
}

std::vector<std::int64_t> generators_pairing(const SimplicialComplex& complex, const Chain& cycle,
                                             const std::vector<Chain>& generators) {
  HomologyEngine engine(complex);
  const auto w = engine.homology_coordinates(cycle);
  const std::size_t b = w.size();
  if (generators.size() != b) fail(ErrorCode::DegreeError, "generator count differs from the Betti number");
  BigMatrix W(b, b);
  for (std::size_t j = 0; j < b; ++j) {
    if (generators[j].degree != cycle.degree) fail(ErrorCode::DegreeError, "generator degree mismatch");
    const auto g = engine.homology_coordinates(generators[j]);
    for (std::size_t i = 0; i < b; ++i) W(i, j) = g[i];
  }
  if (b > 0) {
    const auto det = determinant(W);
    if (det != 1 && det != -1) fail(ErrorCode::DegreeError, "generators do not form a basis of the free part");
  }
  std::vector<BigInt> rhs(w.begin(), w.end());
  const auto x = solve_integer(W, rhs);
  std::vector<std::int64_t> out;
  for (const auto& v : *x) out.push_back(static_cast<std::int64_t>(v));
  return out;
}

}  // namespace emtopo
