#include "emtopo/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "emtopo/error.hpp"

namespace emtopo {

bool Chain::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](std::int64_t c) { return c == 0; });
}

Chain& Chain::operator+=(const Chain& other) {
  if (other.size() != size() || other.degree != degree) fail(ErrorCode::SupportError, "chain size mismatch");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += other.coeffs[i];
  return *this;
}

Chain& Chain::operator-=(const Chain& other) {
  if (other.size() != size() || other.degree != degree) fail(ErrorCode::SupportError, "chain size mismatch");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= other.coeffs[i];
  return *this;
}

Chain& Chain::operator*=(std::int64_t s) {
  for (auto& c : coeffs) c *= s;
  return *this;
}

std::int64_t SparseIntMatrix::at(std::size_t r, std::size_t c) const {
  const auto& col = columns[c];
  auto it = std::lower_bound(col.begin(), col.end(), static_cast<std::int32_t>(r),
                             [](const auto& e, std::int32_t row) { return e.first < row; });
  return (it != col.end() && it->first == static_cast<std::int32_t>(r)) ? it->second : 0;
}

std::vector<std::int64_t> SparseIntMatrix::dense() const {
  std::vector<std::int64_t> out(rows * cols, 0);
  for (std::size_t c = 0; c < cols; ++c)
    for (auto [r, v] : columns[c]) out[static_cast<std::size_t>(r) * cols + c] = v;
  return out;
}

std::vector<std::int64_t> SparseIntMatrix::apply(std::span<const std::int64_t> x) const {
  std::vector<std::int64_t> y(rows, 0);
  for (std::size_t c = 0; c < cols; ++c) {
    if (x[c] == 0) continue;
    for (auto [r, v] : columns[c]) y[r] += v * x[c];
  }
  return y;
}

std::vector<std::int64_t> SparseIntMatrix::apply_transpose(std::span<const std::int64_t> y) const {
  std::vector<std::int64_t> x(cols, 0);
  for (std::size_t c = 0; c < cols; ++c) {
    std::int64_t acc = 0;
    for (auto [r, v] : columns[c]) acc += v * y[r];
    x[c] = acc;
  }
  return x;
}

SparseIntMatrix SparseIntMatrix::transpose() const {
  SparseIntMatrix t;
  t.rows = cols;
  t.cols = rows;
  t.columns.resize(rows);
  for (std::size_t c = 0; c < cols; ++c)
    for (auto [r, v] : columns[c]) t.columns[r].emplace_back(static_cast<std::int32_t>(c), v);
  return t;
}

std::size_t SparseIntMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns) n += c.size();
  return n;
}

std::size_t SimplicialComplex::count(int d) const {
  if (d < 0 || d > kMaxDim) return 0;
  if (d == 0) return vertices_.size();
  return simplices_[d].size() / static_cast<std::size_t>(d + 1);
}

std::span<const std::int32_t> SimplicialComplex::simplex(int d, std::size_t i) const {
  const std::size_t stride = static_cast<std::size_t>(d + 1);
  return {simplices_[d].data() + i * stride, stride};
}

std::optional<std::size_t> SimplicialComplex::find(std::span<const std::int32_t> verts) const {
  const int d = static_cast<int>(verts.size()) - 1;
  if (d < 0 || d > dim_) return std::nullopt;
  std::array<std::int32_t, 4> key{};
  std::copy(verts.begin(), verts.end(), key.begin());
  std::sort(key.begin(), key.begin() + d + 1);
  const std::size_t stride = static_cast<std::size_t>(d + 1);
  std::size_t lo = 0, hi = count(d);
  const auto& data = simplices_[d];
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const auto* s = data.data() + mid * stride;
    if (std::lexicographical_compare(s, s + stride, key.begin(), key.begin() + stride))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < count(d) && std::equal(key.begin(), key.begin() + stride, data.data() + lo * stride)) return lo;
  return std::nullopt;
}

std::optional<std::size_t> SimplicialComplex::find_edge(std::int32_t a, std::int32_t b) const {
  const std::array<std::int32_t, 2> e{a, b};
  return find(e);
}

std::int64_t SimplicialComplex::euler_characteristic() const {
  std::int64_t chi = 0;
  for (int d = 0; d <= dim_; ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(count(d));
  return chi;
}

Chain SimplicialComplex::oriented_chain(int d) const {
  Chain c(d, count(d));
  for (std::size_t i = 0; i < c.size(); ++i) c.coeffs[i] = orient_[d][i];
  return c;
}

bool SimplicialComplex::operator==(const SimplicialComplex& other) const {
  return dim_ == other.dim_ && vertices_ == other.vertices_ && simplices_ == other.simplices_ &&
         orient_ == other.orient_;
}

namespace {

int permutation_sign(std::vector<std::int32_t> v) {
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[j] < v[i]) sign = -sign;
  return sign;
}

struct Keyed {
  std::array<std::int32_t, 4> verts;
  int sign;
  bool given;
};

}  // namespace

SimplicialComplex build_complex(std::vector<Point3> vertices,
                                const std::vector<std::vector<std::int32_t>>& simplices) {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (double x : vertices[i])
      if (!std::isfinite(x)) fail(ErrorCode::InvalidCoordinate, "vertex " + std::to_string(i) + " is not finite");

  const auto nv = static_cast<std::int32_t>(vertices.size());
  std::array<std::vector<Keyed>, kMaxDim + 1> by_dim;

  for (const auto& s : simplices) {
    if (s.empty() || s.size() > 4) fail(ErrorCode::InvalidIndex, "simplex must have 1 to 4 vertices");
    for (auto v : s)
      if (v < 0 || v >= nv) fail(ErrorCode::InvalidIndex, "vertex index " + std::to_string(v) + " out of range");
    std::vector<std::int32_t> sorted(s);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail(ErrorCode::InvalidIndex, "simplex repeats a vertex");
    const int d = static_cast<int>(s.size()) - 1;
    Keyed k{{-1, -1, -1, -1}, permutation_sign(s), true};
    std::copy(sorted.begin(), sorted.end(), k.verts.begin());
    by_dim[d].push_back(k);
  }

  auto less = [](const Keyed& a, const Keyed& b) { return a.verts < b.verts; };
  auto same = [](const Keyed& a, const Keyed& b) { return a.verts == b.verts; };
  for (auto& list : by_dim) {
    std::sort(list.begin(), list.end(), less);
    if (std::adjacent_find(list.begin(), list.end(), same) != list.end())
      fail(ErrorCode::DuplicateSimplex, "a simplex is listed twice");
  }

  // Close under faces, top dimension first.
  for (int d = kMaxDim; d >= 1; --d) {
    std::vector<Keyed> implied;
    for (const auto& k : by_dim[d]) {
      for (int j = 0; j <= d; ++j) {
        Keyed f{{-1, -1, -1, -1}, 1, false};
        int w = 0;
        for (int i = 0; i <= d; ++i)
          if (i != j) f.verts[w++] = k.verts[i];
        implied.push_back(f);
      }
    }
    auto& list = by_dim[d - 1];
    list.insert(list.end(), implied.begin(), implied.end());
    // Given entries win over implied ones with the same vertex set.
    std::stable_sort(list.begin(), list.end(), [](const Keyed& a, const Keyed& b) {
      if (a.verts != b.verts) return a.verts < b.verts;
      return a.given && !b.given;
    });
    list.erase(std::unique(list.begin(), list.end(), same), list.end());
  }

  SimplicialComplex K;
  K.vertices_ = std::move(vertices);
  K.dim_ = -1;
  for (int d = 0; d <= kMaxDim; ++d)
    if (!by_dim[d].empty()) K.dim_ = d;
  if (K.dim_ < 0 && !K.vertices_.empty()) K.dim_ = 0;

  // Every vertex is a 0-simplex, listed or not.
  K.orient_[0].assign(K.vertices_.size(), 1);
  for (const auto& k : by_dim[0]) K.orient_[0][k.verts[0]] = static_cast<std::int8_t>(k.sign);
  for (int d = 1; d <= kMaxDim; ++d) {
    for (const auto& k : by_dim[d]) {
      K.simplices_[d].insert(K.simplices_[d].end(), k.verts.begin(), k.verts.begin() + d + 1);
      K.orient_[d].push_back(static_cast<std::int8_t>(k.sign));
    }
  }
  for (std::int32_t v = 0; v < nv; ++v) K.simplices_[0].push_back(v);

  for (int d = 1; d <= kMaxDim; ++d) {
    const std::size_t n = K.count(d);
    K.faces_[d].resize(n * static_cast<std::size_t>(d + 1));
    std::array<std::int32_t, 3> face{};
    for (std::size_t i = 0; i < n; ++i) {
      auto s = K.simplex(d, i);
      for (int j = 0; j <= d; ++j) {
        int w = 0;
        for (int t = 0; t <= d; ++t)
          if (t != j) face[w++] = s[t];
        if (d == 1) {
          K.faces_[d][i * 2 + j] = face[0];
        } else {
          auto idx = K.find(std::span<const std::int32_t>(face.data(), static_cast<std::size_t>(d)));
          K.faces_[d][i * static_cast<std::size_t>(d + 1) + j] = static_cast<std::int32_t>(*idx);
        }
      }
    }
  }
  return K;
}

std::array<SparseIntMatrix, kMaxDim> boundary_matrices(const SimplicialComplex& K) {
  std::array<SparseIntMatrix, kMaxDim> out;
  for (int k = 1; k <= kMaxDim; ++k) {
    auto& m = out[k - 1];
    m.rows = K.count(k - 1);
    m.cols = K.count(k);
    m.columns.resize(m.cols);
    for (std::size_t i = 0; i < m.cols; ++i) {
      auto& col = m.columns[i];
      for (int j = 0; j <= k; ++j) col.emplace_back(K.face(k, i, j), (j % 2 == 0) ? 1 : -1);
      std::sort(col.begin(), col.end());
    }
  }
  return out;
}

Chain boundary(const SimplicialComplex& K, const Chain& chain) {
  const int k = chain.degree;
  if (chain.size() != K.count(k)) fail(ErrorCode::SupportError, "chain does not match the complex");
  if (k == 0) return Chain(-1, 0);
  Chain out(k - 1, K.count(k - 1));
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto c = chain.coeffs[i];
    if (c == 0) continue;
    for (int j = 0; j <= k; ++j) out.coeffs[K.face(k, i, j)] += (j % 2 == 0 ? c : -c);
  }
  return out;
}

Chain loop_chain(const SimplicialComplex& K, std::span<const std::int32_t> path) {
  Chain c(1, K.count(1));
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto a = path[i];
    const auto b = path[(i + 1) % path.size()];
    auto e = K.find_edge(a, b);
    if (!e) fail(ErrorCode::SupportError, "loop uses an edge not in the complex");
    c.coeffs[*e] += (a < b) ? 1 : -1;
  }
  return c;
}

}  // namespace emtopo
