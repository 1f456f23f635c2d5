#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace emtopo {

using Point3 = std::array<double, 3>;

inline constexpr int kMaxDim = 3;

/// Integer k-chain in the canonical simplex basis of a complex (dense).
struct Chain {
  int degree = 0;
  std::vector<std::int64_t> coeffs;

  Chain() = default;
  Chain(int deg, std::size_t n) : degree(deg), coeffs(n, 0) {}

  std::size_t size() const { return coeffs.size(); }
  bool is_zero() const;
  Chain& operator+=(const Chain& other);
  Chain& operator-=(const Chain& other);
  Chain& operator*=(std::int64_t s);
  friend Chain operator+(Chain a, const Chain& b) { return a += b; }
  friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
  friend Chain operator*(std::int64_t s, Chain a) { return a *= s; }
  bool operator==(const Chain&) const = default;
};

/// Column-sparse integer matrix; columns hold (row, value) pairs sorted by row.
struct SparseIntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::pair<std::int32_t, std::int64_t>>> columns;

  std::int64_t at(std::size_t r, std::size_t c) const;
  std::vector<std::int64_t> dense() const;  // row-major
  /// y = A x
  std::vector<std::int64_t> apply(std::span<const std::int64_t> x) const;
  std::vector<std::int64_t> apply_transpose(std::span<const std::int64_t> y) const;
  SparseIntMatrix transpose() const;
  std::size_t nonzeros() const;
};

/// Oriented simplicial complex of dimension <= 3 embedded in R^3.
///
/// Simplices of each dimension are stored with increasing vertex indices in
/// lexicographic order; that order is the canonical basis for chains and
/// cochains. Each simplex also carries an orientation sign recording the
/// orientation it was supplied with (+1 when it was only implied as a face).
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  int dimension() const { return dim_; }
  std::size_t count(int d) const;
  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<Point3>& vertices() const { return vertices_; }
  const Point3& vertex(std::size_t i) const { return vertices_[i]; }

  std::span<const std::int32_t> simplex(int d, std::size_t i) const;
  int orientation(int d, std::size_t i) const { return orient_[d][i]; }
  /// Index of the face of simplex (d, i) opposite its j-th vertex; its
  /// boundary coefficient is (-1)^j.
  std::int32_t face(int d, std::size_t i, int j) const { return faces_[d][i * (d + 1) + j]; }

  /// Canonical index of the simplex spanned by `verts` (any order).
  std::optional<std::size_t> find(std::span<const std::int32_t> verts) const;
  std::optional<std::size_t> find_edge(std::int32_t a, std::int32_t b) const;

  std::int64_t euler_characteristic() const;

  /// Chain whose coefficients are the stored orientation signs; for a closed
  /// consistently oriented surface this is its fundamental cycle.
  Chain oriented_chain(int d) const;

  bool operator==(const SimplicialComplex& other) const;

 private:
  friend SimplicialComplex build_complex(std::vector<Point3>, const std::vector<std::vector<std::int32_t>>&);

  std::vector<Point3> vertices_;
  int dim_ = -1;
  std::array<std::vector<std::int32_t>, kMaxDim + 1> simplices_;  // stride d+1
  std::array<std::vector<std::int8_t>, kMaxDim + 1> orient_;
  std::array<std::vector<std::int32_t>, kMaxDim + 1> faces_;      // stride d+1, empty for d=0
};

/// Closes `simplices` under faces and validates the result.
/// Throws InvalidIndex, InvalidCoordinate or DuplicateSimplex.
SimplicialComplex build_complex(std::vector<Point3> vertices,
                                const std::vector<std::vector<std::int32_t>>& simplices);

/// Signed incidence matrices d_1, d_2, d_3 (index k-1 holds d_k: C_k -> C_{k-1}).
/// Matrices above the complex dimension are empty with matching sizes.
std::array<SparseIntMatrix, kMaxDim> boundary_matrices(const SimplicialComplex& complex);

/// Boundary of an integer chain.
Chain boundary(const SimplicialComplex& complex, const Chain& chain);

/// Convenience: a 1-chain following the closed vertex path v0 -> v1 -> ... -> v0.
Chain loop_chain(const SimplicialComplex& complex, std::span<const std::int32_t> path);

}  // namespace emtopo
