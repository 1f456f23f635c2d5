#pragma once

#include <functional>
#include <vector>

#include "emtopo/error.hpp"
#include "emtopo/mesh.hpp"
#include "emtopo/mesh_generators.hpp"
#include "emtopo/snf.hpp"

namespace emtopo::test {

inline bool throws_code(const std::function<void()>& f, ErrorCode code) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

inline IntMatrix to_dense(const SparseIntMatrix& A) {
  IntMatrix M(A.rows, A.cols);
  for (std::size_t c = 0; c < A.cols; ++c)
    for (auto [r, v] : A.columns[c]) M(r, c) = v;
  return M;
}

// One small instance of every mesh kind.
inline std::vector<SimplicialComplex> sample_meshes() {
  return {
      generate_mesh(Icosphere{1}),
      generate_mesh(SphericalShell{0, 1, 0.5, 1.0}),
      generate_mesh(Annulus{8, 2, 0.5, 1.0}),
      generate_mesh(Torus{5, 4, 1.0, 0.3}),
      generate_mesh(BallMinusBall{4, 1.0, 0.15, {{0, 0, 0}}}),
      generate_mesh(BoxMinusLine{4, 1.0, 0.15}),
      generate_mesh(BoxMinusCircle{6, 1.0, 0.5, 0.2}),
  };
}

// Real projective plane: the 6-vertex minimal triangulation.
inline SimplicialComplex projective_plane() {
  std::vector<Point3> v;
  for (int i = 0; i < 6; ++i) v.push_back({static_cast<double>(i), static_cast<double>(i * i), 0.0});
  return build_complex(v, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
                           {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}});
}

}  // namespace emtopo::test
