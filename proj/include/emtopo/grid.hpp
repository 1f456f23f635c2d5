#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "emtopo/mesh.hpp"

namespace emtopo {

using Complex = std::complex<double>;

struct SpatialGrid {
  Point3 origin{0, 0, 0};
  double h = 0.1;                 // meters
  std::array<int, 3> n{9, 9, 9};  // nodes per axis
};

/// Uniform space-time lattice. Node (it, i, j, k) sits at time t0 + it dt and
/// position origin + h (i, j, k). Linear index ((it nx + i) ny + j) nz + k.
struct GridSpec {
  double t0 = 0.0;
  double dt = 0.1;  // seconds
  int nt = 5;
  SpatialGrid space;

  std::size_t spatial_nodes() const {
    return static_cast<std::size_t>(space.n[0]) * space.n[1] * space.n[2];
  }
  std::size_t nodes() const { return static_cast<std::size_t>(nt) * spatial_nodes(); }
  std::size_t index(int it, int i, int j, int k) const {
    return ((static_cast<std::size_t>(it) * space.n[0] + i) * space.n[1] + j) * space.n[2] + k;
  }
  Point3 point(int i, int j, int k) const {
    return {space.origin[0] + space.h * i, space.origin[1] + space.h * j, space.origin[2] + space.h * k};
  }
  double time(int it) const { return t0 + dt * it; }
  /// Throws StencilError unless spacings are positive and every count >= 5.
  void validate() const;
};

/// Grid with n nodes per axis covering the cube [center - half, center + half]^3
/// and `nt` time nodes spaced dt around t_center.
GridSpec cube_grid(const Point3& center, double half_width, int n, double dt, int nt = 5, double t_center = 0.0);

using Vec3Samples = std::vector<std::array<double, 3>>;
using Complex3Samples = std::vector<std::array<Complex, 3>>;
using Complex4Samples = std::vector<std::array<Complex, 4>>;
using Potential4Samples = std::vector<std::array<double, 4>>;

}  // namespace emtopo
