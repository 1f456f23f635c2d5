#pragma once

// Per-element bodies shared by the serial and OpenMP kernels.

#include <algorithm>
#include <cmath>

#include "emtopo/kernels.hpp"
#include "emtopo/vec3.hpp"

namespace emtopo::kernels::detail {

inline double triangle_flux_one(const SimplicialComplex& K, const TriangleRule& rule, const VectorFn& F,
                                std::size_t f) {
  const auto s = K.simplex(2, f);
  const Point3& a = K.vertex(s[0]);
  const Point3& b = K.vertex(s[1]);
  const Point3& c = K.vertex(s[2]);
  const Point3 N = vec::scale(0.5, vec::cross(vec::sub(b, a), vec::sub(c, a)));
  double acc = 0.0;
  for (std::size_t q = 0; q < rule.weights.size(); ++q) {
    const auto& l = rule.bary[q];
    const Point3 x{l[0] * a[0] + l[1] * b[0] + l[2] * c[0], l[0] * a[1] + l[1] * b[1] + l[2] * c[1],
                   l[0] * a[2] + l[1] * b[2] + l[2] * c[2]};
    acc += rule.weights[q] * vec::dot(F(x), N);
  }
  return acc;
}

inline double edge_circulation_one(const SimplicialComplex& K, const LineRule& rule, const VectorFn& F,
                                   std::size_t e) {
  const auto s = K.simplex(1, e);
  const Point3& a = K.vertex(s[0]);
  const Point3 d = vec::sub(K.vertex(s[1]), a);
  double acc = 0.0;
  for (std::size_t q = 0; q < rule.weights.size(); ++q) acc += rule.weights[q] * vec::dot(F(vec::axpy(a, rule.nodes[q], d)), d);
  return acc;
}

inline double face_angle_sum_one(const SimplicialComplex& K, std::span<const double> theta, std::size_t f) {
  // boundary of [v0 v1 v2] = [v1 v2] - [v0 v2] + [v0 v1]
  return theta[K.face(2, f, 0)] - theta[K.face(2, f, 1)] + theta[K.face(2, f, 2)];
}

/// Interior nodes of a grid, flattened.
struct Interior {
  int nt, nx, ny, nz;
  explicit Interior(const GridSpec& g) : nt(g.nt - 2), nx(g.space.n[0] - 2), ny(g.space.n[1] - 2), nz(g.space.n[2] - 2) {}
  std::size_t size() const { return static_cast<std::size_t>(nt) * nx * ny * nz; }
  std::array<int, 4> node(std::size_t idx) const {
    const int k = static_cast<int>(idx % nz);
    idx /= nz;
    const int j = static_cast<int>(idx % ny);
    idx /= ny;
    const int i = static_cast<int>(idx % nx);
    const int it = static_cast<int>(idx / nx);
    return {it + 1, i + 1, j + 1, k + 1};
  }
};

/// Centered differences of node samples; axis 0 is time, 1..3 space.
template <class Samples>
struct Stencil {
  const GridSpec& g;
  const Samples& v;
  std::array<int, 4> p;

  auto at(int axis, int offset, int comp) const {
    auto q = p;
    q[axis] += offset;
    return v[g.index(q[0], q[1], q[2], q[3])][comp];
  }
  auto d(int axis, int comp) const {
    const double step = axis == 0 ? g.dt : g.space.h;
    return (at(axis, 1, comp) - at(axis, -1, comp)) / (2.0 * step);
  }
  auto value(int comp) const { return v[g.index(p[0], p[1], p[2], p[3])][comp]; }
  auto div() const { return d(1, 0) + d(2, 1) + d(3, 2); }
  auto curl(int c) const {
    if (c == 0) return d(2, 2) - d(3, 1);
    if (c == 1) return d(3, 0) - d(1, 2);
    return d(1, 1) - d(2, 0);
  }
};

inline std::array<double, 4> maxwell_node(const GridSpec& g, const Vec3Samples& E, const Vec3Samples& B,
                                          const StencilScales& s, std::array<int, 4> p) {
  Stencil<Vec3Samples> e{g, E, p}, b{g, B, p};
  const double mc = s.mu0 * s.c;
  std::array<double, 4> r{};
  r[0] = std::abs(s.epsilon0 * e.div());
  r[2] = std::abs(b.div() / mc);
  for (int c = 0; c < 3; ++c) {
    r[1] = std::max(r[1], std::abs(b.curl(c) / mc - s.epsilon0 * e.d(0, c) / s.c));
    r[3] = std::max(r[3], std::abs(s.epsilon0 * e.curl(c) + b.d(0, c) / (mc * s.c)));
  }
  return r;
}

inline std::array<double, 2> photon_node(const GridSpec& g, const Complex3Samples& w, int sign,
                                         const StencilScales& s, std::array<int, 4> p) {
  Stencil<Complex3Samples> st{g, w, p};
  const Complex I(0, 1);
  std::array<double, 2> r{};
  for (int c = 0; c < 3; ++c) {
    const Complex d0 = -st.d(0, c) / s.c;
    r[0] = std::max(r[0], std::abs(I * s.hbar * (d0 - I * static_cast<double>(sign) * st.curl(c))));
  }
  r[1] = std::abs(I * s.hbar * st.div());
  return r;
}

inline std::array<Complex, 4> dirac_node(const GridSpec& g, const Complex4Samples& psi, const Potential4Samples& A,
                                         double coupling, const StencilScales& s, std::array<int, 4> p) {
  Stencil<Complex4Samples> st{g, psi, p};
  const Complex I(0, 1);
  const auto& a = A[g.index(p[0], p[1], p[2], p[3])];
  // nab[mu][c] = (d_mu + i coupling A_mu) psi_c, d_0 = -(1/c) d_t
  std::array<std::array<Complex, 4>, 4> nab;
  for (int mu = 0; mu < 4; ++mu)
    for (int c = 0; c < 4; ++c) {
      const Complex d = mu == 0 ? -st.d(0, c) / s.c : st.d(mu, c);
      nab[mu][c] = d + I * coupling * a[mu] * st.value(c);
    }
  const auto& n0 = nab[0];
  const auto& n1 = nab[1];
  const auto& n2 = nab[2];
  const auto& n3 = nab[3];
  std::array<Complex, 4> out{
      n0[0] + n1[3] - I * n2[3] + n3[2],
      n0[1] + n1[2] + I * n2[2] - n3[3],
      -n0[2] - n1[1] + I * n2[1] - n3[0],
      -n0[3] - n1[0] - I * n2[0] + n3[1],
  };
  for (auto& v : out) v *= I * s.hbar;
  return out;
}

inline double dirac_residual_node(const GridSpec& g, const Complex4Samples& psi, const Potential4Samples& A,
                                  double coupling, double mass, const StencilScales& s, std::array<int, 4> p) {
  const auto out = dirac_node(g, psi, A, coupling, s, p);
  const auto& v = psi[g.index(p[0], p[1], p[2], p[3])];
  double m = 0.0;
  for (int c = 0; c < 4; ++c) m = std::max(m, std::abs(out[c] - mass * s.c * v[c]));
  return m;
}

}  // namespace emtopo::kernels::detail
