#include "kernels/elements.hpp"

#include <omp.h>

namespace emtopo::kernels::openmp {

using namespace detail;

void triangle_flux(const SimplicialComplex& K, const TriangleRule& rule, const VectorFn& F, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(K.count(2));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t f = 0; f < n; ++f) out[f] = triangle_flux_one(K, rule, F, f);
}

void edge_circulation(const SimplicialComplex& K, const LineRule& rule, const VectorFn& F, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(K.count(1));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t e = 0; e < n; ++e) out[e] = edge_circulation_one(K, rule, F, e);
}

void face_angle_sums(const SimplicialComplex& K, std::span<const double> theta, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(K.count(2));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t f = 0; f < n; ++f) out[f] = face_angle_sum_one(K, theta, f);
}

void sample(std::span<const Point3> points, const VectorFn& F, std::span<Point3> out) {
  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = F(points[i]);
}

std::array<double, 4> maxwell_residual(const GridSpec& g, const Vec3Samples& E, const Vec3Samples& B,
                                       const StencilScales& s) {
  const Interior in(g);
  const auto n = static_cast<std::ptrdiff_t>(in.size());
  double m0 = 0, m1 = 0, m2 = 0, m3 = 0;
#pragma omp parallel for schedule(static) reduction(max : m0, m1, m2, m3)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto r = maxwell_node(g, E, B, s, in.node(i));
    m0 = std::max(m0, r[0]);
    m1 = std::max(m1, r[1]);
    m2 = std::max(m2, r[2]);
    m3 = std::max(m3, r[3]);
  }
  return {m0, m1, m2, m3};
}

std::array<double, 2> photon_residual(const GridSpec& g, const Complex3Samples& w, int sign, const StencilScales& s) {
  const Interior in(g);
  const auto n = static_cast<std::ptrdiff_t>(in.size());
  double m0 = 0, m1 = 0;
#pragma omp parallel for schedule(static) reduction(max : m0, m1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto r = photon_node(g, w, sign, s, in.node(i));
    m0 = std::max(m0, r[0]);
    m1 = std::max(m1, r[1]);
  }
  return {m0, m1};
}

void dirac_apply(const GridSpec& g, const Complex4Samples& psi, const Potential4Samples& A, double coupling,
                 const StencilScales& s, Complex4Samples& out) {
  out.assign(g.nodes(), {});
  const Interior in(g);
  const auto n = static_cast<std::ptrdiff_t>(in.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto p = in.node(i);
    out[g.index(p[0], p[1], p[2], p[3])] = dirac_node(g, psi, A, coupling, s, p);
  }
}

double dirac_residual(const GridSpec& g, const Complex4Samples& psi, const Potential4Samples& A, double coupling,
                      double mass, const StencilScales& s) {
  const Interior in(g);
  const auto n = static_cast<std::ptrdiff_t>(in.size());
  double m = 0;
#pragma omp parallel for schedule(static) reduction(max : m)
  for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, dirac_residual_node(g, psi, A, coupling, mass, s, in.node(i)));
  return m;
}

}  // namespace emtopo::kernels::openmp
