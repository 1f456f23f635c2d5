#include <atomic>
#include <boost/math/quadrature/gauss.hpp>
#include <omp.h>

#include "emtopo/error.hpp"
#include "emtopo/kernels.hpp"

namespace emtopo {

namespace {
std::atomic<Execution> g_execution{Execution::Parallel};

template <int N>
LineRule boost_gauss() {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  LineRule r;
  // boost stores the nonnegative half; map [-1, 1] to [0, 1]
  for (std::size_t i = x.size(); i-- > 0;) {
    if (x[i] == 0.0) continue;
    r.nodes.push_back(0.5 * (1.0 - x[i]));
    r.weights.push_back(0.5 * w[i]);
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    r.nodes.push_back(0.5 * (1.0 + x[i]));
    r.weights.push_back(0.5 * w[i]);
  }
  return r;
}
}  // namespace

Execution default_execution() { return g_execution.load(); }
void set_default_execution(Execution ex) { g_execution.store(ex); }
int available_threads() { return omp_get_max_threads(); }

TriangleRule centroid_rule() { return {{{1.0 / 3, 1.0 / 3, 1.0 / 3}}, {1.0}}; }

TriangleRule three_point_rule() {
  const double a = 2.0 / 3, b = 1.0 / 6;
  return {{{a, b, b}, {b, a, b}, {b, b, a}}, {1.0 / 3, 1.0 / 3, 1.0 / 3}};
}

TriangleRule triangle_rule(int order) {
  if (order == 1) return centroid_rule();
  if (order == 2) return three_point_rule();
  fail(ErrorCode::DegreeError, "triangle quadrature order must be 1 or 2");
}

LineRule gauss_legendre(int points) {
  switch (points) {
    case 1: return boost_gauss<1>();
    case 2: return boost_gauss<2>();
    case 3: return boost_gauss<3>();
    case 4: return boost_gauss<4>();
    case 5: return boost_gauss<5>();
    case 6: return boost_gauss<6>();
    case 7: return boost_gauss<7>();
    case 8: return boost_gauss<8>();
    default: fail(ErrorCode::DegreeError, "Gauss-Legendre rules are available for 1..8 points");
  }
}

void GridSpec::validate() const {
  if (!(dt > 0) || !(space.h > 0)) fail(ErrorCode::StencilError, "grid spacings must be positive");
  if (nt < 5 || space.n[0] < 5 || space.n[1] < 5 || space.n[2] < 5)
    fail(ErrorCode::StencilError, "every grid axis needs at least 5 nodes");
}

GridSpec cube_grid(const Point3& center, double half_width, int n, double dt, int nt, double t_center) {
  GridSpec g;
  g.nt = nt;
  g.dt = dt;
  g.t0 = t_center - dt * (nt - 1) / 2.0;
  g.space.n = {n, n, n};
  g.space.h = n > 1 ? 2.0 * half_width / (n - 1) : 0.0;
  g.space.origin = {center[0] - half_width, center[1] - half_width, center[2] - half_width};
  return g;
}

namespace kernels {

#define EMTOPO_DISPATCH(call) \
  ((ex) == Execution::Parallel ? openmp::call : serial::call)

void triangle_flux(const SimplicialComplex& K, const TriangleRule& rule, const VectorFn& F, std::span<double> out,
                   Execution ex) {
  EMTOPO_DISPATCH(triangle_flux(K, rule, F, out));
}
void edge_circulation(const SimplicialComplex& K, const LineRule& rule, const VectorFn& F, std::span<double> out,
                      Execution ex) {
  EMTOPO_DISPATCH(edge_circulation(K, rule, F, out));
}
void face_angle_sums(const SimplicialComplex& K, std::span<const double> theta, std::span<double> out, Execution ex) {
  EMTOPO_DISPATCH(face_angle_sums(K, theta, out));
}
void sample(std::span<const Point3> points, const VectorFn& F, std::span<Point3> out, Execution ex) {
  EMTOPO_DISPATCH(sample(points, F, out));
}
std::array<double, 4> maxwell_residual(const GridSpec& g, const Vec3Samples& E, const Vec3Samples& B,
                                       const StencilScales& s, Execution ex) {
  return EMTOPO_DISPATCH(maxwell_residual(g, E, B, s));
}
std::array<double, 2> photon_residual(const GridSpec& g, const Complex3Samples& w, int sign, const StencilScales& s,
                                      Execution ex) {
  return EMTOPO_DISPATCH(photon_residual(g, w, sign, s));
}
void dirac_apply(const GridSpec& g, const Complex4Samples& psi, const Potential4Samples& A, double coupling,
                 const StencilScales& s, Complex4Samples& out, Execution ex) {
  EMTOPO_DISPATCH(dirac_apply(g, psi, A, coupling, s, out));
}
double dirac_residual(const GridSpec& g, const Complex4Samples& psi, const Potential4Samples& A, double coupling,
                      double mass, const StencilScales& s, Execution ex) {
  return EMTOPO_DISPATCH(dirac_residual(g, psi, A, coupling, mass, s));
}

#undef EMTOPO_DISPATCH

}  // namespace kernels
}  // namespace emtopo
