#include "emtopo/forms.hpp"

#include <cmath>
#include <numbers>

#include "emtopo/error.hpp"
#include "emtopo/vec3.hpp"

namespace emtopo {

using namespace vec;

Cochain coboundary(const SimplicialComplex& K, const Cochain& c) {
  const int k = c.degree;
  if (k < 0 || k >= K.dimension()) fail(ErrorCode::DegreeError, "coboundary needs 0 <= degree < dim");
  if (c.size() != K.count(k)) fail(ErrorCode::DegreeError, "cochain length differs from the simplex count");
  Cochain out(k + 1, K.count(k + 1));
  for (std::size_t s = 0; s < out.size(); ++s) {
    double acc = 0.0;
    for (int j = 0; j <= k + 1; ++j) {
      const double v = c.values[K.face(k + 1, s, j)];
      acc += (j % 2 == 0) ? v : -v;
    }
    out.values[s] = acc;
  }
  return out;
}

namespace {

double point_segment_distance(const Point3& a, const Point3& b, const Point3& x) {
  const Point3 ab = sub(b, a);
  const double s = std::clamp(dot(sub(x, a), ab) / dot(ab, ab), 0.0, 1.0);
  return norm(sub(x, axpy(a, s, ab)));
}

double point_triangle_distance(const Point3& a, const Point3& b, const Point3& c, const Point3& x) {
  const Point3 n = cross(sub(b, a), sub(c, a));
  const double nn = dot(n, n);
  const Point3 p = axpy(x, -dot(sub(x, a), n) / nn, n);
  // barycentric test of the projection
  const double wa = dot(cross(sub(b, p), sub(c, p)), n);
  const double wb = dot(cross(sub(c, p), sub(a, p)), n);
  const double wc = dot(cross(sub(a, p), sub(b, p)), n);
  if (wa >= 0 && wb >= 0 && wc >= 0) return std::abs(dot(sub(x, a), n)) / std::sqrt(nn);
  return std::min({point_segment_distance(a, b, x), point_segment_distance(b, c, x), point_segment_distance(c, a, x)});
}

// Signed solid angle of triangle (a, b, c) seen from x; positive when the
// normal (b - a) x (c - a) points away from x.
double solid_angle(const Point3& a, const Point3& b, const Point3& c, const Point3& x) {
  const Point3 r1 = sub(a, x), r2 = sub(b, x), r3 = sub(c, x);
  const double n1 = norm(r1), n2 = norm(r2), n3 = norm(r3);
  const double num = dot(r1, cross(r2, r3));
  const double den = n1 * n2 * n3 + dot(r1, r2) * n3 + dot(r1, r3) * n2 + dot(r2, r3) * n1;
  return 2.0 * std::atan2(num, den);
}

std::vector<Coulomb> point_charges(const AnalyticField& f) {
  if (auto c = std::get_if<Coulomb>(&f.kind)) return {*c};
  if (auto p = std::get_if<PointCharges>(&f.kind)) return p->charges;
  return {};
}

VectorFn density(const AnalyticField& field, FormComponent component, double t) {
  const auto& k = field.constants;
  if (component == FormComponent::Charge)
    return [&field, t, s = k.epsilon0](const Point3& x) { return scale(s, field.electric(x, t)); };
  return [&field, t, s = 1.0 / (k.mu0 * k.c)](const Point3& x) { return scale(s, field.magnetic(x, t)); };
}

Cochain exact_2form(const AnalyticField& field, const SimplicialComplex& K, FormComponent component, double t) {
  Cochain out(2, K.count(2));
  const auto charges = point_charges(field);
  const bool uniform = std::holds_alternative<UniformField>(field.kind);
  if (uniform) {
    // constant integrand: the centroid rule is exact
    kernels::triangle_flux(K, centroid_rule(), density(field, component, t), out.values);
    return out;
  }
  if (charges.empty()) fail(ErrorCode::DegreeError, "no exact rule for " + field.describe());
  if (component == FormComponent::Magnetic) return out;  // static charges carry no magnetic flux
  for (std::size_t f = 0; f < out.size(); ++f) {
    const auto s = K.simplex(2, f);
    const Point3 &a = K.vertex(s[0]), &b = K.vertex(s[1]), &c = K.vertex(s[2]);
    double v = 0.0;
    for (const auto& q : charges) {
      if (point_triangle_distance(a, b, c, q.center) < kSingularDistance)
        fail(ErrorCode::SingularSource, "triangle touches a point charge");
      v += q.q * solid_angle(a, b, c, q.center) / (4 * std::numbers::pi);
    }
    out.values[f] = v;
  }
  return out;
}

void guard_nodes(const AnalyticField& field, const std::vector<Point3>& nodes) {
  for (const auto& x : nodes)
    if (field.distance_to_source(x) < kSingularDistance)
      fail(ErrorCode::SingularSource, "quadrature node within 1e-9 m of the field's source");
}

}  // namespace

Cochain discretize_2form(const AnalyticField& field, const SimplicialComplex& K, int quad_order,
                         FormComponent component, double t, Execution ex) {
  if (quad_order == 0) return exact_2form(field, K, component, t);
  const TriangleRule rule = triangle_rule(quad_order);
  std::vector<Point3> nodes;
  nodes.reserve(K.count(2) * rule.weights.size());
  for (std::size_t f = 0; f < K.count(2); ++f) {
    const auto s = K.simplex(2, f);
    for (const auto& l : rule.bary) {
      Point3 x{0, 0, 0};
      for (int j = 0; j < 3; ++j) x = axpy(x, l[j], K.vertex(s[j]));
      nodes.push_back(x);
    }
  }
  guard_nodes(field, nodes);
  Cochain out(2, K.count(2));
  kernels::triangle_flux(K, rule, density(field, component, t), out.values, ex);
  return out;
}

double period(const Cochain& omega, const Chain& N) {
  if (omega.degree != N.degree) fail(ErrorCode::SupportError, "chain and cochain degrees differ");
  if (omega.size() != N.size()) fail(ErrorCode::SupportError, "chain is not supported on the cochain's complex");
  double acc = 0.0;
  for (std::size_t i = 0; i < N.size(); ++i)
    if (N.coeffs[i] != 0) acc += static_cast<double>(N.coeffs[i]) * omega.values[i];
  return acc;
}

Cochain line_integrals(const SimplicialComplex& K, const VectorFn& F, int gauss_points, Execution ex) {
  Cochain out(1, K.count(1));
  kernels::edge_circulation(K, gauss_legendre(gauss_points), F, out.values, ex);
  return out;
}

double ampere_current(const AnalyticField& field, const Chain& loop, const SimplicialComplex& K, int gauss_points,
                      double t, Execution ex) {
  if (loop.degree != 1 || loop.size() != K.count(1)) fail(ErrorCode::SupportError, "loop is not a 1-chain of K");
  if (!boundary(K, loop).is_zero()) fail(ErrorCode::NotACycle, "amperian loop is not closed");
  const LineRule rule = gauss_legendre(gauss_points);
  // Restrict the work to the loop's support.
  std::vector<std::int32_t> support;
  std::vector<Point3> nodes;
  for (std::size_t e = 0; e < loop.size(); ++e) {
    if (loop.coeffs[e] == 0) continue;
    support.push_back(static_cast<std::int32_t>(e));
    const auto s = K.simplex(1, e);
    const Point3 d = sub(K.vertex(s[1]), K.vertex(s[0]));
    for (double u : rule.nodes) nodes.push_back(axpy(K.vertex(s[0]), u, d));
  }
  guard_nodes(field, nodes);
  const double inv_mu0 = 1.0 / field.constants.mu0;
  const VectorFn H = [&field, t, inv_mu0](const Point3& x) { return scale(inv_mu0, field.magnetic(x, t)); };
  std::vector<Point3> values(nodes.size());
  kernels::sample(nodes, H, values, ex);
  double acc = 0.0;
  std::size_t q = 0;
  for (auto e : support) {
    const auto s = K.simplex(1, e);
    const Point3 d = sub(K.vertex(s[1]), K.vertex(s[0]));
    double edge = 0.0;
    for (double w : rule.weights) edge += w * dot(values[q++], d);
    acc += static_cast<double>(loop.coeffs[e]) * edge;
  }
  return acc;
}

void sample_fields(const AnalyticField& field, const GridSpec& grid, Vec3Samples& E, Vec3Samples& B, Execution ex) {
  grid.validate();
  std::vector<Point3> pts;
  pts.reserve(grid.spatial_nodes());
  for (int i = 0; i < grid.space.n[0]; ++i)
    for (int j = 0; j < grid.space.n[1]; ++j)
      for (int k = 0; k < grid.space.n[2]; ++k) pts.push_back(grid.point(i, j, k));
  for (const auto& x : pts)
    if (field.distance_to_source(x) < kSingularDistance) fail(ErrorCode::SingularSource, "grid node on the source");
  E.assign(grid.nodes(), {});
  B.assign(grid.nodes(), {});
  std::vector<Point3> buf(pts.size());
  const std::size_t ns = pts.size();
  for (int it = 0; it < grid.nt; ++it) {
    const double t = grid.time(it);
    kernels::sample(pts, [&field, t](const Point3& x) { return field.electric(x, t); }, buf, ex);
    std::copy(buf.begin(), buf.end(), E.begin() + static_cast<std::ptrdiff_t>(it * ns));
    kernels::sample(pts, [&field, t](const Point3& x) { return field.magnetic(x, t); }, buf, ex);
    std::copy(buf.begin(), buf.end(), B.begin() + static_cast<std::ptrdiff_t>(it * ns));
  }
}

MaxwellResidual maxwell_residual(const AnalyticField& field, const GridSpec& grid, Execution ex) {
  Vec3Samples E, B;
  sample_fields(field, grid, E, B, ex);
  const auto& k = field.constants;
  const StencilScales s{k.c, k.hbar, k.epsilon0, k.mu0};
  return {kernels::maxwell_residual(grid, E, B, s, ex)};
}

double convergence_order(const std::vector<double>& h, const std::vector<double>& residual) {
  if (h.size() != residual.size() || h.size() < 2) fail(ErrorCode::DegreeError, "need at least two grid levels");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]), y = std::log(residual[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<GridSpec> refinement_family(const Point3& center, double half_width, int coarse_nodes, int levels,
                                        double courant, double c, double t_center) {
  std::vector<GridSpec> out;
  int n = coarse_nodes;
  for (int l = 0; l < levels; ++l) {
    const double h = 2.0 * half_width / (n - 1);
    // one ghost layer so the interior nodes of every level cover the same cube
    out.push_back(cube_grid(center, half_width + h, n + 2, courant * h / c, 5, t_center));
    n = 2 * n - 1;
  }
  return out;
}

}  // namespace emtopo
