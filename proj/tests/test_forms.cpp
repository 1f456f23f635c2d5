#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "emtopo/fields.hpp"
#include "emtopo/forms.hpp"
#include "emtopo/mesh_generators.hpp"
#include "emtopo/vec3.hpp"
#include "support.hpp"

using namespace emtopo;
using namespace emtopo::vec;
using test::throws_code;
constexpr double kPi = std::numbers::pi;

namespace {

Point3 curl_fd(const std::function<Point3(const Point3&)>& a, const Point3& x, double h) {
  auto d = [&](int comp, int axis) {
    Point3 p = x, m = x;
    p[axis] += h;
    m[axis] -= h;
    return (a(p)[comp] - a(m)[comp]) / (2 * h);
  };
  return {d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1)};
}

Point3 grad_fd(const std::function<double(const Point3&)>& f, const Point3& x, double h) {
  Point3 g;
  for (int i = 0; i < 3; ++i) {
    Point3 p = x, m = x;
    p[i] += h;
    m[i] -= h;
    g[i] = (f(p) - f(m)) / (2 * h);
  }
  return g;
}

}  // namespace

TEST_CASE("coboundary squares to zero and satisfies Stokes") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1, 1);
  std::uniform_int_distribution<int> Z(-3, 3);
  for (const auto& K : test::sample_meshes()) {
    Cochain f(0, K.count(0));
    for (auto& x : f.values) x = U(rng);
    const Cochain ddf = coboundary(K, coboundary(K, f));
    for (double x : ddf.values) CHECK(std::abs(x) <= 1e-12);

    Cochain a(1, K.count(1));
    for (auto& x : a.values) x = U(rng);
    Chain N(2, K.count(2));
    for (auto& c : N.coeffs) c = Z(rng);
    if (K.count(2) == 0) continue;
    CHECK(period(coboundary(K, a), N) == doctest::Approx(period(a, boundary(K, N))).epsilon(1e-12));
  }
  const auto K = generate_mesh(Icosphere{1});
  CHECK(throws_code([&] { coboundary(K, Cochain(2, K.count(2))); }, ErrorCode::DegreeError));
  CHECK(throws_code([&] { period(Cochain(2, K.count(2)), Chain(2, 3)); }, ErrorCode::SupportError));
}

TEST_CASE("field formulas against independent evaluations") {
  const auto k = PhysicalConstants::si();
  const AnalyticField c = make_field(Coulomb{2 * k.e, {0.1, 0, 0}}, k);
  const Point3 x{0.6, -0.3, 0.2};
  const Point3 r = sub(x, {0.1, 0, 0});
  const double E = 2 * k.e / (4 * kPi * k.epsilon0 * dot(r, r));
  CHECK(norm(c.electric(x)) == doctest::Approx(E).epsilon(1e-13));
  CHECK(dot(c.electric(x), r) > 0);
  const Point3 g = grad_fd([&](const Point3& p) { return c.scalar_potential(p); }, x, 1e-5);
  for (int i = 0; i < 3; ++i) CHECK(-g[i] == doctest::Approx(c.electric(x)[i]).epsilon(1e-7));

  const AnalyticField w = make_field(StraightWire{1.5, {0, 0, 0}, {0, 0, 1}}, k);
  const double B = k.mu0 * 1.5 / (2 * kPi * std::hypot(x[0], x[1]));
  CHECK(norm(w.magnetic(x)) == doctest::Approx(B).epsilon(1e-13));
  const Point3 cw = curl_fd([&](const Point3& p) { return w.vector_potential(p); }, x, 1e-5);
  for (int i = 0; i < 3; ++i) CHECK(cw[i] == doctest::Approx(w.magnetic(x)[i]).epsilon(1e-6).scale(B));

  const AnalyticField loop = circular_loop(2.0, 0.5, 512, k);
  const double Bc = k.mu0 * 2.0 / (2 * 0.5);
  CHECK(loop.magnetic({0, 0, 0})[2] == doctest::Approx(Bc).epsilon(1e-4));
  const Point3 y{0.2, 0.1, 0.3};
  const Point3 cl = curl_fd([&](const Point3& p) { return loop.vector_potential(p); }, y, 1e-5);
  for (int i = 0; i < 3; ++i)
    CHECK(cl[i] == doctest::Approx(loop.magnetic(y)[i]).epsilon(1e-6).scale(norm(loop.magnetic(y))));

  const AnalyticField pw = parse_field("planewave:E0=2,kx=1,ky=2,kz=0.5,pol=circular", k);
  const Point3 Ep = pw.electric(x, 1e-9), Bp = pw.magnetic(x, 1e-9);
  CHECK(norm(Bp) * k.c == doctest::Approx(norm(Ep)).epsilon(1e-12));
  CHECK(std::abs(dot(Ep, Point3{1, 2, 0.5})) <= 1e-12 * norm(Ep));
  CHECK(pw.angular_frequency() == doctest::Approx(k.c * std::sqrt(5.25)));
  CHECK(!pw.is_static());
  CHECK(c.is_static());
  CHECK(c.distance_to_source(x) == doctest::Approx(norm(r)));

  const auto q = std::get<Coulomb>(parse_field("coulomb:q=2e", k).kind);
  CHECK(q.q == doctest::Approx(2 * k.e));
  CHECK(throws_code([&] { parse_field("monopole:g=1", k); }, ErrorCode::ParseError));
}

TEST_CASE("Gauss: flux of point charges through closed surfaces") {
  const auto k = PhysicalConstants::natural();
  const auto S = generate_mesh(Icosphere{3});
  const Chain N = S.oriented_chain(2);
  const AnalyticField inside = make_field(Coulomb{3.0, {0.1, -0.2, 0.05}}, k);
  const AnalyticField outside = make_field(Coulomb{1.0, {1.5, 0, 0}}, k);
  CHECK(period(discretize_2form(inside, S, 0), N) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(std::abs(period(discretize_2form(outside, S, 0), N)) <= 1e-12);
  CHECK(period(discretize_2form(inside, S, 2), N) == doctest::Approx(3.0).epsilon(1e-3));

  // Error shrinks with refinement for both rules.
  double prev1 = 1e9, prev2 = 1e9;
  for (int L = 2; L <= 4; ++L) {
    const auto M = generate_mesh(Icosphere{L});
    const Chain NM = M.oriented_chain(2);
    const double e1 = std::abs(period(discretize_2form(inside, M, 1), NM) - 3.0);
    const double e2 = std::abs(period(discretize_2form(inside, M, 2), NM) - 3.0);
    CHECK(e1 < prev1);
    CHECK(e2 < prev2);
    prev1 = e1;
    prev2 = e2;
  }

  const AnalyticField at_vertex = make_field(Coulomb{1.0, S.vertex(0)}, k);
  CHECK(throws_code([&] { discretize_2form(at_vertex, S, 0); }, ErrorCode::SingularSource));
}

TEST_CASE("magnetic flux through a flat annulus") {
  const auto k = PhysicalConstants::natural();
  const Annulus a{64, 2, 0.5, 1.0};
  const auto A = generate_mesh(a);
  const AnalyticField u = make_field(UniformField{{0, 0, 0}, {0, 0, 2.0}}, k);
  const Cochain w = discretize_2form(u, A, 1, FormComponent::Magnetic);
  const Chain V = annulus_region(A, a, 0, 2);
  // Polygonal annulus area.
  const double area = 0.5 * 64 * std::sin(2 * kPi / 64) * (1.0 - 0.25);
  CHECK(period(w, V) == doctest::Approx(2.0 * area / (k.mu0 * k.c)).epsilon(1e-12));
}

TEST_CASE("line integrals") {
  const auto K = generate_mesh(Torus{6, 5, 1.0, 0.3});
  const Point3 F0{0.3, -1.2, 0.7};
  const Cochain L = line_integrals(K, [&](const Point3&) { return F0; });
  for (std::size_t e = 0; e < K.count(1); ++e) {
    const auto s = K.simplex(1, e);
    CHECK(L.values[e] == doctest::Approx(dot(F0, sub(K.vertex(s[1]), K.vertex(s[0])))).epsilon(1e-13));
  }
  // Gradient fields have zero circulation around every triangle.
  const Cochain G = line_integrals(K, [](const Point3& x) { return Point3{2 * x[0], 3 * x[2] * x[2], 6 * x[1] * x[2] + 1.0}; }, 2);
  for (double x : coboundary(K, G).values) CHECK(std::abs(x) <= 1e-12);
}

TEST_CASE("Ampere: current through loops around a wire") {
  for (const auto& k : {PhysicalConstants::natural(), PhysicalConstants::si()}) {
    const AnalyticField w = make_field(StraightWire{1.5, {0, 0, 0}, {0, 0, 1}}, k);
    const auto around = polygon_loop(circle_points(256, 0.5, {0.05, 0, 0.3}, {1, 0, 0}, {0, 1, 0}));
    const auto away = polygon_loop(circle_points(256, 0.5, {1.5, 0, 0}, {1, 0, 0}, {0, 1, 0}));
    const auto tilted = polygon_loop(circle_points(256, 0.7, {0, 0, 0}, {0, 1, 0}, normalized({-1, 0, 1})));
    CHECK(ampere_current(w, around.cycle, around.complex) == doctest::Approx(1.5).epsilon(1e-6));
    CHECK(std::abs(ampere_current(w, away.cycle, away.complex)) <= 1e-9);
    // Normal of the tilted loop is (1, 0, 1)/sqrt 2: still links once.
    CHECK(ampere_current(w, tilted.cycle, tilted.complex) == doctest::Approx(1.5).epsilon(1e-6));
  }
  const auto k = PhysicalConstants::natural();
  const AnalyticField w = make_field(StraightWire{1.0, {0, 0, 0}, {0, 0, 1}}, k);
  const auto P = circle_polygon(16, 0.5, {0, 0, 0});
  Chain open = P.cycle;
  open.coeffs[0] = 0;
  CHECK(throws_code([&] { ampere_current(w, open, P.complex); }, ErrorCode::NotACycle));
}

TEST_CASE("Maxwell residuals") {
  const auto k = PhysicalConstants::natural();
  const AnalyticField pw = parse_field("planewave:E0=1,kx=1,ky=2,kz=0.5,pol=circular", k);
  const auto fam = refinement_family({0.1, 0.2, 0.3}, 0.5, 9, 3, 0.5, k.c);
  std::vector<double> h;
  std::array<std::vector<double>, 4> res;
  for (const auto& g : fam) {
    h.push_back(g.space.h);
    const auto r = maxwell_residual(pw, g).norms;
    for (int i = 0; i < 4; ++i) res[i].push_back(r[i]);
  }
  for (int i = 0; i < 4; ++i) CHECK(convergence_order(h, res[i]) == doctest::Approx(2.0).epsilon(0.1));

  const AnalyticField u = make_field(UniformField{{1, 2, 3}, {-1, 0, 2}}, k);
  for (double x : maxwell_residual(u, fam[0]).norms) CHECK(x <= 1e-12);
}

TEST_CASE("refinement family nests and convergence order fits slopes") {
  const auto fam = refinement_family({0, 0, 0}, 1.0, 5, 3, 0.5, 1.0);
  REQUIRE(fam.size() == 3);
  CHECK(fam[0].space.n[0] == 7);
  CHECK(fam[1].space.n[0] == 11);
  CHECK(fam[2].space.n[0] == 19);
  CHECK(fam[1].space.h == doctest::Approx(fam[0].space.h / 2));
  // Interior node i of the coarse grid sits at interior node 2i of the fine one.
  for (int i = 1; i < 6; ++i) {
    const Point3 a = fam[0].point(i, i, 1), b = fam[1].point(2 * i - 1, 2 * i - 1, 1);
    CHECK(a[0] == doctest::Approx(b[0]).epsilon(1e-14));
  }
  CHECK(convergence_order({0.1, 0.05, 0.025}, {3e-2, 7.5e-3, 1.875e-3}) == doctest::Approx(2.0));
  GridSpec bad;
  bad.space.n = {4, 9, 9};
  CHECK(throws_code([&] { bad.validate(); }, ErrorCode::StencilError));
}
