#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "emtopo/bundle.hpp"
#include "emtopo/mesh_generators.hpp"
#include "support.hpp"

using namespace emtopo;
using test::throws_code;
constexpr double kPi = std::numbers::pi;

namespace {

std::shared_ptr<const SimplicialComplex> share(SimplicialComplex K) {
  return std::make_shared<const SimplicialComplex>(std::move(K));
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(wrap_angle(a[i] - b[i])));
  return m;
}

std::vector<double> random_gauge(std::size_t n, std::uint64_t seed, double amp) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-amp, amp);
  std::vector<double> g(n);
  for (auto& x : g) x = U(rng);
  return g;
}

}  // namespace

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(3 * kPi + 0.25) == doctest::Approx(-kPi + 0.25));
  CHECK(wrap_angle(-0.5) == doctest::Approx(-0.5));
  for (double x = -20; x < 20; x += 0.37) {
    const double w = wrap_angle(x);
    CHECK(w > -kPi);
    CHECK(w <= kPi);
    const double n = (x - w) / (2 * kPi);
    CHECK(n == doctest::Approx(std::round(n)).epsilon(1e-12));
  }
}

TEST_CASE("charge quantization on the icosphere") {
  auto K = share(generate_mesh(Icosphere{3}));
  const TopologyData topo = TopologyData::compute(*K);
  REQUIRE(topo.h2.size() == 1);
  REQUIRE(topo.betti == std::vector<int>{1, 0, 1});
  for (std::int64_t k : {-2, -1, 0, 1, 3, 7}) {
    const EdgeConnection c = construct_connection(K, topo, {k}, {});
    const BundleClass b = classify(c, topo);
    CHECK(b.chern == std::vector<std::int64_t>{k});
    CHECK(b.flat == (k == 0));
    const FaceCurvature F = curvature(c);
    // Pre-rounding curvature period over the generator.
    double s = 0;
    for (std::size_t f = 0; f < F.wrapped.size(); ++f) s += topo.h2[0].coeffs[f] * F.wrapped[f];
    CHECK(s / (2 * kPi) == doctest::Approx(static_cast<double>(k)).epsilon(1e-9));
    // Lifts reproduce it: raw sums telescope to zero over the closed surface.
    double raw = 0;
    for (std::size_t f = 0; f < F.raw.size(); ++f) raw += topo.h2[0].coeffs[f] * F.raw[f];
    CHECK(std::abs(raw) <= 1e-9);
  }
}

TEST_CASE("tensor and dual add and negate Chern numbers") {
  auto K = share(generate_mesh(Icosphere{2}));
  const TopologyData topo = TopologyData::compute(*K);
  const EdgeConnection a = construct_connection(K, topo, {1}, {});
  const EdgeConnection b = construct_connection(K, topo, {2}, {});
  CHECK(classify(tensor(a, b), topo).chern == std::vector<std::int64_t>{3});
  CHECK(classify(dual(b), topo).chern == std::vector<std::int64_t>{-2});
  CHECK(classify(tensor(a, dual(a)), topo).flat);
  auto other = share(generate_mesh(Icosphere{1}));
  CHECK(throws_code([&] { tensor(a, zero_connection(other)); }, ErrorCode::ComplexMismatch));
}

TEST_CASE("gauge invariance of curvature and holonomy") {
  const Torus spec{8, 6, 1.0, 0.35};
  auto K = share(generate_mesh(spec));
  const TopologyData topo = TopologyData::compute(*K);
  const EdgeConnection c = construct_connection(K, topo, {2}, {0.4, -1.1});
  const EdgeConnection g = gauge_transform(c, random_gauge(K->vertex_count(), 5, 10.0));
  CHECK(max_diff(curvature(c).wrapped, curvature(g).wrapped) <= 1e-12);
  for (const auto& h : topo.h1) CHECK(std::abs(wrap_angle(holonomy(c, h) - holonomy(g, h))) <= 1e-12);
  const EquivalenceResult eq = is_equivalent(c, g, topo);
  CHECK(eq.equivalent);
  const EdgeConnection back = gauge_transform(c, eq.witness);
  CHECK(max_diff(back.theta, g.theta) <= 1e-8);
}

TEST_CASE("classify after construct round-trips on the torus") {
  auto K = share(generate_mesh(Torus{8, 6, 1.0, 0.35}));
  const TopologyData topo = TopologyData::compute(*K);
  REQUIRE(topo.h1.size() == 2);
  REQUIRE(topo.h2.size() == 1);
  const std::vector<double> chi{0.9, -2.5};
  const EdgeConnection flat = construct_connection(K, topo, {0}, chi);
  const BundleClass b = classify(flat, topo);
  CHECK(b.flat);
  REQUIRE(b.characters.has_value());
  for (int i = 0; i < 2; ++i) CHECK(std::abs(wrap_angle((*b.characters)[i] - chi[i])) <= 1e-9);
  for (std::int64_t k : {-3, 1, 4}) {
    const EdgeConnection c = construct_connection(K, topo, {k}, chi);
    const BundleClass bc = classify(c, topo);
    CHECK(bc.chern == std::vector<std::int64_t>{k});
    CHECK(!bc.flat);
    for (int i = 0; i < 2; ++i) CHECK(std::abs(wrap_angle(holonomy(c, topo.h1[i]) - chi[i])) <= 1e-9);
  }
}

TEST_CASE("Aharonov-Bohm characters on the annulus") {
  const Annulus spec{24, 2, 0.5, 1.0};
  auto K = share(generate_mesh(spec));
  const TopologyData topo = TopologyData::compute(*K);
  const EdgeConnection zero = construct_connection(K, topo, {}, {0.0});
  const EdgeConnection half = construct_connection(K, topo, {}, {kPi});
  CHECK(classify(zero, topo).flat);
  CHECK(classify(half, topo).flat);
  const EquivalenceResult eq = is_equivalent(zero, half, topo);
  CHECK(!eq.equivalent);
  CHECK(!eq.reason.empty());
  const Chain inner = loop_chain(*K, annulus_ring(spec, 0));
  const Chain mid = loop_chain(*K, annulus_ring(spec, 1));
  const Chain outer = loop_chain(*K, annulus_ring(spec, 2));
  CHECK(std::abs(wrap_angle(holonomy(half, inner) - holonomy(half, outer))) <= 1e-9);
  CHECK(std::abs(wrap_angle(holonomy(half, mid) - holonomy(half, inner))) <= 1e-9);
  CHECK(std::abs(std::abs(holonomy(half, inner)) - kPi) <= 1e-9);
  // 2pi-periodicity of characters.
  const EdgeConnection full = construct_connection(K, topo, {}, {2 * kPi});
  CHECK(is_equivalent(zero, full, topo).equivalent);
}

TEST_CASE("curvature over every H2 generator is quantized") {
  BallMinusBall spec{8, 1.0, 0.15, {{-0.5, 0, 0}, {0.5, 0, 0}}};
  auto K = share(generate_mesh(spec));
  const TopologyData topo = TopologyData::compute(*K);
  REQUIRE(topo.h2.size() == 2);
  const EdgeConnection c = construct_connection(K, topo, {2, -1}, {});
  const FaceCurvature F = curvature(c);
  for (std::size_t i = 0; i < topo.h2.size(); ++i) {
    double s = 0;
    for (std::size_t f = 0; f < F.wrapped.size(); ++f) s += topo.h2[i].coeffs[f] * F.wrapped[f];
    const double p = s / (2 * kPi);
    CHECK(std::abs(p - std::round(p)) <= 1e-6);
  }
  CHECK(chern_numbers(c, topo.h2) == std::vector<std::int64_t>{2, -1});
}

TEST_CASE("curvature profiles are reproduced") {
  auto K = share(generate_mesh(Icosphere{2}));
  const TopologyData topo = TopologyData::compute(*K);
  // A profile concentrated on the northern faces with total 2pi * 2.
  Cochain F(2, K->count(2));
  const Chain& N = topo.h2[0];
  double weight = 0;
  for (std::size_t f = 0; f < F.size(); ++f) {
    const auto t = K->simplex(2, f);
    const double z = (K->vertex(t[0])[2] + K->vertex(t[1])[2] + K->vertex(t[2])[2]) / 3.0;
    F.values[f] = N.coeffs[f] * (1.5 + z);
    weight += 1.5 + z;
  }
  for (auto& x : F.values) x *= 4 * kPi / weight;
  const EdgeConnection c = construct_connection(K, topo, {2}, {}, F);
  const FaceCurvature got = curvature(c);
  for (std::size_t f = 0; f < F.size(); ++f) CHECK(got.wrapped[f] == doctest::Approx(F.values[f]).epsilon(1e-9));

  Cochain wrong = F;
  for (auto& x : wrong.values) x *= 1.1;
  CHECK(throws_code([&] { construct_connection(K, topo, {2}, {}, wrong); }, ErrorCode::IntegralityViolation));
  CHECK(throws_code([&] { construct_connection(K, topo, {1, 1}, {}); }, ErrorCode::DegreeError));
}

TEST_CASE("branch ambiguity and holonomy errors") {
  auto K = share(build_complex({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}, {{0, 1, 2}}));
  EdgeConnection c = zero_connection(K);
  c.theta[0] = kPi;  // edge 0-1
  CHECK(throws_code([&] { curvature(c); }, ErrorCode::BranchAmbiguity));
  c.theta[0] = 1.0;
  Chain open(1, K->count(1));
  open.coeffs[0] = 1;
  CHECK(throws_code([&] { holonomy(c, open); }, ErrorCode::NotACycle));
}

TEST_CASE("magnetic connection of a wire: flat class, nonflat connection") {
  const auto k = PhysicalConstants::natural();
  const BoxMinusLine spec{8, 1.0, 0.15};
  auto K = share(generate_mesh(spec));
  const TopologyData topo = TopologyData::compute(*K);
  const AnalyticField w = make_field(StraightWire{1.5, {0, 0, 0}, {0, 0, 1}}, k);
  const EdgeConnection c = magnetic_connection(K, w);
  const BundleClass b = classify(c, topo);
  CHECK(topo.h2.empty());
  CHECK(b.chern.empty());
  CHECK(!b.flat);
  // Curvature equals 2pi/e times the magnetic flux form.
  const Cochain flux = discretize_2form(w, *K, 2, FormComponent::Magnetic);
  const FaceCurvature F = curvature(c);
  double worst = 0, scale = 0;
  for (std::size_t f = 0; f < flux.size(); ++f) {
    worst = std::max(worst, std::abs(F.wrapped[f] - 2 * kPi / k.e * flux.values[f]));
    scale = std::max(scale, std::abs(F.wrapped[f]));
  }
  // Up to the error of the three-point rule near the tube.
  CHECK(worst <= 1e-2 * scale);
  CHECK(magnetic_coupling(k) == doctest::Approx(2 * kPi));
}
