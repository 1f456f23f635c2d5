#include <doctest.h>

#include <cmath>
#include <limits>

#include "emtopo/error.hpp"
#include "emtopo/mesh.hpp"
#include "emtopo/mesh_generators.hpp"
#include "support.hpp"

using namespace emtopo;
using emtopo::test::throws_code;

TEST_CASE("single tetrahedron is closed under faces") {
  const auto K = build_complex({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{1, 0, 3, 2}});
  CHECK(K.dimension() == 3);
  CHECK(K.count(0) == 4);
  CHECK(K.count(1) == 6);
  CHECK(K.count(2) == 4);
  CHECK(K.count(3) == 1);
  CHECK(K.euler_characteristic() == 1);
  // Canonical storage is sorted; 1,0,3,2 is even, 1,0,2,3 odd.
  const auto t = K.simplex(3, 0);
  CHECK(std::vector<std::int32_t>(t.begin(), t.end()) == std::vector<std::int32_t>{0, 1, 2, 3});
  CHECK(K.orientation(3, 0) == 1);
  const auto odd = build_complex(K.vertices(), {{1, 0, 2, 3}});
  CHECK(odd.orientation(3, 0) == -1);
}

TEST_CASE("canonical order is lexicographic and find ignores vertex order") {
  const auto K = generate_mesh(Torus{5, 4, 1.0, 0.3});
  for (int d = 1; d <= 2; ++d) {
    for (std::size_t i = 1; i < K.count(d); ++i) {
      const auto a = K.simplex(d, i - 1), b = K.simplex(d, i);
      CHECK(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
    }
  }
  for (std::size_t i = 0; i < K.count(2); ++i) {
    const auto s = K.simplex(2, i);
    const std::vector<std::int32_t> rev{s[2], s[0], s[1]};
    REQUIRE(K.find(rev).has_value());
    CHECK(*K.find(rev) == i);
  }
  CHECK(K.find_edge(K.simplex(1, 3)[1], K.simplex(1, 3)[0]) == std::optional<std::size_t>(3));
}

TEST_CASE("construction errors") {
  const std::vector<Point3> pts{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  CHECK(throws_code([&] { build_complex(pts, {{0, 1, 5}}); }, ErrorCode::InvalidIndex));
  CHECK(throws_code([&] { build_complex(pts, {{0, 1, 1}}); }, ErrorCode::InvalidIndex));
  CHECK(throws_code([&] { build_complex(pts, {{0, 1, 2}, {2, 0, 1}}); }, ErrorCode::DuplicateSimplex));
  CHECK(throws_code([&] { build_complex({{0, 0, 0}, {std::nan(""), 0, 0}}, {{0, 1}}); },
                    ErrorCode::InvalidCoordinate));
  CHECK(throws_code([&] { generate_mesh(Icosphere{-1}); }, ErrorCode::DegenerateMesh));
  CHECK(throws_code([&] { generate_mesh(Torus{8, 8, 0.3, 1.0}); }, ErrorCode::DegenerateMesh));
  CHECK(throws_code([&] { generate_mesh(Annulus{2, 1}); }, ErrorCode::DegenerateMesh));
  CHECK(throws_code([&] { parse_mesh_spec("klein_bottle:n=3"); }, ErrorCode::ParseError));
}

TEST_CASE("icosphere counts follow the subdivision recurrence") {
  for (int L = 0; L <= 4; ++L) {
    const auto K = generate_mesh(Icosphere{L});
    const std::size_t f = 20u << (2 * L);
    CHECK(K.count(2) == f);
    CHECK(K.count(1) == 3 * f / 2);
    CHECK(K.count(0) == f / 2 + 2);
    for (const auto& v : K.vertices()) CHECK(std::hypot(v[0], v[1], v[2]) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("euler characteristics of the model spaces") {
  CHECK(generate_mesh(Torus{}).euler_characteristic() == 0);
  CHECK(generate_mesh(Annulus{}).euler_characteristic() == 0);
  CHECK(generate_mesh(SphericalShell{1, 2, 0.5, 1.0}).euler_characteristic() == 2);
  BallMinusBall two{6, 1.0, 0.15, {{-0.5, 0, 0}, {0.5, 0, 0}}};
  CHECK(generate_mesh(two).euler_characteristic() == 3);
  CHECK(generate_mesh(BoxMinusLine{6, 1.0, 0.15}).euler_characteristic() == 0);
  CHECK(generate_mesh(BoxMinusCircle{}).euler_characteristic() == 1);
}

TEST_CASE("boundary of boundary vanishes on every mesh kind") {
  for (const auto& K : test::sample_meshes()) {
    const auto bd = boundary_matrices(K);
    for (int k = 1; k < kMaxDim; ++k) {
      if (bd[k].cols == 0 || bd[k - 1].cols == 0) continue;
      const auto dk = test::to_dense(bd[k - 1]);
      const auto dk1 = test::to_dense(bd[k]);
      const auto prod = dk * dk1;
      bool zero = true;
      for (std::size_t i = 0; i < prod.rows(); ++i)
        for (std::size_t j = 0; j < prod.cols(); ++j) zero = zero && prod(i, j) == 0;
      CHECK(zero);
    }
  }
}

TEST_CASE("generators are deterministic and spec strings parse to the same mesh") {
  CHECK(generate_mesh(Icosphere{2}) == generate_mesh(Icosphere{2}));
  CHECK(generate_mesh(parse_mesh_spec("icosphere:level=2")) == generate_mesh(Icosphere{2}));
  CHECK(generate_mesh(parse_mesh_spec("torus:nu=6,nv=5,R=2,r=0.5")) == generate_mesh(Torus{6, 5, 2.0, 0.5}));
  CHECK(generate_mesh(parse_mesh_spec("box_minus_line:n=6")) == generate_mesh(BoxMinusLine{6, 1.0, 0.15}));
  const auto bmb = std::get<BallMinusBall>(parse_mesh_spec("ball_minus_ball:n=6,centers=-0.5;0;0/0.5;0;0"));
  REQUIRE(bmb.centers.size() == 2);
  CHECK(bmb.centers[1][0] == 0.5);
}

TEST_CASE("fundamental cycles and solid chains") {
  const auto S = generate_mesh(Icosphere{2});
  const Chain N = S.oriented_chain(2);
  CHECK(boundary(S, N).is_zero());
  for (auto c : N.coeffs) CHECK((c == 1 || c == -1));

  const SphericalShell spec{1, 2, 0.5, 1.0};
  const auto shell = generate_mesh(spec);
  const auto ch = shell_chains(shell, spec);
  CHECK(boundary(shell, ch.solid) == ch.outer - ch.inner);
  CHECK(boundary(shell, volume_chain(shell)) == ch.outer - ch.inner);

  const Annulus a{12, 3, 0.5, 1.0};
  const auto A = generate_mesh(a);
  const Chain inner = loop_chain(A, annulus_ring(a, 0));
  const Chain outer = loop_chain(A, annulus_ring(a, 3));
  CHECK(boundary(A, inner).is_zero());
  CHECK(boundary(A, annulus_region(A, a, 0, 3)) == outer - inner);
  CHECK(boundary(A, annulus_region(A, a, 1, 2)) ==
        loop_chain(A, annulus_ring(a, 2)) - loop_chain(A, annulus_ring(a, 1)));
}

TEST_CASE("loops") {
  const auto P = circle_polygon(7, 0.5, {0, 0, 1});
  CHECK(P.complex.count(0) == 7);
  CHECK(P.complex.count(1) == 7);
  CHECK(boundary(P.complex, P.cycle).is_zero());
  const auto A = generate_mesh(Annulus{8, 1});
  const auto ring = annulus_ring(Annulus{8, 1}, 0);
  CHECK(ring.size() == 8);
  // Vertices 0 and 3 on one ring are not adjacent.
  const std::vector<std::int32_t> jump{ring[0], ring[3], ring[4]};
  CHECK(throws_code([&] { loop_chain(A, jump); }, ErrorCode::SupportError));
}

TEST_CASE("chain arithmetic checks sizes") {
  Chain a(1, 3), b(1, 4);
  CHECK(throws_code([&] { a += b; }, ErrorCode::SupportError));
  a.coeffs = {1, -2, 3};
  CHECK((2 * a).coeffs == std::vector<std::int64_t>{2, -4, 6});
  CHECK((a - a).is_zero());
}
