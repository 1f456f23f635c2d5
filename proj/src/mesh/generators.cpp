#include "emtopo/mesh_generators.hpp"

#include "util/params.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include "emtopo/error.hpp"

namespace emtopo {

using detail::Params;
using detail::parse_kv;
using detail::to_double;

namespace {

using Tri = std::array<std::int32_t, 3>;

Point3 sub(const Point3& a, const Point3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Point3 cross(const Point3& a, const Point3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot(const Point3& a, const Point3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Point3 normalized(const Point3& a) {
  const double n = std::sqrt(dot(a, a));
  return {a[0] / n, a[1] / n, a[2] / n};
}

// Orients (a,b,c) so that the normal (b-a)x(c-a) has positive dot with `dir`.
std::vector<std::int32_t> oriented_triangle(const std::vector<Point3>& v, Tri t, const Point3& dir) {
  const Point3 n = cross(sub(v[t[1]], v[t[0]]), sub(v[t[2]], v[t[0]]));
  if (dot(n, dir) < 0) std::swap(t[1], t[2]);
  return {t[0], t[1], t[2]};
}

std::vector<std::int32_t> positive_tet(const std::vector<Point3>& v, std::array<std::int32_t, 4> t) {
  const double det = dot(sub(v[t[1]], v[t[0]]), cross(sub(v[t[2]], v[t[0]]), sub(v[t[3]], v[t[0]])));
  if (det < 0) std::swap(t[2], t[3]);
  return {t[0], t[1], t[2], t[3]};
}

struct SphereMesh {
  std::vector<Point3> unit;  // vertices on the unit sphere
  std::vector<Tri> faces;    // outward oriented
};

SphereMesh subdivided_icosahedron(int level) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  SphereMesh m;
  m.unit = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
            {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : m.unit) p = normalized(p);
  m.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
             {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
             {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (auto& f : m.faces) {
    const Point3 n = cross(sub(m.unit[f[1]], m.unit[f[0]]), sub(m.unit[f[2]], m.unit[f[0]]));
    if (dot(n, m.unit[f[0]]) < 0) std::swap(f[1], f[2]);
  }
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> midpoint;
    auto mid = [&](std::int32_t a, std::int32_t b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const Point3& pa = m.unit[a];
      const Point3& pb = m.unit[b];
      m.unit.push_back(normalized({pa[0] + pb[0], pa[1] + pb[1], pa[2] + pb[2]}));
      const auto idx = static_cast<std::int32_t>(m.unit.size() - 1);
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<Tri> next;
    next.reserve(m.faces.size() * 4);
    for (const auto& f : m.faces) {
      const auto ab = mid(f[0], f[1]);
      const auto bc = mid(f[1], f[2]);
      const auto ca = mid(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    m.faces = std::move(next);
  }
  return m;
}

SimplicialComplex make_icosphere(const Icosphere& s) {
  if (s.level < 0) fail(ErrorCode::DegenerateMesh, "icosphere level must be >= 0");
  if (!(s.radius > 0)) fail(ErrorCode::DegenerateMesh, "icosphere radius must be positive");
  auto m = subdivided_icosahedron(s.level);
  std::vector<Point3> verts;
  verts.reserve(m.unit.size());
  for (const auto& u : m.unit)
    verts.push_back({s.center[0] + s.radius * u[0], s.center[1] + s.radius * u[1], s.center[2] + s.radius * u[2]});
  std::vector<std::vector<std::int32_t>> tris;
  tris.reserve(m.faces.size());
  for (const auto& f : m.faces) tris.push_back({f[0], f[1], f[2]});
  return build_complex(std::move(verts), tris);
}

SimplicialComplex make_shell(const SphericalShell& s) {
  if (s.level < 0 || s.layers < 1) fail(ErrorCode::DegenerateMesh, "shell needs level >= 0 and layers >= 1");
  if (!(s.r_inner > 0) || !(s.r_inner < s.r_outer)) fail(ErrorCode::DegenerateMesh, "shell needs 0 < r_inner < r_outer");
  auto m = subdivided_icosahedron(s.level);
  const auto nv = static_cast<std::int32_t>(m.unit.size());
  std::vector<Point3> verts;
  for (int l = 0; l <= s.layers; ++l) {
    const double r = s.r_inner + (s.r_outer - s.r_inner) * l / s.layers;
    for (const auto& u : m.unit) verts.push_back({r * u[0], r * u[1], r * u[2]});
  }
  std::vector<std::vector<std::int32_t>> tets;
  for (const auto& f : m.faces) {
    Tri t = f;
    std::sort(t.begin(), t.end());
    for (int l = 0; l < s.layers; ++l) {
      const auto lo = l * nv, hi = (l + 1) * nv;
      const auto a0 = lo + t[0], b0 = lo + t[1], c0 = lo + t[2];
      const auto a1 = hi + t[0], b1 = hi + t[1], c1 = hi + t[2];
      tets.push_back(positive_tet(verts, {a0, b0, c0, c1}));
      tets.push_back(positive_tet(verts, {a0, b0, b1, c1}));
      tets.push_back(positive_tet(verts, {a0, a1, b1, c1}));
    }
  }
  return build_complex(std::move(verts), tets);
}

SimplicialComplex make_annulus(const Annulus& s) {
  if (s.n < 3 || s.layers < 1) fail(ErrorCode::DegenerateMesh, "annulus needs n >= 3 and layers >= 1");
  if (!(s.r_inner > 0) || !(s.r_inner < s.r_outer)) fail(ErrorCode::DegenerateMesh, "annulus needs 0 < r_inner < r_outer");
  std::vector<Point3> verts;
  for (int l = 0; l <= s.layers; ++l) {
    const double r = s.r_inner + (s.r_outer - s.r_inner) * l / s.layers;
    for (int j = 0; j < s.n; ++j) {
      const double a = 2.0 * std::numbers::pi * j / s.n;
      verts.push_back({r * std::cos(a), r * std::sin(a), 0.0});
    }
  }
  const Point3 up{0, 0, 1};
  std::vector<std::vector<std::int32_t>> tris;
  for (int l = 0; l < s.layers; ++l) {
    for (int j = 0; j < s.n; ++j) {
      const auto v00 = l * s.n + j, v01 = l * s.n + (j + 1) % s.n;
      const auto v10 = (l + 1) * s.n + j, v11 = (l + 1) * s.n + (j + 1) % s.n;
      tris.push_back(oriented_triangle(verts, {v00, v01, v11}, up));
      tris.push_back(oriented_triangle(verts, {v00, v11, v10}, up));
    }
  }
  return build_complex(std::move(verts), tris);
}

SimplicialComplex make_torus(const Torus& s) {
  if (s.n_u < 3 || s.n_v < 3) fail(ErrorCode::DegenerateMesh, "torus needs n_u, n_v >= 3");
  if (!(s.minor_radius > 0) || !(s.minor_radius < s.major_radius)) fail(ErrorCode::DegenerateMesh, "torus needs 0 < r < R");
  std::vector<Point3> verts;
  for (int i = 0; i < s.n_u; ++i) {
    const double u = 2.0 * std::numbers::pi * i / s.n_u;
    for (int j = 0; j < s.n_v; ++j) {
      const double v = 2.0 * std::numbers::pi * j / s.n_v;
      const double rho = s.major_radius + s.minor_radius * std::cos(v);
      verts.push_back({rho * std::cos(u), rho * std::sin(u), s.minor_radius * std::sin(v)});
    }
  }
  auto id = [&](int i, int j) { return static_cast<std::int32_t>((i % s.n_u) * s.n_v + (j % s.n_v)); };
  std::vector<std::vector<std::int32_t>> tris;
  for (int i = 0; i < s.n_u; ++i) {
    for (int j = 0; j < s.n_v; ++j) {
      for (Tri t : {Tri{id(i, j), id(i + 1, j), id(i + 1, j + 1)}, Tri{id(i, j), id(i + 1, j + 1), id(i, j + 1)}}) {
        Point3 c{0, 0, 0};
        for (auto v : t)
          for (int k = 0; k < 3; ++k) c[k] += verts[v][k] / 3.0;
        const double u = std::atan2(c[1], c[0]);
        const Point3 core{s.major_radius * std::cos(u), s.major_radius * std::sin(u), 0.0};
        tris.push_back(oriented_triangle(verts, t, sub(c, core)));
      }
    }
  }
  return build_complex(std::move(verts), tris);
}

double box_point_distance(const Point3& lo, const Point3& hi, const Point3& p) {
  double acc = 0;
  for (int k = 0; k < 3; ++k) {
    const double d = std::max({lo[k] - p[k], 0.0, p[k] - hi[k]});
    acc += d * d;
  }
  return std::sqrt(acc);
}

// Freudenthal triangulation of the kept voxels of [-L, L]^3.
template <class Removed>
SimplicialComplex voxel_complement(int n, double L, Removed removed) {
  if (n < 2) fail(ErrorCode::DegenerateMesh, "voxel resolution must be >= 2");
  if (!(L > 0)) fail(ErrorCode::DegenerateMesh, "box half width must be positive");
  const double h = 2.0 * L / n;
  const int nv = n + 1;
  auto grid_id = [nv](int i, int j, int k) { return (i * nv + j) * nv + k; };

  static constexpr std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

  std::vector<std::array<std::int32_t, 4>> raw;
  std::size_t removed_count = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Point3 lo{-L + i * h, -L + j * h, -L + k * h};
        const Point3 hi{lo[0] + h, lo[1] + h, lo[2] + h};
        if (removed(lo, hi)) {
          ++removed_count;
          continue;
        }
        for (const auto& p : perms) {
          std::array<int, 3> c{i, j, k};
          std::array<std::int32_t, 4> tet{};
          tet[0] = grid_id(c[0], c[1], c[2]);
          for (int s = 0; s < 3; ++s) {
            c[p[s]] += 1;
            tet[s + 1] = grid_id(c[0], c[1], c[2]);
          }
          raw.push_back(tet);
        }
      }
  if (removed_count == 0) fail(ErrorCode::DegenerateMesh, "resolution too coarse: no voxel meets the removed region");
  if (raw.empty()) fail(ErrorCode::DegenerateMesh, "every voxel was removed");

  std::vector<std::int32_t> remap(static_cast<std::size_t>(nv) * nv * nv, -1);
  for (const auto& t : raw)
    for (auto v : t) remap[v] = 0;
  std::vector<Point3> verts;
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < nv; ++j)
      for (int k = 0; k < nv; ++k) {
        auto& r = remap[grid_id(i, j, k)];
        if (r < 0) continue;
        r = static_cast<std::int32_t>(verts.size());
        verts.push_back({-L + i * h, -L + j * h, -L + k * h});
      }
  std::vector<std::vector<std::int32_t>> tets;
  tets.reserve(raw.size());
  for (const auto& t : raw) tets.push_back(positive_tet(verts, {remap[t[0]], remap[t[1]], remap[t[2]], remap[t[3]]}));
  return build_complex(std::move(verts), tets);
}

SimplicialComplex make_ball_minus_ball(const BallMinusBall& s) {
  if (!(s.hole_radius > 0) || s.centers.empty()) fail(ErrorCode::DegenerateMesh, "need at least one hole of positive radius");
  for (const auto& c : s.centers)
    for (double x : c)
      if (std::abs(x) + s.hole_radius >= s.half_width) fail(ErrorCode::DegenerateMesh, "hole does not fit inside the box");
  return voxel_complement(s.n, s.half_width, [&](const Point3& lo, const Point3& hi) {
    return std::any_of(s.centers.begin(), s.centers.end(),
                       [&](const Point3& c) { return box_point_distance(lo, hi, c) <= s.hole_radius; });
  });
}

SimplicialComplex make_box_minus_line(const BoxMinusLine& s) {
  if (!(s.tube_radius > 0) || s.tube_radius >= s.half_width) fail(ErrorCode::DegenerateMesh, "tube must fit inside the box");
  return voxel_complement(s.n, s.half_width, [&](const Point3& lo, const Point3& hi) {
    const double dx = std::max({lo[0], 0.0, -hi[0]});
    const double dy = std::max({lo[1], 0.0, -hi[1]});
    return std::hypot(dx, dy) <= s.tube_radius;
  });
}

SimplicialComplex make_box_minus_circle(const BoxMinusCircle& s) {
  if (!(s.tube_radius > 0) || !(s.ring_radius > s.tube_radius) || s.ring_radius + s.tube_radius >= s.half_width)
    fail(ErrorCode::DegenerateMesh, "ring tube must fit inside the box");
  constexpr int samples = 1440;
  std::vector<Point3> ring;
  ring.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double a = 2.0 * std::numbers::pi * i / samples;
    ring.push_back({s.ring_radius * std::cos(a), s.ring_radius * std::sin(a), 0.0});
  }
  return voxel_complement(s.n, s.half_width, [&](const Point3& lo, const Point3& hi) {
    return std::any_of(ring.begin(), ring.end(),
                       [&](const Point3& p) { return box_point_distance(lo, hi, p) <= s.tube_radius; });
  });
}

}  // namespace

SimplicialComplex generate_mesh(const MeshSpec& spec) {
  return std::visit(
      [](const auto& s) -> SimplicialComplex {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Icosphere>) return make_icosphere(s);
        else if constexpr (std::is_same_v<T, SphericalShell>) return make_shell(s);
        else if constexpr (std::is_same_v<T, Annulus>) return make_annulus(s);
        else if constexpr (std::is_same_v<T, Torus>) return make_torus(s);
        else if constexpr (std::is_same_v<T, BallMinusBall>) return make_ball_minus_ball(s);
        else if constexpr (std::is_same_v<T, BoxMinusLine>) return make_box_minus_line(s);
        else return make_box_minus_circle(s);
      },
      spec);
}

MeshSpec parse_mesh_spec(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  Params p(kind, parse_kv(colon == std::string::npos ? "" : text.substr(colon + 1)));
  MeshSpec out;
  if (kind == "icosphere") {
    Icosphere s;
    s.level = p.integer("level", s.level);
    s.radius = p.num("radius", s.radius);
    out = s;
  } else if (kind == "spherical_shell" || kind == "shell") {
    SphericalShell s;
    s.level = p.integer("level", s.level);
    s.layers = p.integer("layers", s.layers);
    s.r_inner = p.num("rin", s.r_inner);
    s.r_outer = p.num("rout", s.r_outer);
    out = s;
  } else if (kind == "annulus") {
    Annulus s;
    s.n = p.integer("n", s.n);
    s.layers = p.integer("layers", s.layers);
    s.r_inner = p.num("rin", s.r_inner);
    s.r_outer = p.num("rout", s.r_outer);
    out = s;
  } else if (kind == "torus") {
    Torus s;
    s.n_u = p.integer("nu", s.n_u);
    s.n_v = p.integer("nv", s.n_v);
    s.major_radius = p.num("R", s.major_radius);
    s.minor_radius = p.num("r", s.minor_radius);
    out = s;
  } else if (kind == "ball_minus_ball") {
    BallMinusBall s;
    s.n = p.integer("n", s.n);
    s.half_width = p.num("L", s.half_width);
    s.hole_radius = p.num("r", s.hole_radius);
    if (auto c = p.raw("centers")) s.centers = detail::parse_points(*c);
    out = s;
  } else if (kind == "box_minus_line") {
    BoxMinusLine s;
    s.n = p.integer("n", s.n);
    s.half_width = p.num("L", s.half_width);
    s.tube_radius = p.num("r", s.tube_radius);
    out = s;
  } else if (kind == "box_minus_circle") {
    BoxMinusCircle s;
    s.n = p.integer("n", s.n);
    s.half_width = p.num("L", s.half_width);
    s.ring_radius = p.num("R", s.ring_radius);
    s.tube_radius = p.num("r", s.tube_radius);
    out = s;
  } else {
    fail(ErrorCode::ParseError, "unknown mesh kind '" + kind + "'");
  }
  p.done();
  return out;
}

PolygonLoop circle_polygon(int n, double radius, Point3 center) {
  if (n < 3 || !(radius > 0)) fail(ErrorCode::DegenerateMesh, "polygon needs n >= 3 and positive radius");
  std::vector<Point3> verts;
  std::vector<std::vector<std::int32_t>> edges;
  std::vector<std::int32_t> path;
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * i / n;
    verts.push_back({center[0] + radius * std::cos(a), center[1] + radius * std::sin(a), center[2]});
    edges.push_back({i, (i + 1) % n});
    path.push_back(i);
  }
  PolygonLoop out;
  out.complex = build_complex(std::move(verts), edges);
  out.cycle = loop_chain(out.complex, path);
  return out;
}

PolygonLoop polygon_loop(std::vector<Point3> points) {
  const int n = static_cast<int>(points.size());
  if (n < 3) fail(ErrorCode::DegenerateMesh, "polygon needs at least 3 points");
  std::vector<std::vector<std::int32_t>> edges;
  std::vector<std::int32_t> path;
  for (int i = 0; i < n; ++i) {
    edges.push_back({i, (i + 1) % n});
    path.push_back(i);
  }
  PolygonLoop out;
  out.complex = build_complex(std::move(points), edges);
  out.cycle = loop_chain(out.complex, path);
  return out;
}

std::vector<Point3> circle_points(int n, double radius, Point3 center, Point3 u, Point3 v) {
  std::vector<Point3> pts;
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * i / n;
    const double cu = radius * std::cos(a), sv = radius * std::sin(a);
    pts.push_back({center[0] + cu * u[0] + sv * v[0], center[1] + cu * u[1] + sv * v[1],
                   center[2] + cu * u[2] + sv * v[2]});
  }
  return pts;
}

Chain volume_chain(const SimplicialComplex& K) {
  Chain out(3, K.count(3));
  for (std::size_t i = 0; i < K.count(3); ++i) {
    const auto t = K.simplex(3, i);
    const Point3& a = K.vertex(t[0]);
    const double vol = dot(sub(K.vertex(t[1]), a), cross(sub(K.vertex(t[2]), a), sub(K.vertex(t[3]), a)));
    out.coeffs[i] = vol > 0 ? 1 : -1;
  }
  return out;
}

Chain annulus_region(const SimplicialComplex& K, const Annulus& spec, int lo, int hi) {
  Chain out(2, K.count(2));
  for (std::size_t i = 0; i < K.count(2); ++i) {
    const auto t = K.simplex(2, i);
    bool inside = true;
    for (auto v : t) {
      const int layer = v / spec.n;
      inside = inside && layer >= lo && layer <= hi;
    }
    if (!inside) continue;
    const Point3 n = cross(sub(K.vertex(t[1]), K.vertex(t[0])), sub(K.vertex(t[2]), K.vertex(t[0])));
    out.coeffs[i] = n[2] > 0 ? 1 : -1;
  }
  return out;
}

std::vector<std::int32_t> annulus_ring(const Annulus& spec, int layer) {
  std::vector<std::int32_t> ring;
  for (int j = 0; j < spec.n; ++j) ring.push_back(layer * spec.n + j);
  return ring;
}

ShellChains shell_chains(const SimplicialComplex& K, const SphericalShell& spec) {
  ShellChains out{Chain(2, K.count(2)), Chain(2, K.count(2)), Chain(3, K.count(3))};
  const double tol = 1e-9 * spec.r_outer;
  for (std::size_t i = 0; i < K.count(2); ++i) {
    auto t = K.simplex(2, i);
    const auto& a = K.vertex(t[0]);
    const auto& b = K.vertex(t[1]);
    const auto& c = K.vertex(t[2]);
    const double ra = std::sqrt(dot(a, a)), rb = std::sqrt(dot(b, b)), rc = std::sqrt(dot(c, c));
    const Point3 centroid{(a[0] + b[0] + c[0]) / 3, (a[1] + b[1] + c[1]) / 3, (a[2] + b[2] + c[2]) / 3};
    const int sign = dot(cross(sub(b, a), sub(c, a)), centroid) > 0 ? 1 : -1;
    auto on = [&](double r) { return std::abs(ra - r) < tol && std::abs(rb - r) < tol && std::abs(rc - r) < tol; };
    if (on(spec.r_inner)) out.inner.coeffs[i] = sign;
    if (on(spec.r_outer)) out.outer.coeffs[i] = sign;
  }
  for (std::size_t i = 0; i < K.count(3); ++i) {
    auto t = K.simplex(3, i);
    const double det = dot(sub(K.vertex(t[1]), K.vertex(t[0])),
                           cross(sub(K.vertex(t[2]), K.vertex(t[0])), sub(K.vertex(t[3]), K.vertex(t[0]))));
    out.solid.coeffs[i] = det > 0 ? 1 : -1;
  }
  return out;
}

}  // namespace emtopo
