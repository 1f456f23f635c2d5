#include "emtopo/fields.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "emtopo/error.hpp"
#include "emtopo/vec3.hpp"
#include "util/params.hpp"

namespace emtopo {

using namespace vec;

Units parse_units(const std::string& name) {
  if (name == "si" || name == "SI") return Units::SI;
  if (name == "natural") return Units::Natural;
  fail(ErrorCode::ParseError, "unknown unit system '" + name + "'");
}

std::string units_name(Units u) { return u == Units::SI ? "si" : "natural"; }

namespace {

constexpr double kPi = std::numbers::pi;

Point3 coulomb_E(const Coulomb& f, const Point3& x, const PhysicalConstants& k) {
  const Point3 r = sub(x, f.center);
  const double d = norm(r);
  return scale(f.q / (4 * kPi * k.epsilon0 * d * d * d), r);
}

double coulomb_phi(const Coulomb& f, const Point3& x, const PhysicalConstants& k) {
  return f.q / (4 * kPi * k.epsilon0 * norm(sub(x, f.center)));
}

// Perpendicular offset from the wire axis.
Point3 wire_offset(const StraightWire& w, const Point3& x) {
  const Point3 d = normalized(w.direction);
  const Point3 r = sub(x, w.point);
  return axpy(r, -dot(r, d), d);
}

double plane_omega(const PlaneWave& p, const PhysicalConstants& k) {
  return p.omega != 0.0 ? p.omega : k.c * norm(p.k);
}

double segment_distance(const Point3& a, const Point3& b, const Point3& x) {
  const Point3 ab = sub(b, a);
  double s = dot(sub(x, a), ab) / dot(ab, ab);
  s = std::clamp(s, 0.0, 1.0);
  return norm(sub(x, axpy(a, s, ab)));
}

template <class F>
void for_segments(const WireLoop& w, F&& f) {
  const std::size_t n = w.vertices.size();
  for (std::size_t i = 0; i < n; ++i) f(w.vertices[i], w.vertices[(i + 1) % n]);
}

}  // namespace

Point3 AnalyticField::electric(const Point3& x, double t) const {
  return std::visit(
      [&](const auto& f) -> Point3 {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Coulomb>) {
          return coulomb_E(f, x, constants);
        } else if constexpr (std::is_same_v<T, PointCharges>) {
          Point3 E{0, 0, 0};
          for (const auto& q : f.charges) E = add(E, coulomb_E(q, x, constants));
          return E;
        } else if constexpr (std::is_same_v<T, PlaneWave>) {
          const double th = dot(f.k, x) - plane_omega(f, constants) * t + f.phase;
          return scale(f.amplitude, add(scale(std::cos(th), f.e1), scale(std::sin(th), f.e2)));
        } else if constexpr (std::is_same_v<T, UniformField>) {
          return f.E;
        } else {
          return Point3{0, 0, 0};
        }
      },
      kind);
}

Point3 AnalyticField::magnetic(const Point3& x, double t) const {
  return std::visit(
      [&](const auto& f) -> Point3 {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, StraightWire>) {
          const Point3 rho = wire_offset(f, x);
          const double r2 = dot(rho, rho);
          return scale(constants.mu0 * f.current / (2 * kPi * r2), cross(normalized(f.direction), rho));
        } else if constexpr (std::is_same_v<T, PlaneWave>) {
          return scale(1.0 / plane_omega(f, constants), cross(f.k, electric(x, t)));
        } else if constexpr (std::is_same_v<T, UniformField>) {
          return f.B;
        } else if constexpr (std::is_same_v<T, WireLoop>) {
          Point3 B{0, 0, 0};
          const double pref = constants.mu0 * f.current / (4 * kPi);
          for_segments(f, [&](const Point3& a, const Point3& b) {
            const Point3 r1 = sub(x, a), r2 = sub(x, b);
            const double n1 = norm(r1), n2 = norm(r2);
            const double den = n1 * n2 * (n1 * n2 + dot(r1, r2));
            B = axpy(B, pref * (n1 + n2) / den, cross(r1, r2));
          });
          return B;
        } else {
          return Point3{0, 0, 0};
        }
      },
      kind);
}

double AnalyticField::scalar_potential(const Point3& x, double) const {
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Coulomb>) {
          return coulomb_phi(f, x, constants);
        } else if constexpr (std::is_same_v<T, PointCharges>) {
          double phi = 0;
          for (const auto& q : f.charges) phi += coulomb_phi(q, x, constants);
          return phi;
        } else if constexpr (std::is_same_v<T, UniformField>) {
          return -dot(f.E, x);
        } else {
          return 0.0;
        }
      },
      kind);
}

Point3 AnalyticField::vector_potential(const Point3& x, double t) const {
  return std::visit(
      [&](const auto& f) -> Point3 {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, StraightWire>) {
          const double rho = norm(wire_offset(f, x));
          return scale(-constants.mu0 * f.current / (2 * kPi) * std::log(rho), normalized(f.direction));
        } else if constexpr (std::is_same_v<T, PlaneWave>) {
          const double w = plane_omega(f, constants);
          const double th = dot(f.k, x) - w * t + f.phase;
          return scale(f.amplitude / w, sub(scale(std::sin(th), f.e1), scale(std::cos(th), f.e2)));
        } else if constexpr (std::is_same_v<T, UniformField>) {
          return scale(0.5, cross(f.B, x));
        } else if constexpr (std::is_same_v<T, WireLoop>) {
          Point3 A{0, 0, 0};
          const double pref = constants.mu0 * f.current / (4 * kPi);
          for_segments(f, [&](const Point3& a, const Point3& b) {
            const Point3 ab = sub(b, a);
            const double L = norm(ab);
            const double s = norm(sub(x, a)) + norm(sub(x, b));
            A = axpy(A, pref * std::log((s + L) / (s - L)) / L, ab);
          });
          return A;
        } else {
          return Point3{0, 0, 0};
        }
      },
      kind);
}

double AnalyticField::distance_to_source(const Point3& x) const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Coulomb>) {
          return norm(sub(x, f.center));
        } else if constexpr (std::is_same_v<T, PointCharges>) {
          double d = inf;
          for (const auto& q : f.charges) d = std::min(d, norm(sub(x, q.center)));
          return d;
        } else if constexpr (std::is_same_v<T, StraightWire>) {
          return norm(wire_offset(f, x));
        } else if constexpr (std::is_same_v<T, WireLoop>) {
          double d = inf;
          for_segments(f, [&](const Point3& a, const Point3& b) { d = std::min(d, segment_distance(a, b, x)); });
          return d;
        } else {
          return inf;
        }
      },
      kind);
}

bool AnalyticField::is_static() const { return !std::holds_alternative<PlaneWave>(kind); }

double AnalyticField::angular_frequency() const {
  if (auto p = std::get_if<PlaneWave>(&kind)) return plane_omega(*p, constants);
  return 0.0;
}

std::string AnalyticField::describe() const {
  std::ostringstream os;
  os.precision(12);
  auto pt = [&](const Point3& p) { os << "(" << p[0] << "," << p[1] << "," << p[2] << ")"; };
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Coulomb>) {
          os << "coulomb q=" << f.q << " at ";
          pt(f.center);
        } else if constexpr (std::is_same_v<T, PointCharges>) {
          os << "charges";
          for (const auto& q : f.charges) {
            os << " q=" << q.q << " at ";
            pt(q.center);
          }
        } else if constexpr (std::is_same_v<T, StraightWire>) {
          os << "wire I=" << f.current << " through ";
          pt(f.point);
          os << " along ";
          pt(f.direction);
        } else if constexpr (std::is_same_v<T, PlaneWave>) {
          os << "planewave E0=" << f.amplitude << " k=";
          pt(f.k);
        } else if constexpr (std::is_same_v<T, UniformField>) {
          os << "uniform E=";
          pt(f.E);
          os << " B=";
          pt(f.B);
        } else {
          os << "loop I=" << f.current << " with " << f.vertices.size() << " segments";
        }
      },
      kind);
  return os.str();
}

AnalyticField make_field(Coulomb f, const PhysicalConstants& k) { return {f, k}; }
AnalyticField make_field(StraightWire f, const PhysicalConstants& k) { return {f, k}; }
AnalyticField make_field(PlaneWave f, const PhysicalConstants& k) { return {f, k}; }
AnalyticField make_field(UniformField f, const PhysicalConstants& k) { return {f, k}; }
AnalyticField make_field(PointCharges f, const PhysicalConstants& k) { return {std::move(f), k}; }
AnalyticField make_field(WireLoop f, const PhysicalConstants& k) {
  if (f.vertices.size() < 3) fail(ErrorCode::ParseError, "current loop needs at least three vertices");
  return {std::move(f), k};
}

AnalyticField two_charges(double q1, const Point3& c1, double q2, const Point3& c2, const PhysicalConstants& k) {
  return make_field(PointCharges{{Coulomb{q1, c1}, Coulomb{q2, c2}}}, k);
}

AnalyticField circular_loop(double current, double radius, int n, const PhysicalConstants& k, double z0) {
  if (n < 3 || !(radius > 0)) fail(ErrorCode::ParseError, "loop needs n >= 3 and positive radius");
  WireLoop w;
  w.current = current;
  for (int i = 0; i < n; ++i) {
    const double a = 2 * kPi * i / n;
    w.vertices.push_back({radius * std::cos(a), radius * std::sin(a), z0});
  }
  return make_field(std::move(w), k);
}

AnalyticField parse_field(const std::string& text, const PhysicalConstants& k) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  detail::Params p(kind, detail::parse_kv(colon == std::string::npos ? "" : text.substr(colon + 1)));
  auto charge = [&](const std::string& key, double fallback) {
    auto r = p.raw(key);
    return r ? detail::to_quantity(*r, k.e) : fallback;
  };
  AnalyticField out;
  if (kind == "coulomb") {
    Coulomb c;
    c.q = charge("q", k.e);
    c.center = {p.num("x", 0), p.num("y", 0), p.num("z", 0)};
    out = make_field(c, k);
  } else if (kind == "charges" || kind == "two_charges") {
    PointCharges pc;
    std::vector<double> qs;
    if (auto r = p.raw("q")) {
      std::stringstream ss(*r);
      std::string one;
      while (std::getline(ss, one, ';')) qs.push_back(detail::to_quantity(one, k.e));
    } else {
      qs = {k.e, 2 * k.e};
    }
    std::vector<Point3> at;
    if (auto r = p.raw("at")) at = detail::parse_points(*r);
    else at = {{-0.3, 0, 0}, {0.3, 0, 0}};
    if (at.size() != qs.size()) fail(ErrorCode::ParseError, "charges: q and at lists differ in length");
    for (std::size_t i = 0; i < qs.size(); ++i) pc.charges.push_back({qs[i], at[i]});
    out = make_field(std::move(pc), k);
  } else if (kind == "wire") {
    StraightWire w;
    w.current = p.num("I", 1.0);
    w.point = {p.num("x", 0), p.num("y", 0), 0};
    w.direction = normalized(Point3{p.num("dx", 0), p.num("dy", 0), p.num("dz", 1)});
    out = make_field(w, k);
  } else if (kind == "planewave") {
    PlaneWave w;
    w.amplitude = p.num("E0", 1.0);
    w.k = {p.num("kx", 0), p.num("ky", 0), p.num("kz", 2 * kPi)};
    w.phase = p.num("phase", 0);
    w.omega = p.num("omega", 0);
    const std::string pol = p.raw("pol").value_or("linear");
    const Point3 kh = normalized(w.k);
    const Point3 ref = std::abs(kh[0]) < 0.9 ? Point3{1, 0, 0} : Point3{0, 1, 0};
    w.e1 = normalized(axpy(ref, -dot(ref, kh), kh));
    if (pol == "circular") w.e2 = cross(kh, w.e1);
    else if (pol == "linear") w.e2 = {0, 0, 0};
    else fail(ErrorCode::ParseError, "pol must be linear or circular");
    out = make_field(w, k);
  } else if (kind == "uniform") {
    UniformField u;
    u.E = {p.num("Ex", 0), p.num("Ey", 0), p.num("Ez", 0)};
    u.B = {p.num("Bx", 0), p.num("By", 0), p.num("Bz", 0)};
    out = make_field(u, k);
  } else if (kind == "loop") {
    const double I = p.num("I", 1.0);
    const double R = p.num("R", 0.5);
    const int n = p.integer("n", 64);
    const double z = p.num("z", 0);
    out = circular_loop(I, R, n, k, z);
  } else {
    fail(ErrorCode::ParseError, "unknown field kind '" + kind + "'");
  }
  p.done();
  return out;
}

}  // namespace emtopo
