#pragma once

#include <string>
#include <variant>
#include <vector>

#include "emtopo/constants.hpp"
#include "emtopo/mesh.hpp"

namespace emtopo {

struct Coulomb {
  double q = 1.0;
  Point3 center{0, 0, 0};
};

/// Infinite straight wire through `point` along the unit vector `direction`.
struct StraightWire {
  double current = 1.0;
  Point3 point{0, 0, 0};
  Point3 direction{0, 0, 1};
};

/// E = E0 (e1 cos(k.x - w t + phase) + e2 sin(k.x - w t + phase)), B = k x E / w.
/// e1, e2 should be orthogonal to k; e2 = k^ x e1 gives circular polarization,
/// e2 = 0 linear. omega = 0 selects the vacuum value c |k|.
struct PlaneWave {
  double amplitude = 1.0;
  Point3 k{0, 0, 1};
  Point3 e1{1, 0, 0};
  Point3 e2{0, 0, 0};
  double phase = 0.0;
  double omega = 0.0;
};

struct UniformField {
  Point3 E{0, 0, 0};
  Point3 B{0, 0, 0};
};

/// Superposition of point charges.
struct PointCharges {
  std::vector<Coulomb> charges;
};

/// Closed polygonal current loop; current flows along the vertex order.
struct WireLoop {
  double current = 1.0;
  std::vector<Point3> vertices;
};

struct AnalyticField {
  std::variant<Coulomb, StraightWire, PlaneWave, UniformField, PointCharges, WireLoop> kind;
  PhysicalConstants constants;

  /// Electric field (V/m) and magnetic field (T).
  Point3 electric(const Point3& x, double t = 0.0) const;
  Point3 magnetic(const Point3& x, double t = 0.0) const;
  /// Scalar and vector potentials with E = -grad phi - d_t a, B = curl a.
  double scalar_potential(const Point3& x, double t = 0.0) const;
  Point3 vector_potential(const Point3& x, double t = 0.0) const;
  /// Distance to the singular set (infinite for smooth fields).
  double distance_to_source(const Point3& x) const;
  bool is_static() const;
  double angular_frequency() const;  // plane waves only, else 0
  std::string describe() const;
};

AnalyticField make_field(Coulomb f, const PhysicalConstants& k);
AnalyticField make_field(StraightWire f, const PhysicalConstants& k);
AnalyticField make_field(PlaneWave f, const PhysicalConstants& k);
AnalyticField make_field(UniformField f, const PhysicalConstants& k);
AnalyticField make_field(PointCharges f, const PhysicalConstants& k);
AnalyticField make_field(WireLoop f, const PhysicalConstants& k);

/// Two charges q1 at c1 and q2 at c2.
AnalyticField two_charges(double q1, const Point3& c1, double q2, const Point3& c2, const PhysicalConstants& k);
/// Circular loop of radius r in the plane z = z0 approximated by an n-gon.
AnalyticField circular_loop(double current, double radius, int n, const PhysicalConstants& k, double z0 = 0.0);

/// Parses field specs such as "coulomb:q=2e", "wire:I=1.5",
/// "planewave:E0=1,kz=6.28,pol=circular", "uniform:Bz=1",
/// "charges:q=1e;2e,at=-0.5;0;0/0.5;0;0", "loop:I=2,R=0.5,n=64".
/// A trailing "e" on a charge means multiples of the elementary charge.
AnalyticField parse_field(const std::string& text, const PhysicalConstants& k);

}  // namespace emtopo
