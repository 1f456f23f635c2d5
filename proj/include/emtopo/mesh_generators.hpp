#pragma once

#include <string>
#include <variant>
#include <vector>

#include "emtopo/mesh.hpp"

namespace emtopo {

// Mesh kinds. Lengths are in meters.

struct Icosphere {
  int level = 0;
  double radius = 1.0;
  Point3 center{0, 0, 0};
};

/// Tetrahedral shell between two concentric icospheres.
struct SphericalShell {
  int level = 2;
  int layers = 2;
  double r_inner = 0.5;
  double r_outer = 1.0;
};

/// Planar annulus in z = 0 with `n` angular and `layers` radial subdivisions.
struct Annulus {
  int n = 32;
  int layers = 2;
  double r_inner = 0.5;
  double r_outer = 1.0;
};

struct Torus {
  int n_u = 8;
  int n_v = 8;
  double major_radius = 1.0;
  double minor_radius = 0.3;
};

/// Cube [-half_width, half_width]^3 cut into n^3 voxels, each split into six
/// tetrahedra; voxels meeting a closed ball of `hole_radius` about any of
/// `centers` are removed.
struct BallMinusBall {
  int n = 10;
  double half_width = 1.0;
  double hole_radius = 0.15;
  std::vector<Point3> centers{{0, 0, 0}};
};

/// Voxel box minus a tube about the z axis (open wire).
struct BoxMinusLine {
  int n = 10;
  double half_width = 1.0;
  double tube_radius = 0.15;
};

/// Voxel box minus a tube about the circle of `ring_radius` in z = 0 (closed wire).
struct BoxMinusCircle {
  int n = 12;
  double half_width = 1.0;
  double ring_radius = 0.5;
  double tube_radius = 0.2;
};

using MeshSpec = std::variant<Icosphere, SphericalShell, Annulus, Torus, BallMinusBall, BoxMinusLine, BoxMinusCircle>;

/// Deterministic: identical specs give identical complexes.
/// Throws DegenerateMesh for invalid or too coarse resolutions.
SimplicialComplex generate_mesh(const MeshSpec& spec);

/// Parses "icosphere:level=3", "torus:nu=8,nv=8,R=1,r=0.3", ... (see README).
MeshSpec parse_mesh_spec(const std::string& text);

/// Closed polygon with n vertices on a circle in the plane z = center[2]; a
/// 1-dimensional complex whose vertex order follows the circle.
struct PolygonLoop {
  SimplicialComplex complex;
  Chain cycle;
};
PolygonLoop circle_polygon(int n, double radius, Point3 center);
/// Closed polygon through the given points in order.
PolygonLoop polygon_loop(std::vector<Point3> points);
/// Circle of `radius` about `center` in the plane spanned by unit vectors u, v.
std::vector<Point3> circle_points(int n, double radius, Point3 center, Point3 u, Point3 v);

/// 3-chain of all tetrahedra, each signed so that it is positively oriented
/// in R^3; its boundary is the outward-oriented boundary surface.
Chain volume_chain(const SimplicialComplex& K);

// Index sets of the annulus rings, used to build loops on it.
std::vector<std::int32_t> annulus_ring(const Annulus& spec, int layer);
/// Triangles between rings lo and hi, oriented counterclockwise seen from +z,
/// so that boundary(region) = loop(ring hi) - loop(ring lo).
Chain annulus_region(const SimplicialComplex& annulus, const Annulus& spec, int lo, int hi);

// Shell helpers: the 2-chains of the inner/outer spheres and the solid 3-chain,
// oriented so that boundary(solid) = outer - inner.
struct ShellChains {
  Chain inner;
  Chain outer;
  Chain solid;
};
ShellChains shell_chains(const SimplicialComplex& shell, const SphericalShell& spec);

}  // namespace emtopo
