#pragma once

// Data-parallel kernels. Every kernel exists as a plain serial loop (the
// reference) and as an OpenMP version; both evaluate each element with the
// same code and write disjoint outputs, and reductions are maxima, so the two
// agree bit for bit regardless of the schedule.

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "emtopo/grid.hpp"
#include "emtopo/mesh.hpp"

namespace emtopo {

enum class Execution { Serial, Parallel };

Execution default_execution();
void set_default_execution(Execution ex);
int available_threads();

/// Quadrature on a triangle: barycentric nodes with weights summing to 1.
struct TriangleRule {
  std::vector<std::array<double, 3>> bary;
  std::vector<double> weights;
};
TriangleRule centroid_rule();
TriangleRule three_point_rule();
TriangleRule triangle_rule(int order);

/// Gauss-Legendre rule on [0, 1].
struct LineRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
LineRule gauss_legendre(int points);

using VectorFn = std::function<Point3(const Point3&)>;

/// Constants for the lattice stencils.
struct StencilScales {
  double c = 1.0;
  double hbar = 1.0;
  double epsilon0 = 1.0;
  double mu0 = 1.0;
};

namespace kernels {

namespace serial {
#include "emtopo/kernel_list.inc"
}
namespace openmp {
#include "emtopo/kernel_list.inc"
}

// Dispatchers.
void triangle_flux(const SimplicialComplex& K, const TriangleRule& rule, const VectorFn& F, std::span<double> out,
                   Execution ex = default_execution());
void edge_circulation(const SimplicialComplex& K, const LineRule& rule, const VectorFn& F, std::span<double> out,
                      Execution ex = default_execution());
void face_angle_sums(const SimplicialComplex& K, std::span<const double> theta, std::span<double> out,
                     Execution ex = default_execution());
void sample(std::span<const Point3> points, const VectorFn& F, std::span<Point3> out,
            Execution ex = default_execution());
std::array<double, 4> maxwell_residual(const GridSpec& g, const Vec3Samples& E, const Vec3Samples& B,
                                       const StencilScales& s, Execution ex = default_execution());
std::array<double, 2> photon_residual(const GridSpec& g, const Complex3Samples& w, int sign, const StencilScales& s,
                                      Execution ex = default_execution());
void dirac_apply(const GridSpec& g, const Complex4Samples& psi, const Potential4Samples& A, double coupling,
                 const StencilScales& s, Complex4Samples& out, Execution ex = default_execution());
double dirac_residual(const GridSpec& g, const Complex4Samples& psi, const Potential4Samples& A, double coupling,
                      double mass, const StencilScales& s, Execution ex = default_execution());

}  // namespace kernels
}  // namespace emtopo
