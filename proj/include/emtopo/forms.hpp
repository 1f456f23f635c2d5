#pragma once

#include <array>
#include <vector>

#include "emtopo/fields.hpp"
#include "emtopo/grid.hpp"
#include "emtopo/kernels.hpp"
#include "emtopo/mesh.hpp"

namespace emtopo {

/// Real k-cochain: one value per canonically oriented k-simplex. Reversing a
/// simplex's orientation negates its value.
struct Cochain {
  int degree = 0;
  std::vector<double> values;

  Cochain() = default;
  Cochain(int deg, std::size_t n, double v = 0.0) : degree(deg), values(n, v) {}
  std::size_t size() const { return values.size(); }
};

/// (dc)(s) = sum over faces of s of the signed values of c. Throws DegreeError.
Cochain coboundary(const SimplicialComplex& K, const Cochain& c);

/// Which spatial 2-form a field is turned into. Charge is the spatial part of
/// the electromagnetic 2-form, eps0 E . dA (coulombs); Magnetic is the flux
/// B . dA / (mu0 c), the spatial part of its dual.
enum class FormComponent { Charge, Magnetic };

/// Minimum distance from a quadrature node to a field's singular set.
inline constexpr double kSingularDistance = 1e-9;

/// Per-triangle flux of a field. quad_order 1 is the centroid rule, 2 the
/// symmetric 3-point rule, 0 is exact for point charges (solid angles) and
/// uniform fields. Throws SingularSource, DegreeError.
Cochain discretize_2form(const AnalyticField& field, const SimplicialComplex& K, int quad_order,
                         FormComponent component = FormComponent::Charge, double t = 0.0,
                         Execution ex = default_execution());

/// sum_s N(s) omega(s). Throws SupportError when N does not live on the
/// cochain's complex or degrees differ.
double period(const Cochain& omega, const Chain& N);

/// Line integral of a vector field along every canonically oriented edge.
Cochain line_integrals(const SimplicialComplex& K, const VectorFn& F, int gauss_points = 2,
                       Execution ex = default_execution());

/// Current through an amperian loop, c times the loop integral of the
/// contraction of the 2-form with the unit future-directed frame vector,
/// i.e. (1/mu0) times the loop integral of B. Gauss rule with `gauss_points`
/// points per edge. Throws NotACycle, SingularSource.
double ampere_current(const AnalyticField& field, const Chain& loop, const SimplicialComplex& K,
                      int gauss_points = 2, double t = 0.0, Execution ex = default_execution());

/// Max-norms of the four source-free Maxwell residuals over interior nodes,
/// in the order div eps0 E, Ampere-Maxwell, div B, Faraday.
struct MaxwellResidual {
  std::array<double, 4> norms{};
};
MaxwellResidual maxwell_residual(const AnalyticField& field, const GridSpec& grid,
                                 Execution ex = default_execution());

/// Samples E and B at every grid node. Throws SingularSource.
void sample_fields(const AnalyticField& field, const GridSpec& grid, Vec3Samples& E, Vec3Samples& B,
                   Execution ex = default_execution());

/// Least-squares slope of log(residual) against log(h).
double convergence_order(const std::vector<double>& h, const std::vector<double>& residual);

/// Grids whose interior nodes are n, 2n - 1, 4n - 3, ... per axis on one
/// fixed cube (plus one ghost layer each side, so every level's norms cover
/// the same region and coarse nodes nest in fine ones); time step
/// dt = courant * h / c, five time nodes.
std::vector<GridSpec> refinement_family(const Point3& center, double half_width, int coarse_nodes, int levels,
                                        double courant, double c, double t_center = 0.0);

}  // namespace emtopo
