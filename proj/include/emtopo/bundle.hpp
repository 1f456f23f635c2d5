#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "emtopo/fields.hpp"
#include "emtopo/forms.hpp"
#include "emtopo/homology.hpp"
#include "emtopo/kernels.hpp"
#include "emtopo/mesh.hpp"

namespace emtopo {

/// Hermitian line bundle with hermitian connection on a complex: one U(1)
/// transition angle per canonically oriented edge (theta of the reversed edge
/// is -theta).
struct EdgeConnection {
  std::shared_ptr<const SimplicialComplex> complex;
  std::vector<double> theta;
};

EdgeConnection zero_connection(std::shared_ptr<const SimplicialComplex> complex);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double x);

/// Tolerances of the bundle module.
inline constexpr double kBranchTolerance = 1e-9;     // distance from an odd multiple of pi
inline constexpr double kChernTolerance = 1e-6;      // distance of a period/2pi from an integer
inline constexpr double kCharacterTolerance = 1e-9;  // holonomy and curvature comparisons
inline constexpr double kFlatTolerance = 1e-9;

/// raw = oriented angle sum around each triangle, wrapped = raw reduced to
/// (-pi, pi], lift = (raw - wrapped) / 2pi.
struct FaceCurvature {
  std::vector<double> raw;
  std::vector<double> wrapped;
  std::vector<std::int64_t> lift;

  double max_abs() const;
};

/// Throws BranchAmbiguity when a raw sum is within 1e-9 of an odd multiple of pi.
FaceCurvature curvature(const EdgeConnection& conn, Execution ex = default_execution());

/// Round(sum over each cycle of the wrapped curvature / 2pi). Throws
/// IntegralityViolation if a pre-rounding value is more than 1e-6 from an integer.
std::vector<std::int64_t> chern_numbers(const EdgeConnection& conn, const std::vector<Chain>& h2_generators);

/// Wrapped angle sum along an edge 1-cycle. Throws NotACycle.
double holonomy(const EdgeConnection& conn, const Chain& loop);

/// theta'_{uv} = theta_{uv} + g_v - g_u.
EdgeConnection gauge_transform(const EdgeConnection& conn, std::span<const double> g);

/// Angles add / negate. tensor throws ComplexMismatch for different complexes.
EdgeConnection tensor(const EdgeConnection& a, const EdgeConnection& b);
EdgeConnection dual(const EdgeConnection& c);

/// Homology generators and integral cohomology generators of degree 1 and 2.
struct TopologyData {
  std::vector<Chain> h1, h2;                // cycles
  std::vector<Chain> cocycles1, cocycles2;  // integer cocycles
  std::vector<int> betti;
  std::vector<std::vector<std::int64_t>> torsion;  // per degree

  static TopologyData compute(const SimplicialComplex& K);
};

struct BundleClass {
  std::vector<std::int64_t> chern;
  std::optional<std::vector<double>> characters;  // holonomies on h1, defined when flat
  bool flat = false;
};

BundleClass classify(const EdgeConnection& conn, const TopologyData& topo);

struct EquivalenceResult {
  bool equivalent = false;
  std::vector<double> witness;  // vertex gauge g with gauge_transform(c1, g) = c2 mod 2pi
  std::string reason;
};

/// True iff wrapped curvatures agree per face and generator holonomies agree
/// mod 2pi (both within 1e-9) and a gauge witness has been built and checked.
EquivalenceResult is_equivalent(const EdgeConnection& c1, const EdgeConnection& c2, const TopologyData& topo);

/// A connection with the given Chern numbers over topo.h2 and holonomies
/// over topo.h1. `curvature_profile` (a real 2-cochain of curvature angles
/// whose periods are 2pi times the targets) fixes the curvature; without it
/// the curvature is the harmonic representative of the class.
/// Throws IntegralityViolation, BranchAmbiguity, DegreeError.
EdgeConnection construct_connection(std::shared_ptr<const SimplicialComplex> complex, const TopologyData& topo,
                                    const std::vector<std::int64_t>& target_chern,
                                    const std::vector<double>& target_characters,
                                    const std::optional<Cochain>& curvature_profile = std::nullopt);

/// Curvature angle per unit magnetic flux, 2pi / (e mu0 c).
double magnetic_coupling(const PhysicalConstants& k);

/// Connection from edge integrals of the field's vector potential, scaled
/// by magnetic_coupling; its curvature is 2pi/e times the magnetic flux form.
EdgeConnection magnetic_connection(std::shared_ptr<const SimplicialComplex> complex, const AnalyticField& field,
                                   int gauss_points = 4, Execution ex = default_execution());

}  // namespace emtopo
