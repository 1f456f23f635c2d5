#pragma once

#include <array>
#include <optional>
#include <vector>

#include "emtopo/constants.hpp"
#include "emtopo/fields.hpp"
#include "emtopo/grid.hpp"
#include "emtopo/kernels.hpp"

namespace emtopo {

enum class Polarity { Plus, Minus };

/// Photon wave function sampled on a lattice: (omega_1, omega_2, omega_3) per node.
struct PhotonSection {
  GridSpec grid;
  Complex3Samples omega;
  Polarity polarity = Polarity::Plus;
};

/// omega^+ = B/(mu0 c) - i eps0 E at every node; the minus polarity is the
/// complex conjugate. Throws SingularSource, StencilError.
PhotonSection photon_from_EB(const AnalyticField& field, const GridSpec& grid, Polarity polarity = Polarity::Plus,
                             Execution ex = default_execution());

PhotonSection constant_photon_section(const GridSpec& grid, const std::array<Complex, 3>& value,
                                      Polarity polarity = Polarity::Plus);

/// Max-norms over interior nodes of i hbar (d_0 omega -/+ i curl omega)
/// (evolution) and i hbar div omega (constraint).
struct PhotonResidual {
  double evolution = 0.0;
  double constraint = 0.0;
};
PhotonResidual photon_residual(const PhotonSection& section, const PhysicalConstants& k,
                               Execution ex = default_execution());

/// Four-spinor sampled on a lattice.
struct SpinorSection {
  GridSpec grid;
  Complex4Samples psi;
  double mass = 0.0;  // kg
};

/// Background for the covariant derivative d + i coupling A. A is derived
/// from the field's potentials so that dA = (1/e) star(omega):
/// A_0 = eps0 phi / e, A_j = a_j / (e mu0 c). No field means A = 0.
struct DiracBackground {
  std::optional<AnalyticField> field;
  double coupling = 1.0;
};

/// A_mu at every node (mu = 0..3).
Potential4Samples potential_samples(const DiracBackground& bg, const GridSpec& grid, const PhysicalConstants& k);

/// Max over interior nodes of the centered-difference curl of A minus the
/// field's (1/e) star(omega), across its six components.
double potential_mismatch(const AnalyticField& field, const GridSpec& grid);

/// Applies i hbar (-x + sum_j y_j) with the covariant derivatives, on interior nodes.
SpinorSection dirac_apply(const SpinorSection& spinor, const DiracBackground& bg, const PhysicalConstants& k,
                          Execution ex = default_execution());

/// Max-norm over interior nodes of (D - m c) psi.
double dirac_residual(const SpinorSection& spinor, const DiracBackground& bg, const PhysicalConstants& k,
                      Execution ex = default_execution());

/// Energy matrix of the plane-wave symbol: D u e^{i(p.x - E t)/hbar} = m c u e^{...}
/// iff E u = M u.
std::array<std::array<Complex, 4>, 4> dirac_energy_matrix(const Point3& p, double mass, const PhysicalConstants& k);

struct DiracMode {
  double energy = 0.0;
  std::array<Complex, 4> spinor{};  // unit norm
};

/// The four eigenmodes of the symbol, sorted by energy.
std::vector<DiracMode> dirac_modes(const Point3& p, double mass, const PhysicalConstants& k);

/// Energies at which the symbol minus m c is singular, sorted ascending.
std::vector<double> dirac_dispersion(const Point3& p, double mass, const PhysicalConstants& k);

/// Plane wave u exp(i (p.x - E t) / hbar) with u a symbol eigenvector of
/// positive (or negative) energy.
SpinorSection plane_wave_spinor(const GridSpec& grid, const Point3& p, double mass, const PhysicalConstants& k,
                                bool positive_energy = true);

}  // namespace emtopo
