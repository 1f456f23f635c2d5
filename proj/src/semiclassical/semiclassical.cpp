#include "emtopo/semiclassical.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "emtopo/error.hpp"
#include "emtopo/forms.hpp"

namespace emtopo {

namespace {

StencilScales scales(const PhysicalConstants& k) { return {k.c, k.hbar, k.epsilon0, k.mu0}; }

std::vector<Point3> grid_points(const GridSpec& g) {
  std::vector<Point3> pts;
  pts.reserve(g.spatial_nodes());
  for (int i = 0; i < g.space.n[0]; ++i)
    for (int j = 0; j < g.space.n[1]; ++j)
      for (int k = 0; k < g.space.n[2]; ++k) pts.push_back(g.point(i, j, k));
  return pts;
}

void check_samples(const GridSpec& g, std::size_t n) {
  g.validate();
  if (n != g.nodes()) fail(ErrorCode::StencilError, "sample count differs from the grid's node count");
}

using Mat4 = Eigen::Matrix4cd;

Mat4 energy_matrix(const Point3& p, double mass, const PhysicalConstants& k) {
  const Complex I(0, 1);
  Mat4 Y1 = Mat4::Zero(), Y2 = Mat4::Zero(), Y3 = Mat4::Zero();
  // (Y1 u) = (u4, u3, -u2, -u1)
  Y1(0, 3) = 1;
  Y1(1, 2) = 1;
  Y1(2, 1) = -1;
  Y1(3, 0) = -1;
  // (Y2 u) = (-i u4, i u3, i u2, -i u1)
  Y2(0, 3) = -I;
  Y2(1, 2) = I;
  Y2(2, 1) = I;
  Y2(3, 0) = -I;
  // (Y3 u) = (u3, -u4, -u1, u2)
  Y3(0, 2) = 1;
  Y3(1, 3) = -1;
  Y3(2, 0) = -1;
  Y3(3, 1) = 1;
  Mat4 G0 = Mat4::Identity();
  G0(2, 2) = -1;
  G0(3, 3) = -1;
  const Mat4 S = mass * k.c * Mat4::Identity() + p[0] * Y1 + p[1] * Y2 + p[2] * Y3;
  return -k.c * G0 * S;
}

}  // namespace

PhotonSection photon_from_EB(const AnalyticField& field, const GridSpec& grid, Polarity polarity, Execution ex) {
  Vec3Samples E, B;
  sample_fields(field, grid, E, B, ex);
  const auto& k = field.constants;
  const double sb = 1.0 / (k.mu0 * k.c);
  const double sign = polarity == Polarity::Plus ? -1.0 : 1.0;
  PhotonSection out{grid, Complex3Samples(E.size()), polarity};
  for (std::size_t n = 0; n < E.size(); ++n)
    for (int c = 0; c < 3; ++c) out.omega[n][c] = Complex(sb * B[n][c], sign * k.epsilon0 * E[n][c]);
  return out;
}

PhotonSection constant_photon_section(const GridSpec& grid, const std::array<Complex, 3>& value, Polarity polarity) {
  grid.validate();
  return {grid, Complex3Samples(grid.nodes(), value), polarity};
}

PhotonResidual photon_residual(const PhotonSection& section, const PhysicalConstants& k, Execution ex) {
  check_samples(section.grid, section.omega.size());
  const int sign = section.polarity == Polarity::Plus ? 1 : -1;
  const auto r = kernels::photon_residual(section.grid, section.omega, sign, scales(k), ex);
  return {r[0], r[1]};
}

Potential4Samples potential_samples(const DiracBackground& bg, const GridSpec& grid, const PhysicalConstants& k) {
  grid.validate();
  Potential4Samples A(grid.nodes(), {0, 0, 0, 0});
  if (!bg.field) return A;
  const AnalyticField& f = *bg.field;
  const auto pts = grid_points(grid);
  for (const auto& x : pts)
    if (f.distance_to_source(x) < kSingularDistance) fail(ErrorCode::SingularSource, "grid node on the source");
  const double s0 = k.epsilon0 / k.e;
  const double sa = 1.0 / (k.e * k.mu0 * k.c);
  const std::size_t ns = pts.size();
  for (int it = 0; it < grid.nt; ++it) {
    const double t = grid.time(it);
    for (std::size_t n = 0; n < ns; ++n) {
      const Point3 a = f.vector_potential(pts[n], t);
      A[it * ns + n] = {s0 * f.scalar_potential(pts[n], t), sa * a[0], sa * a[1], sa * a[2]};
    }
  }
  return A;
}

double potential_mismatch(const AnalyticField& field, const GridSpec& grid) {
  const auto& k = field.constants;
  const Potential4Samples A = potential_samples(DiracBackground{field, 1.0}, grid, k);
  Vec3Samples E, B;
  sample_fields(field, grid, E, B, Execution::Serial);
  const auto& n = grid.space.n;
  const double h = grid.space.h;
  double worst = 0.0;
  for (int it = 1; it < grid.nt - 1; ++it)
    for (int i = 1; i < n[0] - 1; ++i)
      for (int j = 1; j < n[1] - 1; ++j)
        for (int l = 1; l < n[2] - 1; ++l) {
          const int p[4] = {it, i, j, l};
          // d_mu A_nu by centered differences, d_0 = -(1/c) d_t
          auto d = [&](int mu, int nu) {
            int q[4] = {p[0], p[1], p[2], p[3]};
            int r[4] = {p[0], p[1], p[2], p[3]};
            ++q[mu];
            --r[mu];
            const double diff = A[grid.index(q[0], q[1], q[2], q[3])][nu] - A[grid.index(r[0], r[1], r[2], r[3])][nu];
            return mu == 0 ? -diff / (2 * grid.dt * k.c) : diff / (2 * h);
          };
          const std::size_t at = grid.index(it, i, j, l);
          for (int c = 0; c < 3; ++c) {
            const double electric = d(0, c + 1) - d(c + 1, 0) - k.epsilon0 * E[at][c] / k.e;
            const int a = (c + 1) % 3 + 1, b = (c + 2) % 3 + 1;
            const double magnetic = d(a, b) - d(b, a) - B[at][c] / (k.e * k.mu0 * k.c);
            worst = std::max({worst, std::abs(electric), std::abs(magnetic)});
          }
        }
  return worst;
}

SpinorSection dirac_apply(const SpinorSection& spinor, const DiracBackground& bg, const PhysicalConstants& k,
                          Execution ex) {
  check_samples(spinor.grid, spinor.psi.size());
  const auto A = potential_samples(bg, spinor.grid, k);
  SpinorSection out{spinor.grid, {}, spinor.mass};
  kernels::dirac_apply(spinor.grid, spinor.psi, A, bg.coupling, scales(k), out.psi, ex);
  return out;
}

double dirac_residual(const SpinorSection& spinor, const DiracBackground& bg, const PhysicalConstants& k,
                      Execution ex) {
  check_samples(spinor.grid, spinor.psi.size());
  const auto A = potential_samples(bg, spinor.grid, k);
  return kernels::dirac_residual(spinor.grid, spinor.psi, A, bg.coupling, spinor.mass, scales(k), ex);
}

std::array<std::array<Complex, 4>, 4> dirac_energy_matrix(const Point3& p, double mass, const PhysicalConstants& k) {
  const Mat4 M = energy_matrix(p, mass, k);
  std::array<std::array<Complex, 4>, 4> out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[r][c] = M(r, c);
  return out;
}

std::vector<DiracMode> dirac_modes(const Point3& p, double mass, const PhysicalConstants& k) {
  Eigen::ComplexEigenSolver<Mat4> solver(energy_matrix(p, mass, k));
  std::vector<DiracMode> modes(4);
  for (int i = 0; i < 4; ++i) {
    modes[i].energy = solver.eigenvalues()[i].real();
    const Eigen::Vector4cd v = solver.eigenvectors().col(i).normalized();
    for (int c = 0; c < 4; ++c) modes[i].spinor[c] = v[c];
  }
  std::stable_sort(modes.begin(), modes.end(), [](const DiracMode& a, const DiracMode& b) { return a.energy < b.energy; });
  return modes;
}

std::vector<double> dirac_dispersion(const Point3& p, double mass, const PhysicalConstants& k) {
  std::vector<double> out;
  for (const auto& m : dirac_modes(p, mass, k)) out.push_back(m.energy);
  return out;
}

SpinorSection plane_wave_spinor(const GridSpec& grid, const Point3& p, double mass, const PhysicalConstants& k,
                                bool positive_energy) {
  grid.validate();
  const auto modes = dirac_modes(p, mass, k);
  const DiracMode& m = positive_energy ? modes.back() : modes.front();
  SpinorSection out{grid, Complex4Samples(grid.nodes()), mass};
  for (int it = 0; it < grid.nt; ++it)
    for (int i = 0; i < grid.space.n[0]; ++i)
      for (int j = 0; j < grid.space.n[1]; ++j)
        for (int l = 0; l < grid.space.n[2]; ++l) {
          const Point3 x = grid.point(i, j, l);
          const double phase = (p[0] * x[0] + p[1] * x[1] + p[2] * x[2] - m.energy * grid.time(it)) / k.hbar;
          const Complex w = std::polar(1.0, phase);
          auto& v = out.psi[grid.index(it, i, j, l)];
          for (int c = 0; c < 4; ++c) v[c] = m.spinor[c] * w;
        }
  return out;
}

}  // namespace emtopo
