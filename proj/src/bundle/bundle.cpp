#include "emtopo/bundle.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "emtopo/error.hpp"
#include "emtopo/snf.hpp"

namespace emtopo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kWitnessTolerance = 1e-8;

const SimplicialComplex& complex_of(const EdgeConnection& c) {
  if (!c.complex) fail(ErrorCode::ComplexMismatch, "connection without a complex");
  if (c.theta.size() != c.complex->count(1)) fail(ErrorCode::ComplexMismatch, "edge angle count differs from the complex");
  return *c.complex;
}

bool same_complex(const EdgeConnection& a, const EdgeConnection& b) {
  return a.complex == b.complex || (*a.complex == *b.complex);
}

// Coboundary delta_1 : C^1 -> C^2 as a face x edge matrix.
Eigen::SparseMatrix<double> coboundary_1(const SimplicialComplex& K) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(3 * K.count(2));
  for (std::size_t f = 0; f < K.count(2); ++f)
    for (int j = 0; j < 3; ++j) trips.emplace_back(static_cast<int>(f), K.face(2, f, j), (j % 2 == 0) ? 1.0 : -1.0);
  Eigen::SparseMatrix<double> D(static_cast<Eigen::Index>(K.count(2)), static_cast<Eigen::Index>(K.count(1)));
  D.setFromTriplets(trips.begin(), trips.end());
  return D;
}

// theta with delta_1 theta closest to b in the 2-norm.
std::vector<double> least_squares_potential(const SimplicialComplex& K, const std::vector<double>& b) {
  const auto D = coboundary_1(K);
  Eigen::LeastSquaresConjugateGradient<Eigen::SparseMatrix<double>> solver;
  solver.setTolerance(1e-14);
  solver.setMaxIterations(std::max<Eigen::Index>(1000, 20 * D.cols()));
  solver.compute(D);
  const Eigen::Map<const Eigen::VectorXd> rhs(b.data(), static_cast<Eigen::Index>(b.size()));
  const Eigen::VectorXd x = solver.solve(rhs);
  return {x.data(), x.data() + x.size()};
}

double pairing(const Chain& cochain, const Chain& chain) {
  double acc = 0.0;
  for (std::size_t i = 0; i < chain.size(); ++i)
    if (chain.coeffs[i] != 0) acc += static_cast<double>(chain.coeffs[i]) * static_cast<double>(cochain.coeffs[i]);
  return acc;
}

double pairing(std::span<const double> values, const Chain& chain) {
  double acc = 0.0;
  for (std::size_t i = 0; i < chain.size(); ++i)
    if (chain.coeffs[i] != 0) acc += static_cast<double>(chain.coeffs[i]) * values[i];
  return acc;
}

void check_chain(const SimplicialComplex& K, const Chain& c, int degree) {
  if (c.degree != degree || c.size() != K.count(degree))
    fail(ErrorCode::SupportError, "chain is not a " + std::to_string(degree) + "-chain of the complex");
}

}  // namespace

EdgeConnection zero_connection(std::shared_ptr<const SimplicialComplex> complex) {
  const std::size_t n = complex->count(1);
  return {std::move(complex), std::vector<double>(n, 0.0)};
}

double wrap_angle(double x) {
  double r = std::remainder(x, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

double FaceCurvature::max_abs() const {
  double m = 0.0;
  for (double v : wrapped) m = std::max(m, std::abs(v));
  return m;
}

FaceCurvature curvature(const EdgeConnection& conn, Execution ex) {
  const auto& K = complex_of(conn);
  FaceCurvature out;
  out.raw.assign(K.count(2), 0.0);
  kernels::face_angle_sums(K, conn.theta, out.raw, ex);
  out.wrapped.resize(out.raw.size());
  out.lift.resize(out.raw.size());
  for (std::size_t f = 0; f < out.raw.size(); ++f) {
    const double raw = out.raw[f];
    const double w = wrap_angle(raw);
    if (std::abs(std::abs(w) - std::numbers::pi) < kBranchTolerance)
      fail(ErrorCode::BranchAmbiguity, "face " + std::to_string(f) + " curvature is an odd multiple of pi");
    out.wrapped[f] = w;
    out.lift[f] = static_cast<std::int64_t>(std::llround((raw - w) / kTwoPi));
  }
  return out;
}

std::vector<std::int64_t> chern_numbers(const EdgeConnection& conn, const std::vector<Chain>& h2_generators) {
  const auto& K = complex_of(conn);
  const FaceCurvature F = curvature(conn);
  std::vector<std::int64_t> out;
  for (const auto& N : h2_generators) {
    check_chain(K, N, 2);
    const double x = pairing(F.wrapped, N) / kTwoPi;
    const double r = std::round(x);
    if (std::abs(x - r) > kChernTolerance)
      fail(ErrorCode::IntegralityViolation, "curvature period / 2pi = " + std::to_string(x) + " is not an integer");
    out.push_back(static_cast<std::int64_t>(r));
  }
  return out;
}

double holonomy(const EdgeConnection& conn, const Chain& loop) {
  const auto& K = complex_of(conn);
  check_chain(K, loop, 1);
  if (!boundary(K, loop).is_zero()) fail(ErrorCode::NotACycle, "holonomy loop is not closed");
  return wrap_angle(pairing(conn.theta, loop));
}

EdgeConnection gauge_transform(const EdgeConnection& conn, std::span<const double> g) {
  const auto& K = complex_of(conn);
  if (g.size() != K.vertex_count()) fail(ErrorCode::ComplexMismatch, "gauge function needs one value per vertex");
  EdgeConnection out = conn;
  for (std::size_t e = 0; e < K.count(1); ++e) {
    const auto s = K.simplex(1, e);
    out.theta[e] += g[s[1]] - g[s[0]];
  }
  return out;
}

EdgeConnection tensor(const EdgeConnection& a, const EdgeConnection& b) {
  complex_of(a);
  complex_of(b);
  if (!same_complex(a, b)) fail(ErrorCode::ComplexMismatch, "tensor product of bundles on different complexes");
  EdgeConnection out = a;
  for (std::size_t e = 0; e < out.theta.size(); ++e) out.theta[e] += b.theta[e];
  return out;
}

EdgeConnection dual(const EdgeConnection& c) {
  complex_of(c);
  EdgeConnection out = c;
  for (double& t : out.theta) t = -t;
  return out;
}

TopologyData TopologyData::compute(const SimplicialComplex& K) {
  HomologyEngine engine(K);
  TopologyData t;
  for (int k = 0; k <= K.dimension(); ++k) {
    t.betti.push_back(engine.homology(k).betti);
    t.torsion.push_back(engine.homology(k).torsion);
  }
  t.h1 = engine.homology(1).generators;
  t.h2 = engine.homology(2).generators;
  t.cocycles1 = engine.cohomology(1).generators;
  t.cocycles2 = engine.cohomology(2).generators;
  return t;
}

BundleClass classify(const EdgeConnection& conn, const TopologyData& topo) {
  BundleClass out;
  const FaceCurvature F = curvature(conn);
  out.chern = chern_numbers(conn, topo.h2);
  out.flat = F.max_abs() <= kFlatTolerance;
  if (out.flat) {
    std::vector<double> chars;
    for (const auto& g : topo.h1) chars.push_back(holonomy(conn, g));
    out.characters = std::move(chars);
  }
  return out;
}

EquivalenceResult is_equivalent(const EdgeConnection& c1, const EdgeConnection& c2, const TopologyData& topo) {
  const auto& K = complex_of(c1);
  complex_of(c2);
  if (!same_complex(c1, c2)) fail(ErrorCode::ComplexMismatch, "connections live on different complexes");
  EquivalenceResult res;
  const FaceCurvature F1 = curvature(c1), F2 = curvature(c2);
  for (std::size_t f = 0; f < F1.wrapped.size(); ++f) {
    if (std::abs(wrap_angle(F1.wrapped[f] - F2.wrapped[f])) > kCharacterTolerance) {
      res.reason = "curvature differs on face " + std::to_string(f);
      return res;
    }
  }
  for (std::size_t j = 0; j < topo.h1.size(); ++j) {
    if (std::abs(wrap_angle(holonomy(c1, topo.h1[j]) - holonomy(c2, topo.h1[j]))) > kCharacterTolerance) {
      res.reason = "holonomy differs on H1 generator " + std::to_string(j);
      return res;
    }
  }
  // Integrate delta = theta2 - theta1 along a spanning forest.
  const std::size_t nv = K.vertex_count();
  std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> adj(nv);  // (neighbor, edge)
  for (std::size_t e = 0; e < K.count(1); ++e) {
    const auto s = K.simplex(1, e);
    adj[s[0]].emplace_back(s[1], static_cast<std::int32_t>(e));
    adj[s[1]].emplace_back(s[0], static_cast<std::int32_t>(e));
  }
  std::vector<double> g(nv, 0.0);
  std::vector<char> seen(nv, 0);
  for (std::size_t root = 0; root < nv; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    std::deque<std::int32_t> queue{static_cast<std::int32_t>(root)};
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      for (auto [v, e] : adj[u]) {
        if (seen[v]) continue;
        seen[v] = 1;
        const double delta = c2.theta[e] - c1.theta[e];  // along canonical a < b
        g[v] = (u < v) ? g[u] + delta : g[u] - delta;
        queue.push_back(v);
      }
    }
  }
  const EdgeConnection moved = gauge_transform(c1, g);
  for (std::size_t e = 0; e < K.count(1); ++e) {
    if (std::abs(wrap_angle(moved.theta[e] - c2.theta[e])) > kWitnessTolerance) {
      res.reason = "no gauge witness (torsion holonomy differs); edge " + std::to_string(e) + " fails";
      return res;
    }
  }
  res.equivalent = true;
  res.witness = std::move(g);
  return res;
}

EdgeConnection construct_connection(std::shared_ptr<const SimplicialComplex> complex, const TopologyData& topo,
                                    const std::vector<std::int64_t>& target_chern,
                                    const std::vector<double>& target_characters,
                                    const std::optional<Cochain>& curvature_profile) {
  const SimplicialComplex& K = *complex;
  if (K.dimension() < 1) fail(ErrorCode::DegreeError, "connections need edges");
  if (target_chern.size() != topo.h2.size())
    fail(ErrorCode::DegreeError, "expected " + std::to_string(topo.h2.size()) + " Chern numbers");
  if (!target_characters.empty() && target_characters.size() != topo.h1.size())
    fail(ErrorCode::DegreeError, "expected " + std::to_string(topo.h1.size()) + " characters");
  if (topo.cocycles2.size() != topo.h2.size())
    fail(ErrorCode::DegreeError, "H2 and H^2 generator counts differ");

  // Integer 2-cocycle n with n(N_j) = k_j.
  const std::size_t m = topo.h2.size();
  std::vector<std::int64_t> n(K.count(2), 0);
  if (m > 0) {
    BigMatrix P(m, m);
    std::vector<BigInt> rhs(m);
    for (std::size_t j = 0; j < m; ++j) {
      rhs[j] = target_chern[j];
      for (std::size_t i = 0; i < m; ++i) P(j, i) = static_cast<std::int64_t>(pairing(topo.cocycles2[i], topo.h2[j]));
    }
    const auto c = solve_integer(P, rhs);
    if (!c) fail(ErrorCode::IntegralityViolation, "Chern numbers not realised by an integral class");
    for (std::size_t i = 0; i < m; ++i) {
      const auto ci = static_cast<std::int64_t>((*c)[i]);
      for (std::size_t f = 0; f < n.size(); ++f) n[f] += ci * topo.cocycles2[i].coeffs[f];
    }
  }

  std::vector<double> F(K.count(2), 0.0);
  std::vector<double> theta;
  if (!curvature_profile) {
    std::vector<double> b(F.size());
    for (std::size_t f = 0; f < b.size(); ++f) b[f] = kTwoPi * static_cast<double>(n[f]);
    const auto tau = least_squares_potential(K, b);
    Cochain t(1, tau.size());
    t.values = tau;
    const Cochain dt = coboundary(K, t);
    for (std::size_t f = 0; f < F.size(); ++f) F[f] = b[f] - dt.values[f];
    theta.resize(tau.size());
    for (std::size_t e = 0; e < tau.size(); ++e) theta[e] = -tau[e];
  } else {
    const Cochain& prof = *curvature_profile;
    if (prof.degree != 2 || prof.size() != K.count(2))
      fail(ErrorCode::DegreeError, "curvature profile must be a 2-cochain of the complex");
    F = prof.values;
    double scale = 1.0;
    for (double v : F) scale = std::max(scale, std::abs(v));
    if (K.dimension() >= 3) {
      const Cochain dF = coboundary(K, prof);
      for (double v : dF.values)
        if (std::abs(v) > 1e-8 * scale) fail(ErrorCode::IntegralityViolation, "curvature profile is not closed");
    }
    for (std::size_t j = 0; j < m; ++j) {
      const double x = pairing(F, topo.h2[j]) / kTwoPi;
      if (std::abs(x - static_cast<double>(target_chern[j])) > kChernTolerance)
        fail(ErrorCode::IntegralityViolation, "profile period / 2pi = " + std::to_string(x) + " differs from the target");
    }
    std::vector<double> b(F.size());
    for (std::size_t f = 0; f < b.size(); ++f) b[f] = F[f] - kTwoPi * static_cast<double>(n[f]);
    theta = least_squares_potential(K, b);
    Cochain t(1, theta.size());
    t.values = theta;
    const Cochain dt = coboundary(K, t);
    for (std::size_t f = 0; f < b.size(); ++f)
      if (std::abs(dt.values[f] - b[f]) > 1e-8 * scale)
        fail(ErrorCode::IntegralityViolation, "curvature profile is not the curvature of a connection");
  }
  for (std::size_t f = 0; f < F.size(); ++f)
    if (std::abs(F[f]) >= std::numbers::pi - kBranchTolerance)
      fail(ErrorCode::BranchAmbiguity, "per-face curvature reaches pi; refine the mesh");

  EdgeConnection conn{complex, std::move(theta)};
  if (!target_characters.empty()) {
    const std::size_t r = topo.h1.size();
    if (topo.cocycles1.size() != r) fail(ErrorCode::DegreeError, "H1 and H^1 generator counts differ");
    Eigen::MatrixXd Q(r, r);
    Eigen::VectorXd d(r);
    for (std::size_t j = 0; j < r; ++j) {
      d[j] = wrap_angle(target_characters[j] - holonomy(conn, topo.h1[j]));
      for (std::size_t i = 0; i < r; ++i) Q(j, i) = pairing(topo.cocycles1[i], topo.h1[j]);
    }
    const Eigen::VectorXd c = Q.fullPivLu().solve(d);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t e = 0; e < conn.theta.size(); ++e)
        if (topo.cocycles1[i].coeffs[e] != 0) conn.theta[e] += c[i] * static_cast<double>(topo.cocycles1[i].coeffs[e]);
  }
  curvature(conn);  // surfaces BranchAmbiguity
  return conn;
}

double magnetic_coupling(const PhysicalConstants& k) { return kTwoPi / (k.e * k.mu0 * k.c); }

EdgeConnection magnetic_connection(std::shared_ptr<const SimplicialComplex> complex, const AnalyticField& field,
                                   int gauss_points, Execution ex) {
  const SimplicialComplex& K = *complex;
  const LineRule rule = gauss_legendre(gauss_points);
  for (std::size_t e = 0; e < K.count(1); ++e) {
    const auto s = K.simplex(1, e);
    for (double u : rule.nodes) {
      Point3 x;
      for (int i = 0; i < 3; ++i) x[i] = K.vertex(s[0])[i] + u * (K.vertex(s[1])[i] - K.vertex(s[0])[i]);
      if (field.distance_to_source(x) < kSingularDistance)
        fail(ErrorCode::SingularSource, "edge quadrature node on the field's source");
    }
  }
  const Cochain a = line_integrals(K, [&field](const Point3& x) { return field.vector_potential(x, 0.0); },
                                   gauss_points, ex);
  const double kappa = magnetic_coupling(field.constants);
  EdgeConnection conn{std::move(complex), a.values};
  for (double& t : conn.theta) t *= kappa;
  return conn;
}

}  // namespace emtopo
