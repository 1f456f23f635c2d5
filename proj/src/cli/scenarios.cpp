#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "cli/common.hpp"
#include "emtopo/error.hpp"
#include "emtopo/forms.hpp"
#include "emtopo/mesh_generators.hpp"
#include "emtopo/semiclassical.hpp"
#include "emtopo/vec3.hpp"

namespace emtopo::cli {

namespace {

using namespace vec;
using Json = io::Json;
constexpr double kPi = std::numbers::pi;

std::vector<std::int64_t> betti_vector(const HomologyEngine& eng, int dim) {
  std::vector<std::int64_t> b;
  for (int k = 0; k <= dim; ++k) b.push_back(eng.homology(k).betti);
  return b;
}

// Orders 2 +- 0.2 unless the residual is already at rounding level.
void order_check(Report& r, const std::string& name, const std::vector<double>& h, const std::vector<double>& res,
                 double scale) {
  const double worst = *std::max_element(res.begin(), res.end());
  if (worst <= 1e-12 * scale) {
    r.at_most(name + ".residual", worst, 1e-12 * scale);
    return;
  }
  r.absolute(name + ".order", convergence_order(h, res), 2.0, 0.2);
}

bool converges(const std::vector<double>& h, const std::vector<double>& res, double scale) {
  const double worst = *std::max_element(res.begin(), res.end());
  if (worst <= 1e-12 * scale) return true;
  return std::abs(convergence_order(h, res) - 2.0) <= 0.2;
}

Json sweep_table(const std::vector<double>& h, const std::vector<std::string>& names,
                 const std::vector<std::vector<double>>& series) {
  Json t;
  t["h"] = h;
  for (std::size_t i = 0; i < names.size(); ++i) t[names[i]] = series[i];
  return t;
}

// Expected current through a loop about `center` with normal n from a straight wire.
double linked_current(const StraightWire& w, const Point3& center, const Point3& n, double radius_inscribed) {
  const double dn = dot(w.direction, n);
  if (std::abs(dn) < 1e-12) return 0.0;
  const double s = dot(sub(center, w.point), n) / dn;
  const Point3 hit = axpy(w.point, s, w.direction);
  if (norm(sub(hit, center)) >= radius_inscribed) return 0.0;
  return dn > 0 ? w.current : -w.current;
}

struct LoopSpec {
  Point3 center;
  Point3 u, v;  // normal u x v
  double radius;
};

double loop_current(const AnalyticField& f, const LoopSpec& s, int segments, const Context& ctx) {
  auto loop = polygon_loop(circle_points(segments, s.radius, s.center, s.u, s.v));
  return ampere_current(f, loop.cycle, loop.complex, 2, 0.0, ctx.ex);
}

Report point_charge(const Context& ctx, const ScenarioOptions& opt) {
  Report r("scenario point-charge");
  const int k = opt.k.value_or(1);
  const int level = opt.level.value_or(4);
  const double e = ctx.k.e;
  auto K = std::make_shared<const SimplicialComplex>(generate_mesh(Icosphere{level, 1.0, {0, 0, 0}}));
  r["mesh"] = mesh_stats(*K);
  r["mesh"]["spec"] = "icosphere:level=" + std::to_string(level);
  HomologyEngine eng(*K);
  r["homology"] = betti_summary(eng, 2);
  r.exact("betti", betti_vector(eng, 2), {1, 0, 1});

  TopologyData topo = TopologyData::compute(*K);
  orient_h2(*K, topo);
  const EdgeConnection conn = construct_connection(K, topo, {k}, {});
  const BundleClass cls = classify(conn, topo);
  r["bundle"] = io::to_json(cls);
  r.exact("chern", cls.chern, {k});
  const double periods = curvature_period(curvature(conn, ctx.ex), topo.h2[0]);
  r["charge"] = {{"Q", e * periods}, {"Q_over_e", periods}, {"k", k}};
  r.absolute("charge_over_e", periods, static_cast<double>(k), 1e-9);

  const AnalyticField field = make_field(Coulomb{k * e, {0, 0, 0}}, ctx.k);
  const Cochain omega = discretize_2form(field, *K, 2, FormComponent::Charge, 0.0, ctx.ex);
  const double flux = period(omega, topo.h2[0]);
  r["gauss"] = {{"field", field.describe()}, {"quad_order", 2}, {"flux", flux}};
  if (k != 0)
    r.relative("gauss_flux", flux, k * e, 1e-4);
  else
    r.absolute("gauss_flux", flux, 0.0, 1e-9 * e);

  const Cochain exact = discretize_2form(field, *K, 0, FormComponent::Charge, 0.0, ctx.ex);
  Cochain F(2, exact.size());
  for (std::size_t i = 0; i < F.size(); ++i) F.values[i] = 2 * kPi * exact.values[i] / e;
  const EdgeConnection pc = construct_connection(K, topo, {k}, {}, F);
  r.exact("profile_chern", chern_numbers(pc, topo.h2), {k});

  const SphericalShell ss{2, 2, 0.5, 1.0};
  const SimplicialComplex S = generate_mesh(ss);
  const ShellChains ch = shell_chains(S, ss);
  r.truth("shell_boundary", boundary(S, ch.solid) == ch.outer - ch.inner, "boundary(solid) = outer - inner");
  const Cochain w = discretize_2form(field, S, 0, FormComponent::Charge, 0.0, ctx.ex);
  const double pin = period(w, ch.inner), pout = period(w, ch.outer);
  r["homologous_surfaces"] = {{"inner", pin}, {"outer", pout}};
  if (k != 0)
    r.relative("homologous_surfaces", pin, pout, 1e-10);
  else
    r.absolute("homologous_surfaces", pin, pout, 1e-12 * e);
  r.note("curvature periods are 2 pi k; the reported charge is Q = e k");
  return r;
}

Report n_charges(const Context& ctx, const ScenarioOptions& opt) {
  Report r("scenario n-charges");
  const auto ks = parse_int_list(opt.charges.value_or("1,2"));
  const std::size_t n = ks.size();
  if (n < 1 || n > 8) fail(ErrorCode::ParseError, "n-charges takes 1 to 8 charges");
  const double e = ctx.k.e;
  std::int64_t total = 0;
  for (auto x : ks) total += x;
  r["charges"] = ks;

  // Enclosing sphere around charges on the x axis.
  const int level = opt.level.value_or(4);
  auto S = std::make_shared<const SimplicialComplex>(generate_mesh(Icosphere{level, 1.0, {0, 0, 0}}));
  TopologyData ts = TopologyData::compute(*S);
  orient_h2(*S, ts);
  PointCharges line;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = n == 1 ? 0.0 : -0.3 + 0.6 * static_cast<double>(i) / static_cast<double>(n - 1);
    line.charges.push_back({ks[i] * e, {x, 0, 0}});
  }
  const AnalyticField fline = make_field(line, ctx.k);
  const double flux = period(discretize_2form(fline, *S, 2, FormComponent::Charge, 0.0, ctx.ex), ts.h2[0]);
  r["enclosing"] = {{"mesh", "icosphere:level=" + std::to_string(level)}, {"flux", flux}};
  if (total != 0)
    r.relative("enclosing_flux", flux, total * e, 1e-4);
  else
    r.absolute("enclosing_flux", flux, 0.0, 1e-9 * e);

  EdgeConnection prod = zero_connection(S);
  for (auto x : ks) prod = tensor(prod, construct_connection(S, ts, {x}, {}));
  r.exact("tensor_chern", classify(prod, ts).chern, {total});
  r.exact("dual_chern", classify(dual(prod), ts).chern, {-total});

  // Complement of n balls: H2 = Z^n.
  const int res = opt.resolution.value_or(10);
  BallMinusBall spec{res, 1.0, 0.15, {}};
  for (std::size_t i = 0; i < n; ++i)
    spec.centers.push_back({(i & 1) ? 0.5 : -0.5, (i & 2) ? 0.5 : -0.5, (i & 4) ? 0.5 : -0.5});
  auto K = std::make_shared<const SimplicialComplex>(generate_mesh(spec));
  r["mesh"] = mesh_stats(*K);
  HomologyEngine eng(*K);
  r["homology"] = betti_summary(eng, 3);
  r.exact("betti2", eng.homology(2).betti, static_cast<std::int64_t>(n));

  // Per-hole spheres from the boundary of the solid, oriented away from each charge.
  const Chain bd = boundary(*K, volume_chain(*K));
  std::vector<Chain> holes(n, Chain(2, K->count(2)));
  Chain outer(2, K->count(2));
  for (std::size_t f = 0; f < bd.size(); ++f) {
    if (bd.coeffs[f] == 0) continue;
    const auto t = K->simplex(2, f);
    Point3 c{0, 0, 0};
    for (auto v : t) c = axpy(c, 1.0 / 3.0, K->vertex(v));
    if (std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2])}) > spec.half_width - 1e-9) {
      outer.coeffs[f] = bd.coeffs[f];
      continue;
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (norm(sub(c, spec.centers[i])) < norm(sub(c, spec.centers[best]))) best = i;
    holes[best].coeffs[f] = -bd.coeffs[f];
  }
  bool closed = boundary(*K, outer).is_zero();
  for (const auto& h : holes) closed = closed && boundary(*K, h).is_zero();
  r.truth("hole_cycles", closed, "per-hole and outer surfaces are cycles");

  PointCharges holes_field;
  for (std::size_t i = 0; i < n; ++i) holes_field.charges.push_back({ks[i] * e, spec.centers[i]});
  const AnalyticField fh = make_field(holes_field, ctx.k);
  const Cochain omega = discretize_2form(fh, *K, 0, FormComponent::Charge, 0.0, ctx.ex);
  Json per_hole = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const double p = period(omega, holes[i]);
    per_hole.push_back(p);
    if (ks[i] != 0)
      r.relative("hole_flux[" + std::to_string(i) + "]", p, ks[i] * e, 1e-10);
    else
      r.absolute("hole_flux[" + std::to_string(i) + "]", p, 0.0, 1e-12 * e);
  }
  r["hole_flux"] = per_hole;
  const double pout = period(omega, outer);
  if (total != 0)
    r.relative("outer_flux", pout, total * e, 1e-10);
  else
    r.absolute("outer_flux", pout, 0.0, 1e-12 * e);

  TopologyData topo = TopologyData::compute(*K);
  std::vector<std::int64_t> targets;
  for (const auto& g : topo.h2) targets.push_back(std::llround(period(omega, g) / e));
  Cochain F(2, omega.size());
  for (std::size_t i = 0; i < F.size(); ++i) F.values[i] = 2 * kPi * omega.values[i] / e;
  const EdgeConnection conn = construct_connection(K, topo, targets, {}, F);
  r.exact("chern", classify(conn, topo).chern, targets);
  const FaceCurvature curv = curvature(conn, ctx.ex);
  std::vector<std::int64_t> per_hole_k;
  for (const auto& h : holes) per_hole_k.push_back(std::llround(curvature_period(curv, h)));
  r["hole_chern"] = per_hole_k;
  r.exact("hole_chern", per_hole_k, ks);
  r.note("H2 generators of the punctured box are combinations of the hole spheres; chern numbers are reported in the engine's basis and per hole");
  return r;
}

Report open_wire(const Context& ctx, const ScenarioOptions& opt) {
  Report r("scenario open-wire");
  const double I = opt.current.value_or(1.5);
  const int res = opt.resolution.value_or(10);
  const BoxMinusLine spec{res, 1.0, 0.15};
  auto K = std::make_shared<const SimplicialComplex>(generate_mesh(spec));
  r["mesh"] = mesh_stats(*K);
  HomologyEngine eng(*K);
  r["homology"] = betti_summary(eng, 3);
  r.exact("betti1", eng.homology(1).betti, 1);
  r.exact("betti2", eng.homology(2).betti, 0);

  const StraightWire wire{I, {0, 0, 0}, {0, 0, 1}};
  const AnalyticField f = make_field(wire, ctx.k);
  const int segments = 256;
  const LoopSpec around{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, 0.5};
  const LoopSpec away{{1.0, 0, 0}, {1, 0, 0}, {0, 1, 0}, 0.5};
  const LoopSpec shifted{{0.1, 0.05, 0.3}, {1, 0, 0}, {0, 1, 0}, 0.8};
  const double cin = std::cos(kPi / segments);
  const double i1 = loop_current(f, around, segments, ctx);
  const double i0 = loop_current(f, away, segments, ctx);
  const double i2 = loop_current(f, shifted, segments, ctx);
  r["ampere"] = {{"encircling", i1}, {"outside", i0}, {"shifted", i2}, {"segments", segments}};
  r.relative("ampere_current", i1, linked_current(wire, around.center, {0, 0, 1}, around.radius * cin), 1e-6);
  r.absolute("ampere_outside", i0, linked_current(wire, away.center, {0, 0, 1}, away.radius * cin), 1e-9);
  r.relative("ampere_homologous", i2, i1, 1e-8);

  // Bundle part; SI flux per face exceeds the branch, so it runs in natural units there.
  PhysicalConstants kb = ctx.k;
  if (ctx.k.mode == Units::SI) {
    kb = PhysicalConstants::natural();
    r.note("SI flux per face is many flux quanta; the connection is evaluated in natural units");
  }
  const AnalyticField fb = make_field(wire, kb);
  const EdgeConnection conn = magnetic_connection(K, fb, 4, ctx.ex);
  const TopologyData topo = TopologyData::compute(*K);
  const BundleClass cls = classify(conn, topo);
  r["bundle"] = io::to_json(cls);
  const double maxF = curvature(conn, ctx.ex).max_abs();
  const double scale = wire_curvature_scale(kb, I, 2.0 * spec.half_width / spec.n);
  r["curvature"] = {{"max_abs", maxF}, {"scale", scale}};
  r.exact("chern", cls.chern, std::vector<std::int64_t>(topo.h2.size(), 0));
  r.at_least("curvature_max_over_scale", maxF / scale, 1e-3);
  r.truth("nonflat_connection", !cls.flat, "connection curvature is nonzero");
  r.note("flat bundle class (all Chern numbers zero) carried by a connection with nonzero curvature");
  return r;
}

Report closed_wire(const Context& ctx, const ScenarioOptions& opt) {
  Report r("scenario closed-wire");
  const double I = opt.current.value_or(1.0);
  const int res = opt.resolution.value_or(12);
  const BoxMinusCircle spec{res, 1.0, 0.5, 0.2};
  auto K = std::make_shared<const SimplicialComplex>(generate_mesh(spec));
  r["mesh"] = mesh_stats(*K);
  HomologyEngine eng(*K);
  r["homology"] = betti_summary(eng, 3);
  r.exact("betti1", eng.homology(1).betti, 1);
  const int b2 = eng.homology(2).betti;
  r["H2"] = {{"betti", b2}, {"torsion", eng.homology(2).torsion}};
  if (b2 != 0)
    r.note("discrepancy: computed H2 of the closed-wire complement is Z^" + std::to_string(b2) +
           ", not trivial (R^3 minus a circle is homotopy equivalent to S^1 v S^2)");

  const int segments = 256;
  const AnalyticField f = circular_loop(I, spec.ring_radius, segments, ctx.k, 0.0);
  // Current at (R, 0, 0) flows along +y; a loop with normal +y links it once.
  const LoopSpec link{{spec.ring_radius, 0, 0}, {0, 0, 1}, {1, 0, 0}, 0.15};
  const LoopSpec other{{spec.ring_radius + 0.02, 0, 0.02}, {0, 0, 1}, {1, 0, 0}, 0.1};
  const LoopSpec free{{0, 0, 0.5}, {1, 0, 0}, {0, 1, 0}, 0.15};
  const double i1 = loop_current(f, link, segments, ctx);
  const double i2 = loop_current(f, other, segments, ctx);
  const double i0 = loop_current(f, free, segments, ctx);
  r["ampere"] = {{"linking", i1}, {"homologous", i2}, {"unlinked", i0}, {"segments", segments}};
  r.relative("ampere_current", i1, I, 1e-6);
  r.relative("ampere_homologous", i2, i1, 1e-8);
  r.absolute("ampere_unlinked", i0, 0.0, 1e-9);

  PhysicalConstants kb = ctx.k;
  if (ctx.k.mode == Units::SI) {
    kb = PhysicalConstants::natural();
    r.note("SI flux per face is many flux quanta; the connection is evaluated in natural units");
  }
  const AnalyticField fb = circular_loop(I, spec.ring_radius, segments, kb, 0.0);
  const EdgeConnection conn = magnetic_connection(K, fb, 4, ctx.ex);
  const TopologyData topo = TopologyData::compute(*K);
  const BundleClass cls = classify(conn, topo);
  r["bundle"] = io::to_json(cls);
  const double maxF = curvature(conn, ctx.ex).max_abs();
  const double scale = wire_curvature_scale(kb, I, 2.0 * spec.half_width / spec.n);
  r["curvature"] = {{"max_abs", maxF}, {"scale", scale}};
  r.exact("chern", cls.chern, std::vector<std::int64_t>(topo.h2.size(), 0));
  r.at_least("curvature_max_over_scale", maxF / scale, 1e-3);
  return r;
}

Report aharonov_bohm(const Context& ctx, const ScenarioOptions& opt) {
  Report r("scenario aharonov-bohm");
  const Annulus spec{opt.resolution.value_or(32), 2, 0.5, 1.0};
  auto K = std::make_shared<const SimplicialComplex>(generate_mesh(spec));
  r["mesh"] = mesh_stats(*K);
  HomologyEngine eng(*K);
  r["homology"] = betti_summary(eng, 2);
  r.exact("betti", betti_vector(eng, 2), {1, 1, 0});
  const TopologyData topo = TopologyData::compute(*K);

  const double chi = opt.chi.value_or(kPi);
  const EdgeConnection c0 = construct_connection(K, topo, {}, {0.0});
  const EdgeConnection c1 = construct_connection(K, topo, {}, {chi});
  const BundleClass k0 = classify(c0, topo), k1 = classify(c1, topo);
  r["trivial"] = io::to_json(k0);
  r["flux_line"] = io::to_json(k1);
  r.truth("flat", k0.flat && k1.flat, "both connections flat");
  if (k1.characters) r.absolute("character", wrap_angle((*k1.characters)[0] - chi), 0.0, 1e-9);
  const EquivalenceResult eq = is_equivalent(c0, c1, topo);
  r["equivalence"] = {{"equivalent", eq.equivalent}, {"reason", eq.reason}};
  const bool distinct_expected = std::abs(wrap_angle(chi)) > 1e-9;
  r.truth("inequivalent", eq.equivalent != distinct_expected, "characters 0 and chi distinguish the bundles");

  const Chain inner = loop_chain(*K, annulus_ring(spec, 0));
  const Chain outer = loop_chain(*K, annulus_ring(spec, spec.layers));
  const Chain V = annulus_region(*K, spec, 0, spec.layers);
  r.truth("homology_witness", boundary(*K, V) == outer - inner, "boundary(V) = outer ring - inner ring");
  const double hin = holonomy(c1, inner), hout = holonomy(c1, outer);
  r["holonomy"] = {{"inner", hin}, {"outer", hout}};
  r.absolute("holonomy_homology_invariance", wrap_angle(hin - hout), 0.0, 1e-9);

  const EdgeConnection half = construct_connection(K, topo, {}, {0.5 * kPi});
  r.absolute("twice_around", wrap_angle(holonomy(half, 2 * inner) - kPi), 0.0, 1e-9);

  std::vector<double> g(K->vertex_count());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::sin(1.7 * static_cast<double>(i)) * 3.0;
  const EquivalenceResult same = is_equivalent(c1, gauge_transform(c1, g), topo);
  r.truth("gauge_equivalent", same.equivalent, "connection equivalent to its gauge transform, witness verified");
  return r;
}

Report photon(const Context& ctx, const ScenarioOptions& opt) {
  Report r("scenario photon");
  const auto& k = ctx.k;
  const int levels = opt.levels.value_or(3);
  const int nodes = opt.nodes.value_or(9);
  const AnalyticField wave = parse_field("planewave:E0=1,kx=1,ky=2,kz=0.5,pol=circular", k);
  const auto fam = refinement_family({0.1, 0.2, 0.3}, 0.5, nodes, levels, 0.5, k.c);
  std::vector<double> h, ev, co, evm, com;
  std::array<std::vector<double>, 4> mx;
  for (const auto& g : fam) {
    h.push_back(g.space.h);
    const auto p = photon_residual(photon_from_EB(wave, g, Polarity::Plus, ctx.ex), k, ctx.ex);
    const auto m = photon_residual(photon_from_EB(wave, g, Polarity::Minus, ctx.ex), k, ctx.ex);
    ev.push_back(p.evolution);
    co.push_back(p.constraint);
    evm.push_back(m.evolution);
    com.push_back(m.constraint);
    const auto w = maxwell_residual(wave, g, ctx.ex).norms;
    for (int i = 0; i < 4; ++i) mx[i].push_back(w[i]);
  }
  r["plane_wave"] = sweep_table(h, {"photon_evolution", "photon_constraint", "photon_minus_evolution",
                                    "photon_minus_constraint", "div_E", "ampere_maxwell", "div_B", "faraday"},
                                {ev, co, evm, com, mx[0], mx[1], mx[2], mx[3]});
  const double amp = k.epsilon0 * 1.0;  // |omega| of the wave
  const double unit = amp / h.front();
  order_check(r, "photon_evolution", h, ev, unit);
  order_check(r, "photon_constraint", h, co, unit);
  order_check(r, "photon_minus_evolution", h, evm, unit);
  order_check(r, "photon_minus_constraint", h, com, unit);
  bool maxwell_ok = true;
  for (const auto& m : mx) maxwell_ok = maxwell_ok && converges(h, m, unit);
  const bool photon_ok = converges(h, ev, unit) && converges(h, co, unit);
  r.truth("maxwell_photon_equivalence", maxwell_ok == photon_ok && photon_ok,
          "Maxwell and photon residuals both converge at order 2");

  // Static Coulomb field away from the charge.
  const AnalyticField coul = make_field(Coulomb{k.e, {0, 0, 0}}, k);
  const auto famc = refinement_family({2.0, 0.0, 0.0}, 0.5, nodes, levels, 0.5, k.c);
  std::vector<double> hc, evc, coc;
  for (const auto& g : famc) {
    hc.push_back(g.space.h);
    const auto p = photon_residual(photon_from_EB(coul, g, Polarity::Plus, ctx.ex), k, ctx.ex);
    evc.push_back(p.evolution);
    coc.push_back(p.constraint);
  }
  r["coulomb"] = sweep_table(hc, {"photon_evolution", "photon_constraint"}, {evc, coc});
  const double cscale = k.e / (4 * kPi * 1.5 * 1.5) / hc.front();
  order_check(r, "coulomb_evolution", hc, evc, cscale);
  order_check(r, "coulomb_constraint", hc, coc, cscale);
  return r;
}

Report dirac(const Context& ctx, const ScenarioOptions& opt) {
  Report r("scenario dirac");
  const auto& k = ctx.k;
  double mass = opt.mass.value_or(k.mode == Units::SI ? 9.1093837015e-31 : 1.0);
  if (!(mass > 0)) fail(ErrorCode::ParseError, "dirac scenario needs a positive reference mass");
  const double P = mass * k.c;           // momentum unit
  const double L = k.hbar / (mass * k.c);  // length unit
  Point3 p = opt.momentum ? parse_point(*opt.momentum) : Point3{0.7, -0.4, 1.1};
  p = scale(P, p);
  const int levels = opt.levels.value_or(3);
  const int nodes = opt.nodes.value_or(9);
  const auto fam = refinement_family({0.1 * L, 0.2 * L, 0.3 * L}, 0.5 * L, nodes, levels, 0.5, k.c);
  r["mass"] = mass;
  r["momentum"] = p;
  std::vector<double> h, rest, moving, massless;
  for (const auto& g : fam) {
    h.push_back(g.space.h);
    rest.push_back(dirac_residual(plane_wave_spinor(g, {0, 0, 0}, mass, k), {}, k, ctx.ex));
    moving.push_back(dirac_residual(plane_wave_spinor(g, p, mass, k), {}, k, ctx.ex));
    massless.push_back(dirac_residual(plane_wave_spinor(g, p, 0.0, k), {}, k, ctx.ex));
  }
  r["residuals"] = sweep_table(h, {"rest", "momentum", "massless"}, {rest, moving, massless});
  const double unit = P;  // |m c psi| with |psi| = 1
  order_check(r, "rest", h, rest, unit);
  order_check(r, "momentum", h, moving, unit);
  order_check(r, "massless", h, massless, unit);

  std::mt19937_64 rng(20261014);
  std::uniform_real_distribution<double> U(-2.0, 2.0), M(0.0, 2.0);
  double worst = 0.0, parity = 0.0;
  Json samples = Json::array();
  for (int s = 0; s < 20; ++s) {
    Point3 q{U(rng), U(rng), U(rng)};
    double m = M(rng);
    if (s == 0) q = {0, 0, 0};
    if (s == 1) m = 0.0;
    q = scale(P, q);
    m *= mass;
    const auto E = dirac_dispersion(q, m, k);
    const double pc2 = dot(q, q) * k.c * k.c, mc2 = m * k.c * k.c;
    const double ref = pc2 + mc2 * mc2;
    for (double x : E) worst = std::max(worst, std::abs(x * x - ref) / ref);
    const auto Em = dirac_dispersion(scale(-1.0, q), m, k);
    for (int i = 0; i < 4; ++i) parity = std::max(parity, std::abs(E[i] - Em[i]) / std::sqrt(ref));
    samples.push_back({{"p", q}, {"m", m}, {"E", E}});
  }
  r["dispersion"] = samples;
  r.at_most("dispersion_relative_error", worst, 1e-9);
  r.at_most("dispersion_parity", parity, 1e-9);
  r.note("momenta in units of m c, lengths in units of hbar / (m c)");
  return r;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"point-charge",  "n-charges", "open-wire", "closed-wire",
                                              "aharonov-bohm", "photon",    "dirac"};
  return names;
}

Report run_scenario(const std::string& name, const Context& ctx, const ScenarioOptions& opt) {
  if (name == "point-charge") return point_charge(ctx, opt);
  if (name == "n-charges") return n_charges(ctx, opt);
  if (name == "open-wire") return open_wire(ctx, opt);
  if (name == "closed-wire") return closed_wire(ctx, opt);
  if (name == "aharonov-bohm") return aharonov_bohm(ctx, opt);
  if (name == "photon") return photon(ctx, opt);
  if (name == "dirac") return dirac(ctx, opt);
  fail(ErrorCode::ParseError, "unknown scenario '" + name + "'");
}

}  // namespace emtopo::cli
