#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

#include "cli/common.hpp"
#include "emtopo/error.hpp"
#include "emtopo/forms.hpp"
#include "emtopo/mesh_generators.hpp"
#include "emtopo/semiclassical.hpp"
#include "emtopo/vec3.hpp"
#include "util/params.hpp"

namespace emtopo::cli {

namespace {

using Json = io::Json;

struct Global {
  std::string units = "natural";
  std::vector<std::string> tol;
  std::string format = "json";
  std::string out;
  bool serial = false;
};

struct MeshSource {
  std::string file;
  std::string spec;
};

void add_mesh_source(CLI::App* app, MeshSource& m, const std::string& default_spec) {
  m.spec = default_spec;
  app->add_option("--mesh", m.file, "mesh JSON file");
  app->add_option("--spec", m.spec, "generated mesh, e.g. icosphere:level=3")->capture_default_str();
}

std::shared_ptr<const SimplicialComplex> load(const MeshSource& m) {
  if (!m.file.empty()) return std::make_shared<const SimplicialComplex>(io::load_mesh(m.file));
  return std::make_shared<const SimplicialComplex>(generate_mesh(parse_mesh_spec(m.spec)));
}

void apply_tolerances(Report& r, const std::vector<std::string>& tol) {
  std::map<std::string, double> by_name;
  std::optional<double> global;
  for (const auto& t : tol) {
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      global = detail::to_double(t);
    else
      by_name[t.substr(0, eq)] = detail::to_double(t.substr(eq + 1));
  }
  r.set_overrides(std::move(by_name), global);
}

// --- homology -------------------------------------------------------------

struct HomologyArgs {
  MeshSource mesh;
  int deg = -1;
  std::string coeff = "Z";
  bool cohomology = false;
  bool generators = false;
};

Report cmd_homology(const Context&, const HomologyArgs& a) {
  Report r("homology");
  const auto K = load(a.mesh);
  r["mesh"] = mesh_stats(*K);
  if (a.coeff != "Z" && a.coeff != "R") fail(ErrorCode::ParseError, "--coeff must be Z or R");
  const Coefficients coeff = a.coeff == "Z" ? Coefficients::Z : Coefficients::R;
  const int dim = K->dimension();
  if (a.deg > dim) fail(ErrorCode::DegreeError, "degree above the complex dimension");
  HomologyEngine eng(*K);
  const std::vector<int> real = coeff == Coefficients::R ? real_betti_numbers(*K) : std::vector<int>{};
  Json groups = Json::array();
  std::int64_t chi = 0;
  for (int k = 0; k <= dim; ++k) {
    HomologyResult h = a.cohomology ? eng.cohomology(k) : eng.homology(k);
    if (coeff == Coefficients::R) {
      h.betti = real[k];
      h.torsion.clear();
    }
    chi += (k % 2 == 0 ? 1 : -1) * h.betti;
    if (a.deg >= 0 && k != a.deg) continue;
    Json g = io::to_json(h);
    if (!a.generators) {
      g["generator_count"] = g["generators"].size();
      g.erase("generators");
    }
    groups.push_back(std::move(g));
  }
  r["kind"] = a.cohomology ? "cohomology" : "homology";
  r["coefficients"] = a.coeff;
  r["groups"] = std::move(groups);
  r.exact("euler_characteristic", chi, K->euler_characteristic());
  r.truth("boundary_squared_zero", boundary_squared_zero(*K), "d_{k-1} d_k = 0");
  return r;
}

// --- charge ---------------------------------------------------------------

struct ChargeArgs {
  MeshSource mesh;
  std::string field = "coulomb:q=1e";
  int order = 2;
  std::string expect;
};

Report cmd_charge(const Context& ctx, const ChargeArgs& a) {
  Report r("charge");
  const auto K = load(a.mesh);
  r["mesh"] = mesh_stats(*K);
  const AnalyticField f = parse_field(a.field, ctx.k);
  r["field"] = f.describe();
  r["quad_order"] = a.order;
  const Cochain omega = discretize_2form(f, *K, a.order, FormComponent::Charge, 0.0, ctx.ex);
  TopologyData topo = TopologyData::compute(*K);
  orient_h2(*K, topo);
  std::optional<Cochain> exact;
  try {
    if (a.order != 0) exact = discretize_2form(f, *K, 0, FormComponent::Charge, 0.0, ctx.ex);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegreeError) throw;
  }
  Json periods = Json::array();
  for (std::size_t j = 0; j < topo.h2.size(); ++j) {
    const double p = period(omega, topo.h2[j]);
    periods.push_back({{"Q", p}, {"Q_over_e", p / ctx.k.e}});
    if (exact) {
      const double ref = period(*exact, topo.h2[j]);
      const std::string name = "period[" + std::to_string(j) + "]";
      if (std::abs(ref) > 1e-12 * ctx.k.e)
        r.relative(name, p, ref, 1e-4);
      else
        r.absolute(name, p, ref, 1e-9 * ctx.k.e);
    }
  }
  r["periods"] = std::move(periods);
  if (!a.expect.empty()) {
    if (topo.h2.empty()) fail(ErrorCode::SupportError, "mesh has no closed 2-cycle");
    const double q = detail::to_quantity(a.expect, ctx.k.e);
    const double p = period(omega, topo.h2[0]);
    if (q != 0)
      r.relative("expected_charge", p, q, 1e-4);
    else
      r.absolute("expected_charge", p, 0.0, 1e-9 * ctx.k.e);
  }
  return r;
}

// --- ampere ---------------------------------------------------------------

struct AmpereArgs {
  std::string field = "wire:I=1.5";
  double radius = 0.5;
  int segments = 256;
  std::string center = "0;0;0";
  std::string normal = "0;0;1";
  int gauss = 2;
  std::string expect;
};

Report cmd_ampere(const Context& ctx, const AmpereArgs& a) {
  using namespace vec;
  Report r("ampere");
  const AnalyticField f = parse_field(a.field, ctx.k);
  const Point3 c = parse_point(a.center);
  const Point3 n = normalized(parse_point(a.normal));
  const Point3 seed = std::abs(n[0]) < 0.9 ? Point3{1, 0, 0} : Point3{0, 1, 0};
  const Point3 u = normalized(sub(seed, scale(dot(seed, n), n)));
  const Point3 v = cross(n, u);
  const auto loop = polygon_loop(circle_points(a.segments, a.radius, c, u, v));
  const double I = ampere_current(f, loop.cycle, loop.complex, a.gauss, 0.0, ctx.ex);
  r["field"] = f.describe();
  r["loop"] = {{"center", c}, {"normal", n}, {"radius", a.radius}, {"segments", a.segments}, {"gauss_points", a.gauss}};
  r["current"] = I;
  std::optional<double> expected;
  if (!a.expect.empty()) {
    expected = detail::to_double(a.expect);
  } else if (const auto* w = std::get_if<StraightWire>(&f.kind)) {
    const double dn = dot(w->direction, n);
    double e = 0.0;
    if (std::abs(dn) > 1e-12) {
      const Point3 hit = axpy(w->point, dot(sub(c, w->point), n) / dn, w->direction);
      if (norm(sub(hit, c)) < a.radius * std::cos(std::numbers::pi / a.segments)) e = dn > 0 ? w->current : -w->current;
    }
    expected = e;
  }
  if (expected) {
    if (*expected != 0)
      r.relative("current", I, *expected, 1e-6);
    else
      r.absolute("current", I, 0.0, 1e-9);
  }
  return r;
}

// --- bundle commands ------------------------------------------------------

struct ClassifyArgs {
  MeshSource mesh;
  std::string connection;
};

Report cmd_classify(const Context& ctx, const ClassifyArgs& a) {
  Report r("classify");
  const auto K = load(a.mesh);
  r["mesh"] = mesh_stats(*K);
  const EdgeConnection c = io::connection_from_json(io::read_file(a.connection), K);
  TopologyData topo = TopologyData::compute(*K);
  orient_h2(*K, topo);
  const BundleClass cls = classify(c, topo);
  r["class"] = io::to_json(cls);
  const FaceCurvature F = curvature(c, ctx.ex);
  r["curvature_max_abs"] = F.max_abs();
  double worst = 0.0;
  for (const auto& N : topo.h2) {
    const double p = curvature_period(F, N);
    worst = std::max(worst, std::abs(p - std::round(p)));
  }
  r.at_most("integrality", worst, kChernTolerance);
  return r;
}

struct ConstructArgs {
  MeshSource mesh;
  std::string chern;
  std::string characters;
  std::string profile;
  std::string save;
};

Report cmd_construct(const Context&, const ConstructArgs& a) {
  Report r("construct");
  const auto K = load(a.mesh);
  r["mesh"] = mesh_stats(*K);
  TopologyData topo = TopologyData::compute(*K);
  orient_h2(*K, topo);
  auto chern = parse_int_list(a.chern);
  if (a.chern.empty()) chern.assign(topo.h2.size(), 0);
  const auto chars = parse_angle_list(a.characters);
  std::optional<Cochain> prof;
  if (!a.profile.empty()) prof = io::cochain_from_json(io::read_file(a.profile));
  const EdgeConnection c = construct_connection(K, topo, chern, chars, prof);
  const BundleClass cls = classify(c, topo);
  r["target"] = {{"chern", chern}, {"characters", chars}};
  r["class"] = io::to_json(cls);
  r.exact("chern", cls.chern, chern);
  if (!chars.empty() && cls.characters)
    for (std::size_t j = 0; j < chars.size(); ++j)
      r.absolute("character[" + std::to_string(j) + "]", wrap_angle((*cls.characters)[j] - chars[j]), 0.0, 1e-9);
  if (!a.save.empty()) {
    io::write_file(a.save, io::to_json(c));
    r["saved"] = a.save;
  }
  return r;
}

struct EquivalentArgs {
  MeshSource mesh;
  std::string a, b;
  bool witness = false;
};

Report cmd_equivalent(const Context&, const EquivalentArgs& a) {
  Report r("equivalent");
  const auto K = load(a.mesh);
  r["mesh"] = mesh_stats(*K);
  const EdgeConnection c1 = io::connection_from_json(io::read_file(a.a), K);
  const EdgeConnection c2 = io::connection_from_json(io::read_file(a.b), K);
  const TopologyData topo = TopologyData::compute(*K);
  const EquivalenceResult eq = is_equivalent(c1, c2, topo);
  r["equivalent"] = eq.equivalent;
  r["reason"] = eq.reason;
  if (eq.equivalent) {
    if (a.witness) r["witness"] = eq.witness;
    const EdgeConnection moved = gauge_transform(c1, eq.witness);
    double worst = 0.0;
    for (std::size_t e = 0; e < moved.theta.size(); ++e)
      worst = std::max(worst, std::abs(wrap_angle(moved.theta[e] - c2.theta[e])));
    r.at_most("witness_residual", worst, 1e-8);
  }
  return r;
}

// --- lattice checks -------------------------------------------------------

struct SweepArgs {
  std::string field = "planewave:E0=1,kx=1,ky=2,kz=0.5,pol=circular";
  std::string center = "0.1;0.2;0.3";
  double half = 0.5;
  int nodes = 9;
  int levels = 3;
  double courant = 0.5;
  std::string polarity = "+";
  double mass = 1.0;
  std::string momentum = "0.7;-0.4;1.1";
  double coupling = 1.0;
};

void sweep_orders(Report& r, const std::string& name, const std::vector<double>& h, const std::vector<double>& res,
                  double scale) {
  const double worst = *std::max_element(res.begin(), res.end());
  if (worst <= 1e-12 * scale)
    r.at_most(name + ".residual", worst, 1e-12 * scale);
  else
    r.absolute(name + ".order", convergence_order(h, res), 2.0, 0.2);
}

double field_scale(const AnalyticField& f, const GridSpec& g) {
  using namespace vec;
  const auto& k = f.constants;
  double m = 0.0;
  for (int i = 0; i < g.space.n[0]; i += std::max(1, g.space.n[0] / 4))
    for (int j = 0; j < g.space.n[1]; j += std::max(1, g.space.n[1] / 4))
      for (int l = 0; l < g.space.n[2]; l += std::max(1, g.space.n[2] / 4)) {
        const Point3 x = g.point(i, j, l);
        m = std::max({m, k.epsilon0 * norm(f.electric(x, g.t0)), norm(f.magnetic(x, g.t0)) / (k.mu0 * k.c)});
      }
  return m / g.space.h;
}

Report cmd_maxwell(const Context& ctx, const SweepArgs& a) {
  Report r("maxwell-check");
  const AnalyticField f = parse_field(a.field, ctx.k);
  const auto fam = refinement_family(parse_point(a.center), a.half, a.nodes, a.levels, a.courant, ctx.k.c);
  std::vector<double> h;
  std::array<std::vector<double>, 4> n;
  for (const auto& g : fam) {
    h.push_back(g.space.h);
    const auto m = maxwell_residual(f, g, ctx.ex).norms;
    for (int i = 0; i < 4; ++i) n[i].push_back(m[i]);
  }
  r["field"] = f.describe();
  r["h"] = h;
  const char* names[4] = {"div_E", "ampere_maxwell", "div_B", "faraday"};
  const double s = field_scale(f, fam.front());
  for (int i = 0; i < 4; ++i) {
    r[names[i]] = n[i];
    if (a.levels >= 2) sweep_orders(r, names[i], h, n[i], s);
  }
  return r;
}

Report cmd_photon(const Context& ctx, const SweepArgs& a) {
  Report r("photon-check");
  if (a.polarity != "+" && a.polarity != "-") fail(ErrorCode::ParseError, "--polarity must be + or -");
  const Polarity pol = a.polarity == "+" ? Polarity::Plus : Polarity::Minus;
  const AnalyticField f = parse_field(a.field, ctx.k);
  const auto fam = refinement_family(parse_point(a.center), a.half, a.nodes, a.levels, a.courant, ctx.k.c);
  std::vector<double> h, ev, co;
  for (const auto& g : fam) {
    h.push_back(g.space.h);
    const auto p = photon_residual(photon_from_EB(f, g, pol, ctx.ex), ctx.k, ctx.ex);
    ev.push_back(p.evolution);
    co.push_back(p.constraint);
  }
  r["field"] = f.describe();
  r["polarity"] = a.polarity;
  r["h"] = h;
  r["evolution"] = ev;
  r["constraint"] = co;
  const double s = field_scale(f, fam.front());
  if (a.levels >= 2) {
    sweep_orders(r, "evolution", h, ev, s);
    sweep_orders(r, "constraint", h, co, s);
  }
  return r;
}

Report cmd_dirac(const Context& ctx, const SweepArgs& a) {
  using namespace vec;
  Report r("dirac-check");
  const auto& k = ctx.k;
  if (!(a.mass >= 0)) fail(ErrorCode::ParseError, "--mass must be nonnegative");
  const Point3 p = parse_point(a.momentum);
  const auto fam = refinement_family(parse_point(a.center), a.half, a.nodes, a.levels, a.courant, k.c);
  std::vector<double> h, res;
  for (const auto& g : fam) {
    h.push_back(g.space.h);
    res.push_back(dirac_residual(plane_wave_spinor(g, p, a.mass, k), {std::nullopt, a.coupling}, k, ctx.ex));
  }
  const auto E = dirac_dispersion(p, a.mass, k);
  const double ref = dot(p, p) * k.c * k.c + std::pow(a.mass * k.c * k.c, 2);
  double worst = 0.0;
  for (double x : E) worst = std::max(worst, ref > 0 ? std::abs(x * x - ref) / ref : std::abs(x));
  r["mass"] = a.mass;
  r["momentum"] = p;
  r["energies"] = E;
  r["h"] = h;
  r["residual"] = res;
  r.at_most("dispersion_relative_error", worst, 1e-9);
  const double s = std::max(a.mass * k.c, norm(p));
  if (a.levels >= 2) sweep_orders(r, "residual", h, res, s);
  return r;
}

// --- mesh -----------------------------------------------------------------

Report cmd_mesh(const MeshSource& m, const std::string& save) {
  Report r("mesh");
  const auto K = load(m);
  r["mesh"] = mesh_stats(*K);
  if (!m.file.empty()) r["source"] = m.file;
  else r["spec"] = m.spec;
  if (!save.empty()) {
    io::save_mesh(*K, save);
    r["saved"] = save;
  }
  return r;
}

int emit(const Report& r, const Global& g, std::ostream& out) {
  const std::string text = g.format == "text" ? r.to_text() : r.to_json().dump(2) + "\n";
  if (g.out.empty()) {
    out << text;
  } else {
    std::ofstream f(g.out);
    if (!f) fail(ErrorCode::IoError, "cannot write " + g.out);
    f << text;
  }
  return r.passed() ? kExitPass : kExitFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Topological electromagnetism toolkit", "emtopo"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--units", g.units, "si or natural")->capture_default_str();
  app.add_option("--tol", g.tol, "tolerance override: VALUE or CHECK=VALUE (repeatable)");
  app.add_option("--format", g.format, "json or text")->capture_default_str();
  app.add_option("--out", g.out, "write the report to a file");
  app.add_flag("--serial", g.serial, "run kernels on the serial reference path");

  HomologyArgs ha;
  auto* sh = app.add_subcommand("homology", "(co)homology groups with generators");
  add_mesh_source(sh, ha.mesh, "torus:nu=8,nv=8");
  sh->add_option("--deg", ha.deg, "single degree (default: all)");
  sh->add_option("--coeff", ha.coeff, "Z or R")->capture_default_str();
  sh->add_flag("--cohomology", ha.cohomology, "report cohomology");
  sh->add_flag("--generators", ha.generators, "include generator chains");

  ChargeArgs ca;
  auto* sc = app.add_subcommand("charge", "periods of the charge 2-form over H2 generators");
  add_mesh_source(sc, ca.mesh, "icosphere:level=3");
  sc->add_option("--field", ca.field)->capture_default_str();
  sc->add_option("--order", ca.order, "quadrature order 0 (exact), 1 or 2")->capture_default_str();
  sc->add_option("--expect", ca.expect, "expected charge, e.g. 2e");

  AmpereArgs aa;
  auto* sa = app.add_subcommand("ampere", "current through a circular amperian loop");
  sa->add_option("--field", aa.field)->capture_default_str();
  sa->add_option("--radius", aa.radius)->capture_default_str();
  sa->add_option("--segments", aa.segments)->capture_default_str();
  sa->add_option("--center", aa.center, "x;y;z")->capture_default_str();
  sa->add_option("--normal", aa.normal, "x;y;z")->capture_default_str();
  sa->add_option("--gauss", aa.gauss, "Gauss points per edge")->capture_default_str();
  sa->add_option("--expect", aa.expect, "expected current (A)");

  ClassifyArgs cla;
  auto* scl = app.add_subcommand("classify", "Chern numbers and characters of a connection");
  add_mesh_source(scl, cla.mesh, "icosphere:level=3");
  scl->add_option("--connection", cla.connection, "connection JSON")->required();

  ConstructArgs coa;
  auto* sco = app.add_subcommand("construct", "connection with prescribed Chern numbers and characters");
  add_mesh_source(sco, coa.mesh, "icosphere:level=3");
  sco->add_option("--chern", coa.chern, "comma-separated integers");
  sco->add_option("--characters", coa.characters, "comma-separated angles, e.g. 0.5pi");
  sco->add_option("--profile", coa.profile, "curvature 2-cochain JSON");
  sco->add_option("--save", coa.save, "write the connection JSON");

  EquivalentArgs ea;
  auto* se = app.add_subcommand("equivalent", "gauge equivalence of two connections");
  add_mesh_source(se, ea.mesh, "icosphere:level=3");
  se->add_option("--a", ea.a, "first connection JSON")->required();
  se->add_option("--b", ea.b, "second connection JSON")->required();
  se->add_flag("--witness", ea.witness, "include the gauge witness");

  SweepArgs ma, pa, da;
  da.field.clear();
  auto sweep_opts = [](CLI::App* s, SweepArgs& x, bool field) {
    if (field) s->add_option("--field", x.field)->capture_default_str();
    s->add_option("--center", x.center, "x;y;z")->capture_default_str();
    s->add_option("--half", x.half, "half width of the cube")->capture_default_str();
    s->add_option("--nodes", x.nodes, "coarse nodes per axis")->capture_default_str();
    s->add_option("--levels", x.levels, "grid halvings + 1")->capture_default_str();
    s->add_option("--courant", x.courant, "c dt / h")->capture_default_str();
  };
  auto* smx = app.add_subcommand("maxwell-check", "Maxwell residual convergence on an analytic field");
  sweep_opts(smx, ma, true);
  auto* sph = app.add_subcommand("photon-check", "photon operator residual convergence");
  sweep_opts(sph, pa, true);
  sph->add_option("--polarity", pa.polarity, "+ or -")->capture_default_str();
  auto* sdi = app.add_subcommand("dirac-check", "Dirac plane-wave residual convergence and dispersion");
  sweep_opts(sdi, da, false);
  sdi->add_option("--mass", da.mass)->capture_default_str();
  sdi->add_option("--p", da.momentum, "momentum x;y;z")->capture_default_str();
  sdi->add_option("--coupling", da.coupling, "covariant derivative scale")->capture_default_str();

  std::string scenario;
  ScenarioOptions so;
  auto* ssc = app.add_subcommand("scenario", "prebuilt verification suites");
  ssc->add_option("name", scenario, "scenario name")->required()->check(CLI::IsMember(scenario_names()));
  ssc->add_option("--k", so.k, "point-charge winding");
  ssc->add_option("--level", so.level, "icosphere level");
  ssc->add_option("--charges", so.charges, "n-charges list, e.g. 1,2");
  ssc->add_option("--I", so.current, "wire current (A)");
  ssc->add_option("--n", so.resolution, "mesh resolution");
  ssc->add_option("--levels", so.levels, "grid levels");
  ssc->add_option("--nodes", so.nodes, "coarse grid nodes per axis");
  ssc->add_option("--mass", so.mass, "Dirac reference mass");
  ssc->add_option("--p", so.momentum, "Dirac momentum in units of m c, x;y;z");
  ssc->add_option("--chi", so.chi, "Aharonov-Bohm character angle");

  MeshSource mm;
  std::string save;
  auto* sme = app.add_subcommand("mesh", "generate or load a mesh and write it as JSON");
  add_mesh_source(sme, mm, "icosphere:level=2");
  sme->add_option("--save", save, "output mesh JSON");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  if (g.format != "json" && g.format != "text") {
    err << "--format must be json or text\n";
    return kExitUsage;
  }

  try {
    Context ctx{PhysicalConstants::of(parse_units(g.units)), g.serial ? Execution::Serial : Execution::Parallel};
    auto finish = [&](Report r) {
      r["units"] = units_name(ctx.k.mode);
      return r;
    };
    Report probe("");
    apply_tolerances(probe, g.tol);  // rejects malformed overrides before any work
    Report r = [&]() -> Report {
      if (*sh) return cmd_homology(ctx, ha);
      if (*sc) return cmd_charge(ctx, ca);
      if (*sa) return cmd_ampere(ctx, aa);
      if (*scl) return cmd_classify(ctx, cla);
      if (*sco) return cmd_construct(ctx, coa);
      if (*se) return cmd_equivalent(ctx, ea);
      if (*smx) return cmd_maxwell(ctx, ma);
      if (*sph) return cmd_photon(ctx, pa);
      if (*sdi) return cmd_dirac(ctx, da);
      if (*ssc) return run_scenario(scenario, ctx, so);
      return cmd_mesh(mm, save);
    }();
    apply_tolerances(r, g.tol);
    return emit(finish(std::move(r)), g, out);
  } catch (const Error& e) {
    Json j;
    j["schema"] = 1;
    j["error"] = {{"code", std::string(e.name())}, {"message", e.what()}};
    j["pass"] = false;
    if (g.out.empty()) {
      out << j.dump(2) << '\n';
    } else {
      std::ofstream f(g.out);
      f << j.dump(2) << '\n';
    }
    err << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace emtopo::cli
