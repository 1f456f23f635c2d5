// Serial reference against the OpenMP kernels. The Parallel/* cases use
// omp_get_max_threads() threads; set OMP_NUM_THREADS to vary it.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <map>
#include <memory>
#include <string>

#include "emtopo/fields.hpp"
#include "emtopo/forms.hpp"
#include "emtopo/kernels.hpp"
#include "emtopo/mesh_generators.hpp"
#include "emtopo/semiclassical.hpp"

using namespace emtopo;

namespace {

struct MeshSetup {
  SimplicialComplex K;
  AnalyticField wire;
  VectorFn B, A;
  std::vector<double> theta;

  explicit MeshSetup(int n)
      : K(generate_mesh(BoxMinusLine{n, 1.0, 0.15})),
        wire(make_field(StraightWire{1.5, {0, 0, 0}, {0, 0, 1}}, PhysicalConstants::natural())) {
    B = [this](const Point3& x) { return wire.magnetic(x); };
    A = [this](const Point3& x) { return wire.vector_potential(x); };
    theta.resize(K.count(1));
    kernels::serial::edge_circulation(K, gauss_legendre(4), A, theta);
  }
};

const MeshSetup& mesh_setup(int n) {
  static std::map<int, std::unique_ptr<MeshSetup>> cache;
  auto& p = cache[n];
  if (!p) p = std::make_unique<MeshSetup>(n);
  return *p;
}

struct LatticeSetup {
  PhysicalConstants k = PhysicalConstants::natural();
  StencilScales s{k.c, k.hbar, k.epsilon0, k.mu0};
  GridSpec g;
  Vec3Samples E, B;
  Complex3Samples omega;
  Complex4Samples psi;
  Potential4Samples A;

  explicit LatticeSetup(int n) {
    const AnalyticField pw = parse_field("planewave:E0=1,kx=1,ky=2,kz=0.5,pol=circular", k);
    g = cube_grid({0, 0, 0}, 0.5, n, 0.5 / (n - 1), 5);
    sample_fields(pw, g, E, B, Execution::Serial);
    omega = photon_from_EB(pw, g, Polarity::Plus, Execution::Serial).omega;
    psi = plane_wave_spinor(g, {0.7, -0.4, 1.1}, 1.0, k).psi;
    A = potential_samples({make_field(UniformField{{0.1, 0, 0}, {0, 0, 0.2}}, k), 1.0}, g, k);
  }
};

const LatticeSetup& lattice_setup(int n) {
  static std::map<int, std::unique_ptr<LatticeSetup>> cache;
  auto& p = cache[n];
  if (!p) p = std::make_unique<LatticeSetup>(n);
  return *p;
}

template <bool Par>
void BM_TriangleFlux(benchmark::State& st) {
  const auto& m = mesh_setup(static_cast<int>(st.range(0)));
  std::vector<double> out(m.K.count(2));
  const TriangleRule rule = three_point_rule();
  for (auto _ : st) {
    if constexpr (Par)
      kernels::openmp::triangle_flux(m.K, rule, m.B, out);
    else
      kernels::serial::triangle_flux(m.K, rule, m.B, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(out.size()));
}

template <bool Par>
void BM_EdgeCirculation(benchmark::State& st) {
  const auto& m = mesh_setup(static_cast<int>(st.range(0)));
  std::vector<double> out(m.K.count(1));
  const LineRule rule = gauss_legendre(4);
  for (auto _ : st) {
    if constexpr (Par)
      kernels::openmp::edge_circulation(m.K, rule, m.A, out);
    else
      kernels::serial::edge_circulation(m.K, rule, m.A, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(out.size()));
}

template <bool Par>
void BM_FaceAngleSums(benchmark::State& st) {
  const auto& m = mesh_setup(static_cast<int>(st.range(0)));
  std::vector<double> out(m.K.count(2));
  for (auto _ : st) {
    if constexpr (Par)
      kernels::openmp::face_angle_sums(m.K, m.theta, out);
    else
      kernels::serial::face_angle_sums(m.K, m.theta, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(out.size()));
}

template <bool Par>
void BM_MaxwellResidual(benchmark::State& st) {
  const auto& l = lattice_setup(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    auto r = Par ? kernels::openmp::maxwell_residual(l.g, l.E, l.B, l.s)
                 : kernels::serial::maxwell_residual(l.g, l.E, l.B, l.s);
    benchmark::DoNotOptimize(r);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(l.g.nodes()));
}

template <bool Par>
void BM_PhotonResidual(benchmark::State& st) {
  const auto& l = lattice_setup(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    auto r = Par ? kernels::openmp::photon_residual(l.g, l.omega, 1, l.s)
                 : kernels::serial::photon_residual(l.g, l.omega, 1, l.s);
    benchmark::DoNotOptimize(r);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(l.g.nodes()));
}

template <bool Par>
void BM_DiracResidual(benchmark::State& st) {
  const auto& l = lattice_setup(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    double r = Par ? kernels::openmp::dirac_residual(l.g, l.psi, l.A, 1.0, 1.0, l.s)
                   : kernels::serial::dirac_residual(l.g, l.psi, l.A, 1.0, 1.0, l.s);
    benchmark::DoNotOptimize(r);
  }
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(l.g.nodes()));
}

}  // namespace

BENCHMARK(BM_TriangleFlux<false>)->Name("Serial/TriangleFlux")->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TriangleFlux<true>)->Name("Parallel/TriangleFlux")->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EdgeCirculation<false>)->Name("Serial/EdgeCirculation")->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EdgeCirculation<true>)->Name("Parallel/EdgeCirculation")->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FaceAngleSums<false>)->Name("Serial/FaceAngleSums")->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FaceAngleSums<true>)->Name("Parallel/FaceAngleSums")->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaxwellResidual<false>)->Name("Serial/MaxwellResidual")->Arg(17)->Arg(33)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MaxwellResidual<true>)->Name("Parallel/MaxwellResidual")->Arg(17)->Arg(33)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhotonResidual<false>)->Name("Serial/PhotonResidual")->Arg(17)->Arg(33)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhotonResidual<true>)->Name("Parallel/PhotonResidual")->Arg(17)->Arg(33)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DiracResidual<false>)->Name("Serial/DiracResidual")->Arg(17)->Arg(33)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DiracResidual<true>)->Name("Parallel/DiracResidual")->Arg(17)->Arg(33)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  benchmark::AddCustomContext("omp_max_threads", std::to_string(omp_get_max_threads()));
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
