#pragma once

#include <optional>
#include <string>
#include <vector>

#include "emtopo/bundle.hpp"
#include "emtopo/cli.hpp"
#include "emtopo/constants.hpp"
#include "emtopo/homology.hpp"
#include "emtopo/kernels.hpp"
#include "emtopo/mesh.hpp"

namespace emtopo::cli {

struct Context {
  PhysicalConstants k;
  Execution ex = Execution::Parallel;
};

// Scenario parameters; unset values take per-scenario defaults.
struct ScenarioOptions {
  std::optional<int> k;
  std::optional<int> level;
  std::optional<std::string> charges;
  std::optional<double> current;
  std::optional<int> resolution;
  std::optional<int> levels;
  std::optional<int> nodes;
  std::optional<double> mass;
  std::optional<std::string> momentum;
  std::optional<double> chi;
};

Report run_scenario(const std::string& name, const Context& ctx, const ScenarioOptions& opt);
const std::vector<std::string>& scenario_names();

io::Json mesh_stats(const SimplicialComplex& K);
bool boundary_squared_zero(const SimplicialComplex& K);
io::Json betti_summary(const HomologyEngine& engine, int dim);

/// Replaces the H2 basis by the fundamental cycle of a closed oriented surface
/// when that cycle exists and generates H2, so signs follow the geometry.
void orient_h2(const SimplicialComplex& K, TopologyData& topo);

/// Sum of the wrapped curvature over a 2-chain divided by 2pi (unrounded).
double curvature_period(const FaceCurvature& F, const Chain& N);

std::vector<std::int64_t> parse_int_list(const std::string& s);
/// Angles with an optional "pi" suffix: "0.5pi,1".
std::vector<double> parse_angle_list(const std::string& s);
Point3 parse_point(const std::string& s);

/// Component scale of the magnetic curvature near a straight wire:
/// coupling * mu0 I h / (2 pi).
double wire_curvature_scale(const PhysicalConstants& k, double current, double h);

}  // namespace emtopo::cli
