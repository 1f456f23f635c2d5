#include "cli/common.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "emtopo/error.hpp"
#include "util/params.hpp"

namespace emtopo::cli {

io::Json mesh_stats(const SimplicialComplex& K) {
  io::Json j;
  j["dimension"] = K.dimension();
  std::vector<std::size_t> counts;
  for (int d = 0; d <= K.dimension(); ++d) counts.push_back(K.count(d));
  j["counts"] = counts;
  j["euler_characteristic"] = K.euler_characteristic();
  return j;
}

bool boundary_squared_zero(const SimplicialComplex& K) {
  const auto bd = boundary_matrices(K);
  for (int k = 1; k < kMaxDim; ++k) {
    const auto& hi = bd[k];      // d_{k+1}
    const auto& lo = bd[k - 1];  // d_k
    if (hi.cols == 0 || lo.cols == 0) continue;
    for (std::size_t c = 0; c < hi.cols; ++c) {
      std::vector<std::int64_t> col(hi.rows, 0);
      for (auto [r, v] : hi.columns[c]) col[r] = v;
      for (auto x : lo.apply(col))
        if (x != 0) return false;
    }
  }
  return true;
}

io::Json betti_summary(const HomologyEngine& engine, int dim) {
  io::Json j;
  std::vector<int> betti, cobetti;
  io::Json torsion = io::Json::array(), cotorsion = io::Json::array();
  for (int k = 0; k <= dim; ++k) {
    betti.push_back(engine.homology(k).betti);
    cobetti.push_back(engine.cohomology(k).betti);
    torsion.push_back(engine.homology(k).torsion);
    cotorsion.push_back(engine.cohomology(k).torsion);
  }
  j["betti"] = betti;
  j["torsion"] = torsion;
  j["cohomology_betti"] = cobetti;
  j["cohomology_torsion"] = cotorsion;
  j["used_big_integers"] = engine.used_big_integers();
  return j;
}

void orient_h2(const SimplicialComplex& K, TopologyData& topo) {
  if (K.dimension() != 2 || topo.h2.size() != 1) return;
  const Chain N = K.oriented_chain(2);
  if (N.is_zero() || !boundary(K, N).is_zero()) return;
  const auto c = generators_pairing(K, N, topo.h2);
  if (c.size() == 1 && (c[0] == 1 || c[0] == -1)) topo.h2[0] = N;
}

double curvature_period(const FaceCurvature& F, const Chain& N) {
  double acc = 0.0;
  for (std::size_t i = 0; i < N.size(); ++i)
    if (N.coeffs[i] != 0) acc += static_cast<double>(N.coeffs[i]) * F.wrapped[i];
  return acc / (2.0 * std::numbers::pi);
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "not an integer: '" + item + "'");
    }
  }
  return out;
}

std::vector<double> parse_angle_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item.size() >= 2 && item.substr(item.size() - 2) == "pi") {
      const std::string head = item.substr(0, item.size() - 2);
      out.push_back((head.empty() ? 1.0 : (head == "-" ? -1.0 : detail::to_double(head))) * std::numbers::pi);
    } else {
      out.push_back(detail::to_double(item));
    }
  }
  return out;
}

Point3 parse_point(const std::string& s) {
  const auto pts = detail::parse_points(s);
  if (pts.size() != 1) fail(ErrorCode::ParseError, "expected one point x;y;z");
  return pts[0];
}

double wire_curvature_scale(const PhysicalConstants& k, double current, double h) {
  return magnetic_coupling(k) * k.mu0 * std::abs(current) * h / (2.0 * std::numbers::pi);
}

}  // namespace emtopo::cli
