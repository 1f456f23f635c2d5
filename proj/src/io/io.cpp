#include "emtopo/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "emtopo/error.hpp"

namespace emtopo::io {

namespace {

// Proper faces (as sorted vertex tuples) of a sorted simplex.
void add_faces(const std::vector<std::int32_t>& s, std::set<std::vector<std::int32_t>>& out) {
  const int n = static_cast<int>(s.size());
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    std::vector<std::int32_t> f;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) f.push_back(s[i]);
    out.insert(std::move(f));
  }
}

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::IoError, std::string("malformed ") + what + ": " + e.what());
  }
}

Json complex_array(const std::vector<std::array<Complex, 3>>& v) {
  Json a = Json::array();
  for (const auto& n : v)
    for (const auto& z : n) a.push_back({z.real(), z.imag()});
  return a;
}

Json complex_array(const std::vector<std::array<Complex, 4>>& v) {
  Json a = Json::array();
  for (const auto& n : v)
    for (const auto& z : n) a.push_back({z.real(), z.imag()});
  return a;
}

}  // namespace

Json mesh_to_json(const SimplicialComplex& K) {
  Json j;
  j["vertices"] = Json::array();
  for (const auto& v : K.vertices()) j["vertices"].push_back({v[0], v[1], v[2]});
  Json simp = Json::object();
  for (int d = 0; d <= K.dimension(); ++d) {
    Json list = Json::array();
    for (std::size_t i = 0; i < K.count(d); ++i) {
      const auto s = K.simplex(d, i);
      std::vector<std::int32_t> v(s.begin(), s.end());
      if (K.orientation(d, i) < 0 && v.size() >= 2) std::swap(v[0], v[1]);
      if (d == 0)
        list.push_back(v[0]);
      else
        list.push_back(v);
    }
    simp[std::to_string(d)] = std::move(list);
  }
  j["simplices"] = std::move(simp);
  return j;
}

SimplicialComplex mesh_from_json(const Json& j) {
  return guarded("mesh", [&] {
    if (!j.contains("vertices") || !j.contains("simplices")) fail(ErrorCode::IoError, "mesh needs vertices and simplices");
    std::vector<Point3> verts;
    for (const auto& v : j.at("vertices")) {
      if (v.size() != 3) fail(ErrorCode::IoError, "vertex needs three coordinates");
      verts.push_back({v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
    }
    std::map<int, std::vector<std::vector<std::int32_t>>> listed;
    for (const auto& [key, list] : j.at("simplices").items()) {
      const int d = std::stoi(key);
      if (d < 0 || d > kMaxDim) fail(ErrorCode::IoError, "simplex dimension out of range: " + key);
      for (const auto& s : list) {
        std::vector<std::int32_t> t;
        if (s.is_array())
          for (const auto& x : s) t.push_back(x.get<std::int32_t>());
        else
          t.push_back(s.get<std::int32_t>());
        if (static_cast<int>(t.size()) != d + 1) fail(ErrorCode::IoError, "simplex size does not match its dimension");
        listed[d].push_back(std::move(t));
      }
    }
    // Keep only simplices that are not faces of listed higher simplices.
    std::set<std::vector<std::int32_t>> implied;
    std::vector<std::vector<std::int32_t>> top;
    for (int d = kMaxDim; d >= 0; --d) {
      for (auto& s : listed[d]) {
        auto sorted = s;
        std::sort(sorted.begin(), sorted.end());
        if (implied.count(sorted)) continue;
        top.push_back(s);
      }
      for (auto& s : listed[d]) {
        auto sorted = s;
        std::sort(sorted.begin(), sorted.end());
        add_faces(sorted, implied);
      }
    }
    return build_complex(std::move(verts), top);
  });
}

Json to_json(const HomologyResult& r) {
  Json j;
  j["degree"] = r.degree;
  j["betti"] = r.betti;
  j["torsion"] = r.torsion;
  Json gens = Json::array();
  for (const auto& g : r.generators) {
    Json pairs = Json::array();
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g.coeffs[i] != 0) pairs.push_back({i, g.coeffs[i]});
    gens.push_back(std::move(pairs));
  }
  j["generators"] = std::move(gens);
  return j;
}

Json to_json(const Cochain& c) {
  Json j;
  j["degree"] = c.degree;
  j["values"] = c.values;
  return j;
}

Cochain cochain_from_json(const Json& j) {
  return guarded("cochain", [&] {
    Cochain c;
    c.degree = j.at("degree").get<int>();
    c.values = j.at("values").get<std::vector<double>>();
    return c;
  });
}

Json to_json(const EdgeConnection& c) {
  Json j;
  Json edges = Json::array();
  for (std::size_t e = 0; e < c.complex->count(1); ++e) {
    const auto s = c.complex->simplex(1, e);
    edges.push_back({s[0], s[1]});
  }
  j["edges"] = std::move(edges);
  j["theta"] = c.theta;
  return j;
}

EdgeConnection connection_from_json(const Json& j, std::shared_ptr<const SimplicialComplex> complex) {
  return guarded("connection", [&] {
    const auto& edges = j.at("edges");
    const auto theta = j.at("theta").get<std::vector<double>>();
    if (edges.size() != theta.size()) fail(ErrorCode::IoError, "edges and theta differ in length");
    if (edges.size() != complex->count(1)) fail(ErrorCode::IoError, "connection edge count differs from the mesh");
    EdgeConnection c{complex, std::vector<double>(complex->count(1), 0.0)};
    std::vector<char> seen(c.theta.size(), 0);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto a = edges[i].at(0).get<std::int32_t>(), b = edges[i].at(1).get<std::int32_t>();
      const auto e = complex->find_edge(a, b);
      if (!e) fail(ErrorCode::IoError, "connection edge not in the mesh");
      if (seen[*e]++) fail(ErrorCode::IoError, "connection lists an edge twice");
      c.theta[*e] = a < b ? theta[i] : -theta[i];
    }
    return c;
  });
}

Json to_json(const BundleClass& b) {
  Json j;
  j["chern"] = b.chern;
  j["characters"] = b.characters ? Json(*b.characters) : Json(nullptr);
  j["flat"] = b.flat;
  return j;
}

Json to_json(const GridSpec& g) {
  Json j;
  j["t0"] = g.t0;
  j["dt"] = g.dt;
  j["origin"] = g.space.origin;
  j["h"] = g.space.h;
  j["shape"] = {g.nt, g.space.n[0], g.space.n[1], g.space.n[2]};
  return j;
}

Json to_json(const PhotonSection& s) {
  Json j;
  j["grid"] = to_json(s.grid);
  j["polarity"] = s.polarity == Polarity::Plus ? "+" : "-";
  j["components"] = 3;
  j["values"] = complex_array(s.omega);
  return j;
}

Json to_json(const SpinorSection& s) {
  Json j;
  j["grid"] = to_json(s.grid);
  j["mass"] = s.mass;
  j["components"] = 4;
  j["values"] = complex_array(s.psi);
  return j;
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::IoError, path + ": " + e.what());
  }
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  out << j.dump(2) << '\n';
}

SimplicialComplex load_mesh(const std::string& path) { return mesh_from_json(read_file(path)); }

void save_mesh(const SimplicialComplex& K, const std::string& path) { write_file(path, mesh_to_json(K)); }

}  // namespace emtopo::io
