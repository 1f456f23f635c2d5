#pragma once

// JSON serialization of the library's data types.

#include <json.hpp>
#include <memory>
#include <string>

#include "emtopo/bundle.hpp"
#include "emtopo/forms.hpp"
#include "emtopo/homology.hpp"
#include "emtopo/mesh.hpp"
#include "emtopo/semiclassical.hpp"

namespace emtopo::io {

using Json = nlohmann::ordered_json;

/// {"vertices": [[x,y,z],...], "simplices": {"0": [...], "1": [[i,j],...], ...}}
/// in canonical order; negatively oriented simplices are written with their
/// first two vertices swapped.
Json mesh_to_json(const SimplicialComplex& K);
/// Accepts full or top-simplices-only files. Throws IoError for malformed
/// input, plus the build_complex errors.
SimplicialComplex mesh_from_json(const Json& j);

/// generators are lists of [simplex_index, coeff] pairs.
Json to_json(const HomologyResult& r);

Json to_json(const Cochain& c);
Cochain cochain_from_json(const Json& j);

/// {"edges": [[i,j],...], "theta": [...]} in canonical edge order.
Json to_json(const EdgeConnection& c);
/// Edges may come in any order or orientation; a reversed edge negates its
/// angle. Throws IoError when the edge set differs from the complex's.
EdgeConnection connection_from_json(const Json& j, std::shared_ptr<const SimplicialComplex> complex);

Json to_json(const BundleClass& b);

Json to_json(const GridSpec& g);
/// Complex values as [re, im] pairs, flattened in grid order.
Json to_json(const PhotonSection& s);
Json to_json(const SpinorSection& s);

Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& j);
SimplicialComplex load_mesh(const std::string& path);
void save_mesh(const SimplicialComplex& K, const std::string& path);

}  // namespace emtopo::io
