#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "emtopo/mesh.hpp"
#include "emtopo/rings.hpp"

namespace emtopo {

enum class Coefficients { Z, R };

/// One degree of (co)homology. For cohomology the generators are integer
/// cocycles stored as chains over the same simplex basis.
struct HomologyResult {
  int degree = 0;
  int betti = 0;
  std::vector<std::int64_t> torsion;  // invariant factors > 1
  std::vector<Chain> generators;      // one per free summand
};

/// Integer homology and cohomology of a complex in all degrees.
///
/// The chain complex is first shrunk by eliminating unit entries of the
/// boundary matrices (each elimination is a chain homotopy equivalence); the
/// small remainder is handled by Smith normal form and generators are carried
/// back through the recorded eliminations. Arithmetic runs in checked 64-bit
/// integers and restarts with arbitrary precision on overflow.
class HomologyEngine {
 public:
  explicit HomologyEngine(const SimplicialComplex& complex, std::int64_t threshold = kDefaultOverflowThreshold);
  ~HomologyEngine();
  HomologyEngine(HomologyEngine&&) noexcept;
  HomologyEngine& operator=(HomologyEngine&&) noexcept;

  int dimension() const;
  /// Results for degrees above the dimension are empty groups.
  const HomologyResult& homology(int k) const;
  const HomologyResult& cohomology(int k) const;

  /// Coordinates of the class of a cycle in the free generator basis
  /// (torsion parts are dropped). Throws NotACycle.
  std::vector<std::int64_t> homology_coordinates(const Chain& cycle) const;
  /// Same for an integer cocycle of degree k. Throws NotACycle.
  std::vector<std::int64_t> cohomology_coordinates(int k, std::span<const std::int64_t> cocycle) const;

  bool used_big_integers() const;
  /// Basis sizes of the reduced complex, per degree.
  std::vector<std::size_t> reduced_sizes() const;

  struct Impl;  // defined in the implementation file

 private:
  std::unique_ptr<Impl> impl_;
};

HomologyResult homology(const SimplicialComplex& complex, int k, Coefficients coefficients = Coefficients::Z);
HomologyResult cohomology(const SimplicialComplex& complex, int k, Coefficients coefficients = Coefficients::Z);

/// Betti numbers over R in every degree 0..dim (computed in F_p, p = 2^61 - 1).
std::vector<int> real_betti_numbers(const SimplicialComplex& complex);

/// Expresses the class of the 2-cycle (or cycle of any degree) `cycle` in the
/// basis given by `generators`, which must be cycles whose classes form a
/// basis of the free part. Throws NotACycle, or DegreeError when the
/// generators do not form such a basis or do not match the degree.
std::vector<std::int64_t> generators_pairing(const SimplicialComplex& complex, const Chain& cycle,
                                             const std::vector<Chain>& generators);

}  // namespace emtopo
