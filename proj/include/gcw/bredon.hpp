#pragma once

#include <string>
#include <vector>

#include "gcw/character.hpp"
#include "gcw/complex.hpp"
#include "gcw/homology.hpp"

namespace gcw {

/// Bredon chain complex with coefficients in the complex representation ring:
/// degree-n group = direct sum over n-cell orbits of Z^(#irreducibles of the
/// stabilizer); differentials assembled from conjugated induction maps scaled
/// by incidences. Requires a rigid complex.
struct BredonComplex {
  /// block offset of each orbit inside its degree; block rank = number of
  /// conjugacy classes of the orbit stabilizer
  std::vector<std::vector<std::size_t>> block_offset;
  std::vector<std::vector<std::size_t>> block_rank;
  IntegerChainComplex chain;
};

BredonComplex bredon_chain_complex(const EquivariantComplex& x);
std::vector<HomologyGroup> bredon_homology(const EquivariantComplex& x);

/// Subcomplex of orbit cells whose stabilizer order is divisible by the prime
/// ell; boundary references to removed cells are dropped. Returns a warning
/// string (empty if none) through `warning` when the input is not rigid.
EquivariantComplex torsion_subcomplex(const EquivariantComplex& x, long long ell,
                                      std::string* warning = nullptr);

/// Isomorphism fingerprint of a finite group: order, element-order multiset
/// and the abelian invariants of the abelianization. Distinguishes all
/// stabilizer types appearing in the studied complexes, but is not a
/// certified isomorphism class.
struct GroupFingerprint {
  long long order;
  std::vector<long long> order_histogram;  // multiset of element orders, sorted
  std::vector<long long> abelian_invariants;
  bool cyclic;

  bool operator==(const GroupFingerprint&) const = default;
  auto operator<=>(const GroupFingerprint&) const = default;
  std::string name() const;  // "1", "C6", or a fingerprint literal
};

GroupFingerprint fingerprint(const FiniteGroupTable& g);

/// Rows = stabilizer fingerprints, columns = cell dimension, entries = orbit
/// counts and enumerated cell counts.
struct StabilizerCensus {
  struct Row {
    GroupFingerprint type;
    std::vector<std::size_t> orbit_count;  // per dimension
    std::vector<std::size_t> cell_count;
  };
  std::vector<Row> rows;  // sorted by fingerprint
  int dimensions;
};

StabilizerCensus stabilizer_census(const EquivariantComplex& x);
std::string render_census(const StabilizerCensus& census);

}  // namespace gcw
