#pragma once

#include <string>
#include <vector>

#include "gcw/complex.hpp"

namespace gcw {

enum class SubdivisionMethod { RFS, VSS, Hybrid, Barycentric };

std::string method_name(SubdivisionMethod m);
SubdivisionMethod method_from_name(const std::string& name);

struct SubdivisionOptions {
  bool allow_fallback = true;  // substitute VSS for a cell when RFS's hypotheses fail
  int jobs = 1;                // intra-dimension parallelism; output is order-independent
};

struct SubdivisionResult {
  EquivariantComplex complex;
  std::vector<std::string> warnings;
  /// Cells of the subdivided input region per dimension: images of the
  /// input's enumerated cells under the partition refinement, closed under
  /// boundaries. These are the counts reported in the method-comparison
  /// tables, and the carrier for homology-invariance checks when the ambient
  /// group is infinite.
  std::vector<std::vector<ConcreteCell>> tracked_cells;
  std::vector<std::size_t> tracked_cell_counts;
};

/// Outer-shell pass: subdivides non-rigid orbit representatives dimension by
/// dimension (1..n) and propagates each replacement into the boundaries one
/// dimension up. Barycentric subdivides every cell unconditionally.
SubdivisionResult rigidify(const EquivariantComplex& x, SubdivisionMethod method,
                           SubdivisionOptions opts = {});

/// RFS below the top dimension, VSS on top-dimensional cells.
SubdivisionResult hybrid(const EquivariantComplex& x, SubdivisionOptions opts = {});

/// Result of subdividing one orbit cell (facets must already be rigid).
struct CellPartition {
  bool identity = false;      // cell was already rigid; P = {sigma}
  std::size_t piece_count = 1;  // top cells in the partition P
  /// Orbit indices (in `result`, at the subdivided cell's dimension) of the
  /// fundamental-domain cell(s): one merged cell for RFS, one cone per facet
  /// orbit for VSS.
  std::vector<int> fundamental_orbits;
  int barycenter_orbit = -1;  // index in result's dimension-0 list
  /// Replacement chain: a FaceRef (orbit, elt, incidence) to the subdivided
  /// cell becomes (replacement[i].orbit, elt * replacement[i].elt,
  /// incidence * replacement[i].incidence) summed over i.
  std::vector<FaceRef> replacement;
  /// Every new orbit as (dimension, orbit index in `result`).
  std::vector<std::pair<int, int>> new_orbits;
  EquivariantComplex result;  // the complex with just this cell replaced
};

/// Rigid Facets Subdivision of one cell; throws AlgorithmError ("RFS
/// hypothesis failure") when no facet choice passes the topology checks.
CellPartition rfs_cell(const EquivariantComplex& x, int dim, int orbit);

/// Virtually Simplicial Subdivision of one cell: cones every facet orbit to
/// the barycenter. Subdivides unconditionally when invoked.
CellPartition vss_cell(const EquivariantComplex& x, int dim, int orbit);

/// Constructs the merged cone F over the facet list T inside the cell
/// (dim, orbit); the result complex keeps the original cell and appends the
/// barycenter, the rim cones e(s) and F itself.
struct EnvelopeResult {
  std::size_t base_facets;  // |T|
  std::size_t rim_cells;    // |S|
  int f_orbit;              // index of F in result's dimension-dim list
  int barycenter_orbit;     // index in result's dimension-0 list
  EquivariantComplex result;
};
EnvelopeResult cone_envelope(const EquivariantComplex& x, int dim, int orbit,
                             const std::vector<ConcreteCell>& t);

/// Conservative contractibility: reduced-homology-zero pre-filter followed by
/// greedy free-face collapse to a single vertex. False negatives possible,
/// false positives not.
bool contractible_check(const ConcreteSubcomplex& sub);

/// Naive Euler characteristic of an (m-2)-sphere, plus (for the final facet)
/// the conservative simple-connectivity surrogate: the subcomplex minus one
/// top cell must collapse to a point. Includes a connectivity pre-filter for
/// spheres of dimension >= 1.
bool sphere_boundary_check(const ConcreteSubcomplex& s, int m, bool final_facet = false);

}  // namespace gcw
