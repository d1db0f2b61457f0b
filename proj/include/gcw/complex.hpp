#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gcw/group_table.hpp"

namespace gcw {

struct GroupDescriptor {
  ElementKind kind = ElementKind::Matrix;
  int degree = 1;
  bool projective = false;

  GroupElement identity() const { return GroupElement::identity(kind, degree, projective); }
  bool operator==(const GroupDescriptor&) const = default;
};

/// Reference to a boundary cell: the concrete cell elt * orbit-representative
/// in the next dimension down, entering the boundary chain with the given
/// incidence.
struct FaceRef {
  int orbit;
  GroupElement elt;
  long long incidence;
};

/// One orbit of cells: a representative with its setwise stabilizer
/// (generators plus the closed table) and the boundary chain of the
/// representative.
struct OrbitCell {
  std::vector<GroupElement> stabilizer_gens;
  GroupTablePtr stabilizer;  // filled by the complex on construction
  std::vector<FaceRef> boundary;
  std::string label;
};

/// Concrete cell (orbit, g), identified with (orbit, g h) for h in the orbit
/// stabilizer; the stored element is the canonical least-key coset member.
struct ConcreteCell {
  int dim;
  int orbit;
  GroupElement elt;

  bool operator==(const ConcreteCell& o) const {
    return dim == o.dim && orbit == o.orbit && elt == o.elt;
  }
  auto operator<=>(const ConcreteCell& o) const {
    if (auto c = dim <=> o.dim; c != 0) return c;
    if (auto c = orbit <=> o.orbit; c != 0) return c;
    return elt <=> o.elt;
  }
};

struct Bounds {
  std::size_t stabilizer = FiniteGroupTable::kDefaultClosureBound;
  std::size_t cells = 10'000'000;
};

/// Orbit-indexed Gamma-equivariant CW complex. Immutable after construction;
/// all queries are read-only and safe for concurrent use.
class EquivariantComplex {
 public:
  EquivariantComplex() : cells_(1) {}  // empty complex (one empty dimension)
  EquivariantComplex(GroupDescriptor group, std::vector<std::vector<OrbitCell>> cells,
                     Bounds bounds = {});

  const GroupDescriptor& group() const { return group_; }
  int dimension() const { return static_cast<int>(cells_.size()) - 1; }
  const std::vector<std::vector<OrbitCell>>& cells() const { return cells_; }
  const OrbitCell& orbit(int dim, int idx) const { return cells_[dim][idx]; }
  int orbit_count(int dim) const {
    return dim >= 0 && dim <= dimension() ? static_cast<int>(cells_[dim].size()) : 0;
  }
  const Bounds& bounds() const { return bounds_; }

  std::string orbit_name(int dim, int idx) const;

  /// Canonical representative of the coset elt * Stab(orbit).
  GroupElement canonical_rep(int dim, int orbit, const GroupElement& elt) const;
  ConcreteCell concrete(int dim, int orbit, const GroupElement& elt) const;

  /// Canonicalized boundary chain entry: summed incidence plus the number of
  /// boundary references hitting the cell.
  struct FaceEntry {
    ConcreteCell cell;
    long long coeff;
    int count;
  };
  std::vector<FaceEntry> concrete_boundary(const ConcreteCell& c) const;

  /// All faces of a concrete cell including itself.
  std::vector<ConcreteCell> closure(const ConcreteCell& c) const;

 private:
  void validate() const;

  GroupDescriptor group_;
  std::vector<std::vector<OrbitCell>> cells_;
  Bounds bounds_;
};

/// Fixpoint closure of the orbit representatives under (a) boundary
/// references and, for finite (permutation) ambient groups, (b) the action of
/// the stabilizers of cells on the enumerated cells incident above them.
std::vector<std::vector<ConcreteCell>> enumerate_cells(const EquivariantComplex& x);
std::vector<std::size_t> cell_counts(const EquivariantComplex& x);

std::set<ConcreteCell> vertices_of_closure(const EquivariantComplex& x, const ConcreteCell& c);

/// Subgroup of the setwise stabilizer fixing every vertex of the closure of
/// the orbit representative. Normal in the stabilizer.
GroupTablePtr pointwise_stabilizer(const EquivariantComplex& x, int dim, int orbit);

struct RigidityOffender {
  int dim;
  int orbit;
  std::string label;
  GroupElement witness;
};

struct RigidityReport {
  bool rigid;
  std::vector<RigidityOffender> offenders;
};

RigidityReport is_rigid(const EquivariantComplex& x);

/// Partition of the concrete facets of an orbit representative into orbits
/// under its stabilizer; each facet comes with an element of the stabilizer
/// mapping the orbit's first member onto it.
struct FacetOrbit {
  std::vector<std::pair<ConcreteCell, GroupElement>> members;
};
std::vector<FacetOrbit> orbits_of_faces(const EquivariantComplex& x, int dim, int orbit);

/// Finite concrete subcomplex: cells grouped by dimension and closed under
/// faces, with the summed incidence chains.
struct ConcreteSubcomplex {
  std::vector<std::vector<ConcreteCell>> cells;  // indexed by absolute dimension
  std::map<ConcreteCell, std::vector<EquivariantComplex::FaceEntry>> faces;

  std::size_t total_cells() const;
  long long euler_characteristic() const;
};

ConcreteSubcomplex build_subcomplex(const EquivariantComplex& x,
                                    const std::vector<ConcreteCell>& generators);

}  // namespace gcw
