#include "gcw/complex.hpp"

#include <algorithm>
#include <queue>

#include "gcw/errors.hpp"

namespace gcw {

EquivariantComplex::EquivariantComplex(GroupDescriptor group,
                                       std::vector<std::vector<OrbitCell>> cells, Bounds bounds)
    : group_(group), cells_(std::move(cells)), bounds_(bounds) {
  while (!cells_.empty() && cells_.back().empty()) cells_.pop_back();
  if (cells_.empty()) cells_.push_back({});
  for (auto& dim_cells : cells_) {
    for (OrbitCell& c : dim_cells) {
      if (!c.stabilizer) {
        c.stabilizer = FiniteGroupTable::generate(c.stabilizer_gens, group_.kind, group_.degree,
                                                  group_.projective, bounds_.stabilizer);
      }
    }
  }
  validate();
}

std::string EquivariantComplex::orbit_name(int dim, int idx) const {
  std::string name = "dim " + std::to_string(dim) + " orbit " + std::to_string(idx);
  const std::string& label = cells_[dim][idx].label;
  if (!label.empty()) name += " (" + label + ")";
  return name;
}

void EquivariantComplex::validate() const {
  for (int dim = 0; dim <= dimension(); ++dim) {
    for (int idx = 0; idx < orbit_count(dim); ++idx) {
      const OrbitCell& cell = cells_[dim][idx];
      for (const GroupElement& g : cell.stabilizer_gens) {
        if (g.kind() != group_.kind || g.degree() != group_.degree ||
            g.projective() != group_.projective) {
          throw InputError("stabilizer generator signature mismatch at " + orbit_name(dim, idx));
        }
      }
      if (dim == 0) {
        if (!cell.boundary.empty()) {
          throw InputError("dimension-0 orbit has a nonempty boundary at " + orbit_name(dim, idx));
        }
        continue;
      }
      for (const FaceRef& ref : cell.boundary) {
        if (ref.orbit < 0 || ref.orbit >= orbit_count(dim - 1)) {
          throw InputError("boundary reference to a nonexistent orbit at " + orbit_name(dim, idx));
        }
        if (ref.elt.kind() != group_.kind || ref.elt.degree() != group_.degree ||
            ref.elt.projective() != group_.projective) {
          throw InputError("boundary element signature mismatch at " + orbit_name(dim, idx));
        }
      }
      // The stabilizer must permute the boundary set.
      std::set<ConcreteCell> boundary_set;
      for (const FaceRef& ref : cell.boundary) {
        boundary_set.insert(concrete(dim - 1, ref.orbit, ref.elt));
      }
      for (const GroupElement& h : cell.stabilizer->elements()) {
        for (const FaceRef& ref : cell.boundary) {
          ConcreteCell moved = concrete(dim - 1, ref.orbit, h * ref.elt);
          if (!boundary_set.count(moved)) {
            throw InputError("stabilizer does not permute the boundary of " +
                             orbit_name(dim, idx));
          }
        }
      }
    }
  }
}

GroupElement EquivariantComplex::canonical_rep(int dim, int orbit, const GroupElement& elt) const {
  const FiniteGroupTable& stab = *cells_[dim][orbit].stabilizer;
  std::optional<GroupElement> best;
  for (const GroupElement& h : stab.elements()) {
    GroupElement cand = elt * h;
    if (!best || cand < *best) best = std::move(cand);
  }
  return *best;
}

ConcreteCell EquivariantComplex::concrete(int dim, int orbit, const GroupElement& elt) const {
  return ConcreteCell{dim, orbit, canonical_rep(dim, orbit, elt)};
}

std::vector<EquivariantComplex::FaceEntry> EquivariantComplex::concrete_boundary(
    const ConcreteCell& c) const {
  std::map<ConcreteCell, std::pair<long long, int>> acc;
  for (const FaceRef& ref : cells_[c.dim][c.orbit].boundary) {
    auto& entry = acc[concrete(c.dim - 1, ref.orbit, c.elt * ref.elt)];
    entry.first += ref.incidence;
    entry.second += 1;
  }
  std::vector<FaceEntry> out;
  for (const auto& [cell, cc] : acc) out.push_back({cell, cc.first, cc.second});
  return out;
}

std::vector<ConcreteCell> EquivariantComplex::closure(const ConcreteCell& c) const {
  std::set<ConcreteCell> seen{c};
  std::vector<ConcreteCell> queue{c};
  while (!queue.empty()) {
    ConcreteCell cur = queue.back();
    queue.pop_back();
    if (cur.dim == 0) continue;
    for (const FaceRef& ref : cells_[cur.dim][cur.orbit].boundary) {
      ConcreteCell face = concrete(cur.dim - 1, ref.orbit, cur.elt * ref.elt);
      if (seen.insert(face).second) queue.push_back(face);
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<std::vector<ConcreteCell>> enumerate_cells(const EquivariantComplex& x) {
  const std::size_t bound = x.bounds().cells;
  std::set<ConcreteCell> cells;
  std::vector<ConcreteCell> queue;
  auto insert = [&](const ConcreteCell& c) {
    if (cells.insert(c).second) {
      if (cells.size() > bound) {
        throw ResourceError("cell enumeration exceeds the bound of " + std::to_string(bound) +
                            " cells");
      }
      queue.push_back(c);
    }
  };
  for (int dim = 0; dim <= x.dimension(); ++dim) {
    for (int idx = 0; idx < x.orbit_count(dim); ++idx) {
      insert(x.concrete(dim, idx, x.group().identity()));
    }
  }
  // (a) boundary-reference closure
  auto close_boundaries = [&] {
    while (!queue.empty()) {
      ConcreteCell cur = queue.back();
      queue.pop_back();
      if (cur.dim == 0) continue;
      for (const auto& entry : x.concrete_boundary(cur)) insert(entry.cell);
    }
  };
  close_boundaries();

  // (b) stabilizer action on incident higher cells. Only meaningful to
  // saturate for finite ambient groups; permutation groups are finite while
  // matrix groups may not be, in which case the enumeration reports the
  // closure of the representatives (the fundamental region).
  if (x.group().kind == ElementKind::Permutation) {
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<ConcreteCell> snapshot(cells.begin(), cells.end());
      std::map<ConcreteCell, std::vector<ConcreteCell>> closures;
      for (const ConcreteCell& z : snapshot) closures[z] = x.closure(z);
      for (const ConcreteCell& z : snapshot) {
        for (const ConcreteCell& face : closures[z]) {
          if (face.dim >= z.dim) continue;
          const FiniteGroupTable& stab = *x.cells()[face.dim][face.orbit].stabilizer;
          GroupElement gi = face.elt.inverse();
          for (const GroupElement& s : stab.elements()) {
            GroupElement h = face.elt * s * gi;
            std::size_t before = cells.size();
            insert(x.concrete(z.dim, z.orbit, h * z.elt));
            if (cells.size() != before) grew = true;
          }
        }
      }
      close_boundaries();
    }
  }

  std::vector<std::vector<ConcreteCell>> out(x.dimension() + 1);
  for (const ConcreteCell& c : cells) out[c.dim].push_back(c);
  return out;
}

std::vector<std::size_t> cell_counts(const EquivariantComplex& x) {
  std::vector<std::size_t> counts;
  for (const auto& dim_cells : enumerate_cells(x)) counts.push_back(dim_cells.size());
  return counts;
}

std::set<ConcreteCell> vertices_of_closure(const EquivariantComplex& x, const ConcreteCell& c) {
  std::set<ConcreteCell> out;
  for (const ConcreteCell& cell : x.closure(c)) {
    if (cell.dim == 0) out.insert(cell);
  }
  return out;
}

GroupTablePtr pointwise_stabilizer(const EquivariantComplex& x, int dim, int orbit) {
  const OrbitCell& cell = x.orbit(dim, orbit);
  ConcreteCell rep = x.concrete(dim, orbit, x.group().identity());
  std::set<ConcreteCell> vertices = vertices_of_closure(x, rep);
  std::vector<GroupElement> fixing;
  for (const GroupElement& h : cell.stabilizer->elements()) {
    bool fixes_all = true;
    for (const ConcreteCell& v : vertices) {
      if (!(x.concrete(0, v.orbit, h * v.elt) == v)) {
        fixes_all = false;
        break;
      }
    }
    if (fixes_all) fixing.push_back(h);
  }
  return FiniteGroupTable::from_closed_elements(std::move(fixing));
}

RigidityReport is_rigid(const EquivariantComplex& x) {
  RigidityReport report{true, {}};
  for (int dim = 0; dim <= x.dimension(); ++dim) {
    for (int idx = 0; idx < x.orbit_count(dim); ++idx) {
      const OrbitCell& cell = x.orbit(dim, idx);
      GroupTablePtr pw = pointwise_stabilizer(x, dim, idx);
      if (pw->order() == cell.stabilizer->order()) continue;
      report.rigid = false;
      GroupElement witness = x.group().identity();
      for (const GroupElement& h : cell.stabilizer->elements()) {
        if (!pw->contains(h)) {
          witness = h;
          break;
        }
      }
      report.offenders.push_back({dim, idx, cell.label, witness});
    }
  }
  return report;
}

std::vector<FacetOrbit> orbits_of_faces(const EquivariantComplex& x, int dim, int orbit) {
  if (dim < 1) throw InputError("orbits_of_faces requires a cell of dimension >= 1");
  const OrbitCell& cell = x.orbit(dim, orbit);
  const FiniteGroupTable& stab = *cell.stabilizer;

  std::set<ConcreteCell> facets;
  for (const FaceRef& ref : cell.boundary) {
    facets.insert(x.concrete(dim - 1, ref.orbit, ref.elt));
  }
  std::set<ConcreteCell> assigned;
  std::vector<FacetOrbit> orbits;
  for (const ConcreteCell& seed : facets) {
    if (assigned.count(seed)) continue;
    FacetOrbit fo;
    std::set<ConcreteCell> members;
    for (const GroupElement& h : stab.elements()) {
      ConcreteCell moved = x.concrete(dim - 1, seed.orbit, h * seed.elt);
      if (!facets.count(moved)) {
        throw InputError("stabilizer fails to permute the facets of " + x.orbit_name(dim, orbit));
      }
      if (members.insert(moved).second) fo.members.push_back({moved, h});
    }
    std::sort(fo.members.begin(), fo.members.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [m, h] : fo.members) assigned.insert(m);
    orbits.push_back(std::move(fo));
  }
  // deterministic: orbits by least member (seeds iterated in sorted order, but
  // a later seed can belong to an earlier orbit; sort to be safe)
  std::sort(orbits.begin(), orbits.end(), [](const FacetOrbit& a, const FacetOrbit& b) {
    return a.members.front().first < b.members.front().first;
  });
  return orbits;
}

std::size_t ConcreteSubcomplex::total_cells() const {
  std::size_t n = 0;
  for (const auto& v : cells) n += v.size();
  return n;
}

long long ConcreteSubcomplex::euler_characteristic() const {
  long long chi = 0;
  long long sign = 1;
  for (const auto& v : cells) {
    chi += sign * static_cast<long long>(v.size());
    sign = -sign;
  }
  return chi;
}

ConcreteSubcomplex build_subcomplex(const EquivariantComplex& x,
                                    const std::vector<ConcreteCell>& generators) {
  std::set<ConcreteCell> all;
  for (const ConcreteCell& g : generators) {
    for (const ConcreteCell& c : x.closure(g)) all.insert(c);
  }
  ConcreteSubcomplex sub;
  sub.cells.resize(x.dimension() + 1);
  for (const ConcreteCell& c : all) {
    sub.cells[c.dim].push_back(c);
    if (c.dim > 0) sub.faces[c] = x.concrete_boundary(c);
  }
  while (!sub.cells.empty() && sub.cells.back().empty()) sub.cells.pop_back();
  return sub;
}

}  // namespace gcw
