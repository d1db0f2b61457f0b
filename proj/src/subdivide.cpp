#include "gcw/subdivide.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <thread>
#include <tuple>

#include "gcw/errors.hpp"
#include "gcw/homology.hpp"

namespace gcw {

std::string method_name(SubdivisionMethod m) {
  switch (m) {
    case SubdivisionMethod::RFS: return "rfs";
    case SubdivisionMethod::VSS: return "vss";
    case SubdivisionMethod::Hybrid: return "hybrid";
    case SubdivisionMethod::Barycentric: return "barycentric";
  }
  return "?";
}

SubdivisionMethod method_from_name(const std::string& name) {
  if (name == "rfs") return SubdivisionMethod::RFS;
  if (name == "vss") return SubdivisionMethod::VSS;
  if (name == "hybrid") return SubdivisionMethod::Hybrid;
  if (name == "barycentric" || name == "bcs") return SubdivisionMethod::Barycentric;
  throw InputError("unknown subdivision method: " + name);
}

namespace {

// ---------------------------------------------------------------------------
// Working copy of a complex with stable orbit ids.

struct WRef {
  int target;  // stable orbit id one dimension down; < 0 encodes a plan-local
               // new orbit (index -1-target) until applied
  GroupElement elt;
  long long inc;
};

struct WOrbit {
  int dim;
  std::vector<GroupElement> stab_gens;
  GroupTablePtr stab;
  std::vector<WRef> boundary;
  std::string label;
  bool alive = true;
};

struct BCell {
  int dim;
  int orbit;  // stable id
  GroupElement elt;

  bool operator==(const BCell& o) const {
    return dim == o.dim && orbit == o.orbit && elt == o.elt;
  }
  auto operator<=>(const BCell& o) const {
    if (auto c = dim <=> o.dim; c != 0) return c;
    if (auto c = orbit <=> o.orbit; c != 0) return c;
    return elt <=> o.elt;
  }
};

struct BFace {
  BCell cell;
  long long coeff;
  int count;
};

struct Working {
  GroupDescriptor gd;
  Bounds bounds;
  std::vector<WOrbit> pool;
  std::vector<std::vector<int>> by_dim;  // all ids per dim in creation order
  // original orbit id -> partition pieces (new id, translate, incidence)
  std::map<int, std::vector<std::tuple<int, GroupElement, long long>>> replacement;

  explicit Working(const EquivariantComplex& x) : gd(x.group()), bounds(x.bounds()) {
    by_dim.resize(x.dimension() + 1);
    for (int dim = 0; dim <= x.dimension(); ++dim) {
      for (int idx = 0; idx < x.orbit_count(dim); ++idx) {
        const OrbitCell& c = x.orbit(dim, idx);
        WOrbit w{dim, c.stabilizer_gens, c.stabilizer, {}, c.label, true};
        for (const FaceRef& r : c.boundary) w.boundary.push_back({r.orbit, r.elt, r.incidence});
        by_dim[dim].push_back(static_cast<int>(pool.size()));
        pool.push_back(std::move(w));
      }
    }
    // rewrite boundary targets from per-dimension indices to stable ids
    for (int dim = 1; dim <= x.dimension(); ++dim) {
      for (int id : by_dim[dim]) {
        for (WRef& r : pool[id].boundary) r.target = by_dim[dim - 1][r.target];
      }
    }
  }

  GroupElement canon(int orbit, const GroupElement& elt) const {
    std::optional<GroupElement> best;
    for (const GroupElement& h : pool[orbit].stab->elements()) {
      GroupElement cand = elt * h;
      if (!best || cand < *best) best = std::move(cand);
    }
    return *best;
  }

  BCell bconcrete(int orbit, const GroupElement& elt) const {
    return BCell{pool[orbit].dim, orbit, canon(orbit, elt)};
  }

  std::vector<BFace> boundary_chain(const BCell& c) const {
    std::map<BCell, std::pair<long long, int>> acc;
    for (const WRef& r : pool[c.orbit].boundary) {
      auto& e = acc[bconcrete(r.target, c.elt * r.elt)];
      e.first += r.inc;
      e.second += 1;
    }
    std::vector<BFace> out;
    for (const auto& [cell, v] : acc) out.push_back({cell, v.first, v.second});
    return out;
  }

  std::vector<BCell> closure(const BCell& c) const {
    std::set<BCell> seen{c};
    std::vector<BCell> queue{c};
    while (!queue.empty()) {
      BCell cur = queue.back();
      queue.pop_back();
      if (cur.dim == 0) continue;
      for (const WRef& r : pool[cur.orbit].boundary) {
        BCell face = bconcrete(r.target, cur.elt * r.elt);
        if (seen.insert(face).second) queue.push_back(face);
      }
    }
    return {seen.begin(), seen.end()};
  }

  GroupTablePtr pointwise_stab(int sid) const {
    const WOrbit& o = pool[sid];
    std::vector<BCell> verts;
    for (const BCell& c : closure(BCell{o.dim, sid, canon(sid, gd.identity())})) {
      if (c.dim == 0) verts.push_back(c);
    }
    std::vector<GroupElement> fixing;
    for (const GroupElement& h : o.stab->elements()) {
      bool ok = true;
      for (const BCell& v : verts) {
        if (!(bconcrete(v.orbit, h * v.elt) == v)) {
          ok = false;
          break;
        }
      }
      if (ok) fixing.push_back(h);
    }
    return FiniteGroupTable::from_closed_elements(std::move(fixing));
  }

  bool orbit_rigid(int sid) const {
    return pointwise_stab(sid)->order() == pool[sid].stab->order();
  }

  std::string name(int sid) const {
    const WOrbit& o = pool[sid];
    std::string s = "dim " + std::to_string(o.dim) + " cell";
    if (!o.label.empty()) s += " (" + o.label + ")";
    return s;
  }
};

// ---------------------------------------------------------------------------
// Generic finite complex snapshot for the topology checks.

struct IndexedComplex {
  std::vector<int> dims;
  std::vector<std::vector<std::tuple<int, long long, int>>> faces;  // (idx, coeff, count)
  int top = -1;

  long long euler() const {
    long long chi = 0;
    for (int d : dims) chi += (d % 2 == 0) ? 1 : -1;
    return chi;
  }
};

IndexedComplex indexed_from_bcells(const Working& w, const std::set<BCell>& closed) {
  std::vector<BCell> cells(closed.begin(), closed.end());
  std::map<BCell, int> index;
  for (std::size_t i = 0; i < cells.size(); ++i) index[cells[i]] = static_cast<int>(i);
  IndexedComplex ic;
  for (const BCell& c : cells) {
    ic.dims.push_back(c.dim);
    ic.top = std::max(ic.top, c.dim);
    std::vector<std::tuple<int, long long, int>> fs;
    if (c.dim > 0) {
      for (const BFace& f : w.boundary_chain(c)) {
        auto it = index.find(f.cell);
        if (it == index.end()) throw InternalError("check complex is not face-closed");
        fs.push_back({it->second, f.coeff, f.count});
      }
    }
    ic.faces.push_back(std::move(fs));
  }
  return ic;
}

std::set<BCell> bcell_closure(const Working& w, const std::vector<BCell>& gens) {
  std::set<BCell> all;
  for (const BCell& g : gens) {
    for (const BCell& c : w.closure(g)) all.insert(c);
  }
  return all;
}

IndexedComplex indexed_from_subcomplex(const ConcreteSubcomplex& sub) {
  std::vector<ConcreteCell> cells;
  for (const auto& v : sub.cells) cells.insert(cells.end(), v.begin(), v.end());
  std::sort(cells.begin(), cells.end());
  std::map<ConcreteCell, int> index;
  for (std::size_t i = 0; i < cells.size(); ++i) index[cells[i]] = static_cast<int>(i);
  IndexedComplex ic;
  for (const ConcreteCell& c : cells) {
    ic.dims.push_back(c.dim);
    ic.top = std::max(ic.top, c.dim);
    std::vector<std::tuple<int, long long, int>> fs;
    auto it = sub.faces.find(c);
    if (it != sub.faces.end()) {
      for (const auto& e : it->second) fs.push_back({index.at(e.cell), e.coeff, e.count});
    }
    ic.faces.push_back(std::move(fs));
  }
  return ic;
}

bool indexed_connected(const IndexedComplex& ic) {
  const int n = static_cast<int>(ic.dims.size());
  if (n == 0) return false;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int i = 0; i < n; ++i) {
    for (const auto& [j, coeff, count] : ic.faces[i]) parent[find(i)] = find(j);
  }
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    if (find(i) == i) ++roots;
  }
  return roots == 1;
}

bool indexed_reduced_homology_trivial(const IndexedComplex& ic) {
  if (ic.dims.empty()) return false;
  const int top = ic.top;
  std::vector<std::vector<int>> by_dim(top + 1);
  std::vector<int> pos(ic.dims.size());
  for (std::size_t i = 0; i < ic.dims.size(); ++i) {
    pos[i] = static_cast<int>(by_dim[ic.dims[i]].size());
    by_dim[ic.dims[i]].push_back(static_cast<int>(i));
  }
  IntegerChainComplex c;
  for (int d = 0; d <= top; ++d) c.sizes.push_back(by_dim[d].size());
  c.boundary.resize(top + 1);
  for (int d = 1; d <= top; ++d) {
    IntMat m(c.sizes[d - 1], c.sizes[d]);
    for (std::size_t j = 0; j < by_dim[d].size(); ++j) {
      for (const auto& [fi, coeff, count] : ic.faces[by_dim[d][j]]) {
        m.at(pos[fi], j) += coeff;
      }
    }
    c.boundary[d] = std::move(m);
  }
  for (const HomologyGroup& h : homology(c)) {
    if (h.degree == 0) {
      if (h.betti != 1 || !h.torsion.empty()) return false;
    } else if (h.betti != 0 || !h.torsion.empty()) {
      return false;
    }
  }
  return true;
}

// Greedy free-face collapse; true iff the complex collapses to one vertex.
bool indexed_collapses_to_point(IndexedComplex ic, std::optional<int> drop_cell = {}) {
  const int n = static_cast<int>(ic.dims.size());
  std::vector<bool> alive(n, true);
  int alive_count = n;
  if (drop_cell) {
    alive[*drop_cell] = false;
    --alive_count;
  }
  // containers[i]: cells having i in their one-step boundary
  std::vector<std::vector<int>> containers(n);
  for (int i = 0; i < n; ++i) {
    for (const auto& [j, coeff, count] : ic.faces[i]) containers[j].push_back(i);
  }
  auto container_info = [&](int cell) {
    int the_container = -1, count = 0;
    for (int c : containers[cell]) {
      if (alive[c]) {
        the_container = c;
        ++count;
      }
    }
    return std::pair<int, int>(the_container, count);
  };
  bool progress = true;
  while (progress) {
    progress = false;
    for (int i = 0; i < n && !progress; ++i) {
      if (!alive[i]) continue;
      auto [kappa, cnt] = container_info(i);
      if (cnt != 1) continue;
      if (ic.dims[kappa] != ic.dims[i] + 1) continue;
      // i must sit in kappa's boundary once, regularly
      bool regular = false;
      for (const auto& [j, coeff, count] : ic.faces[kappa]) {
        if (j == i) {
          regular = (count == 1 && (coeff == 1 || coeff == -1));
          break;
        }
      }
      if (!regular) continue;
      if (container_info(kappa).second != 0) continue;  // kappa itself must be maximal
      alive[i] = alive[kappa] = false;
      alive_count -= 2;
      progress = true;
    }
  }
  if (alive_count != 1) return false;
  for (int i = 0; i < n; ++i) {
    if (alive[i]) return ic.dims[i] == 0;
  }
  return false;
}

bool indexed_contractible(const IndexedComplex& ic) {
  if (ic.dims.empty()) return false;
  if (ic.euler() != 1) return false;
  if (!indexed_reduced_homology_trivial(ic)) return false;
  return indexed_collapses_to_point(ic);
}

// chi(S^(m-2)) plus connectivity for sphere dimension >= 1; for the final
// facet additionally "S minus one top cell collapses to a point".
bool indexed_sphere_check(const IndexedComplex& ic, int m, bool final_facet) {
  long long expected = 1 + ((m % 2 == 0) ? 1 : -1);
  if (ic.euler() != expected) return false;
  if (m >= 3 && !indexed_connected(ic)) return false;
  if (final_facet) {
    if (ic.dims.empty()) return m == 1;
    int drop = -1;
    for (std::size_t i = 0; i < ic.dims.size(); ++i) {
      if (ic.dims[i] == ic.top) {
        drop = static_cast<int>(i);
        break;
      }
    }
    if (ic.dims.size() == 1) return true;  // a single vertex minus itself: nothing to check
    if (!indexed_collapses_to_point(ic, drop)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Subdivision of a single orbit cell.

struct NewOrbitSpec {
  int dim;
  std::vector<GroupElement> gens;
  GroupTablePtr stab;
  std::vector<WRef> boundary;  // negative targets index into the plan
  std::string label;
};

struct PartitionPlan {
  int sid = -1;
  bool identity = false;
  std::vector<NewOrbitSpec> new_orbits;
  std::vector<std::tuple<int, GroupElement, long long>> replacement;  // negative targets
  std::size_t piece_count = 1;
  std::vector<int> fundamental;  // plan-local indices of F / F_j
  int barycenter = -1;           // plan-local index
  std::string warning;
};

// Cone bookkeeping for one subdivided cell: orbits of boundary cells under
// the cell stabilizer, each carrying a cone one dimension up.
struct ConeBuilder {
  const Working& w;
  int sid;
  const FiniteGroupTable& stab;

  struct ConeClass {
    BCell rep;
    GroupTablePtr cone_stab;  // Stab(rep) n Stab(sigma)
    int plan_index = -1;      // filled when orbits are emitted
  };
  std::map<BCell, int> class_of;  // canonical member cell -> class id
  std::vector<ConeClass> classes;

  ConeBuilder(const Working& w_, int sid_) : w(w_), sid(sid_), stab(*w_.pool[sid_].stab) {}

  // Registers the Gamma_sigma-orbit of cell (and, recursively, of the faces of
  // its representative, which the cone boundary references).
  int ensure_class(const BCell& cell) {
    auto it = class_of.find(cell);
    if (it != class_of.end()) return it->second;
    // collect the orbit
    std::vector<BCell> members;
    BCell rep = cell;
    for (const GroupElement& h : stab.elements()) {
      BCell moved = w.bconcrete(cell.orbit, h * cell.elt);
      members.push_back(moved);
      if (moved < rep) rep = moved;
    }
    int id = static_cast<int>(classes.size());
    GroupTablePtr rep_stab = conjugate_subgroup(*w.pool[rep.orbit].stab, rep.elt);
    classes.push_back({rep, intersection(*rep_stab, stab), -1});
    for (const BCell& m : members) class_of[m] = id;
    if (rep.dim > 0) {
      for (const BFace& f : w.boundary_chain(rep)) ensure_class(f.cell);
    }
    return id;
  }

  // Cone cell over `cell` as (class, translate): translate maps the class rep
  // onto `cell`; canonical modulo the cone stabilizer.
  std::pair<int, GroupElement> cone_ref(const BCell& cell) const {
    int cls = class_of.at(cell);
    const ConeClass& cc = classes[cls];
    for (const GroupElement& h : stab.elements()) {
      if (w.bconcrete(cell.orbit, h * cc.rep.elt) == cell) return {cls, h};
    }
    throw InternalError("cone_ref: cell not in its registered orbit");
  }

  GroupElement canon_cone(int cls, const GroupElement& g) const {
    std::optional<GroupElement> best;
    for (const GroupElement& h : classes[cls].cone_stab->elements()) {
      GroupElement cand = g * h;
      if (!best || cand < *best) best = std::move(cand);
    }
    return *best;
  }
};

// Formal boundary chain of a cone or a merged union of cones:
// a base part (facet cells of sigma), a cone part and an apex coefficient.
struct ConeChain {
  std::map<BCell, long long> base;
  std::map<BCell, long long> cone;  // keyed by the underlying boundary cell
  long long apex = 0;
};

// d(cone(tau)) = tau - sum_rho [tau:rho] cone(rho); cone over a vertex has
// the barycenter with coefficient -1.
void add_cone_boundary(const Working& w, const BCell& tau, long long scale, ConeChain& out) {
  out.base[tau] += scale;
  if (tau.dim == 0) {
    out.apex -= scale;
    return;
  }
  for (const BFace& f : w.boundary_chain(tau)) out.cone[f.cell] -= scale * f.coeff;
}

// Emits the barycenter and one cone orbit per registered class into the plan.
// classes are emitted in (dim, rep) order; plan-local indices recorded.
void emit_cone_orbits(const Working& w, int sid, ConeBuilder& cb, PartitionPlan& plan) {
  const WOrbit& sigma = w.pool[sid];
  NewOrbitSpec bary;
  bary.dim = 0;
  bary.gens = sigma.stab_gens;
  bary.stab = sigma.stab;
  bary.label = sigma.label.empty() ? "bary" : sigma.label + ".bary";
  plan.barycenter = static_cast<int>(plan.new_orbits.size());
  plan.new_orbits.push_back(std::move(bary));

  std::vector<int> order(cb.classes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (cb.classes[a].rep.dim != cb.classes[b].rep.dim) {
      return cb.classes[a].rep.dim < cb.classes[b].rep.dim;
    }
    return cb.classes[a].rep < cb.classes[b].rep;
  });
  for (int cls : order) {
    ConeBuilder::ConeClass& cc = cb.classes[cls];
    NewOrbitSpec cone;
    cone.dim = cc.rep.dim + 1;
    cone.gens = {cc.cone_stab->elements().begin(), cc.cone_stab->elements().end()};
    cone.stab = cc.cone_stab;
    cone.label = (sigma.label.empty() ? "cone" : sigma.label + ".cone") + std::to_string(cls);
    cc.plan_index = static_cast<int>(plan.new_orbits.size());
    plan.new_orbits.push_back(std::move(cone));
  }
  // boundaries need every class index, so fill them in a second pass
  for (int cls : order) {
    ConeBuilder::ConeClass& cc = cb.classes[cls];
    NewOrbitSpec& spec = plan.new_orbits[cc.plan_index];
    spec.boundary.push_back({cc.rep.orbit, cc.rep.elt, 1});
    if (cc.rep.dim == 0) {
      spec.boundary.push_back({-1 - plan.barycenter, w.gd.identity(), -1});
    } else {
      for (const BFace& f : w.boundary_chain(cc.rep)) {
        auto [fcls, gamma] = cb.cone_ref(f.cell);
        spec.boundary.push_back({-1 - cb.classes[fcls].plan_index, gamma, -f.coeff});
      }
    }
  }
}

struct FacetData {
  std::vector<BCell> facets;                       // sorted
  std::map<BCell, long long> incidence;            // summed
  std::vector<std::vector<std::pair<BCell, GroupElement>>> orbits;  // by least member
};

FacetData facet_data(const Working& w, int sid) {
  const WOrbit& sigma = w.pool[sid];
  FacetData fd;
  std::map<BCell, long long> inc;
  for (const WRef& r : sigma.boundary) {
    inc[w.bconcrete(r.target, r.elt)] += r.inc;
  }
  fd.incidence = inc;
  for (const auto& [c, v] : inc) fd.facets.push_back(c);

  std::set<BCell> facet_set(fd.facets.begin(), fd.facets.end());
  std::set<BCell> assigned;
  for (const BCell& seed : fd.facets) {
    if (assigned.count(seed)) continue;
    std::vector<std::pair<BCell, GroupElement>> members;
    std::set<BCell> seen;
    for (const GroupElement& h : sigma.stab->elements()) {
      BCell moved = w.bconcrete(seed.orbit, h * seed.elt);
      if (!facet_set.count(moved)) {
        throw InputError("stabilizer fails to permute the facets of " + w.name(sid));
      }
      if (seen.insert(moved).second) members.push_back({moved, h});
    }
    std::sort(members.begin(), members.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // re-anchor mapping elements to the least member
    const BCell& rep = members.front().first;
    for (auto& [cell, gamma] : members) {
      for (const GroupElement& h : sigma.stab->elements()) {
        if (w.bconcrete(rep.orbit, h * rep.elt) == cell) {
          gamma = h;
          break;
        }
      }
    }
    for (const auto& [cell, gamma] : members) assigned.insert(cell);
    fd.orbits.push_back(std::move(members));
  }
  std::sort(fd.orbits.begin(), fd.orbits.end(),
            [](const auto& a, const auto& b) { return a.front().first < b.front().first; });
  return fd;
}

// Sorts the facets of sigma into orbits and accumulates the fundamental
// domain T, one facet per orbit, subject to Algorithm 2's topology checks.
std::vector<BCell> accumulate_rfs_domain(const Working& w, int sid, const FacetData& fd, int m) {
  const std::size_t k = fd.orbits.size();
  std::vector<BCell> t{fd.orbits[0].front().first};
  if (k == 1) return t;
  std::deque<std::size_t> pending;
  for (std::size_t o = 1; o < k; ++o) pending.push_back(o);

  while (t.size() < k) {
    bool progress = false;
    for (std::size_t round = pending.size(); round > 0; --round) {
      std::size_t o = pending.front();
      pending.pop_front();
      bool accepted = false;
      for (const auto& [tau, gamma] : fd.orbits[o]) {
        std::vector<BCell> candidate = t;
        candidate.push_back(tau);
        std::set<BCell> closed = bcell_closure(w, candidate);
        IndexedComplex u = indexed_from_bcells(w, closed);
        if (u.euler() != 1) continue;  // vanishing reduced Euler characteristic
        if (!indexed_contractible(u)) continue;
        // boundary S: (m-2)-cells lying in exactly one facet of T u {tau}
        std::map<BCell, int> facet_count;
        for (const BCell& f : candidate) {
          for (const BFace& bf : w.boundary_chain(f)) facet_count[bf.cell] += bf.count;
        }
        std::vector<BCell> s_cells;
        for (const auto& [cell, cnt] : facet_count) {
          if (cnt == 1) s_cells.push_back(cell);
        }
        bool final_facet = (t.size() == k - 1);
        IndexedComplex s = indexed_from_bcells(w, bcell_closure(w, s_cells));
        if (!indexed_sphere_check(s, m, final_facet)) continue;
        t.push_back(tau);
        accepted = true;
        progress = true;
        break;
      }
      if (!accepted) pending.push_back(o);
      if (accepted) break;
    }
    if (!progress) {
      throw AlgorithmError("RFS hypothesis failure: no facet choice passes the checks at " +
                           w.name(sid));
    }
  }
  return t;
}

PartitionPlan plan_rfs(const Working& w, int sid);
PartitionPlan plan_vss(const Working& w, int sid);

PartitionPlan plan_identity(int sid) {
  PartitionPlan plan;
  plan.sid = sid;
  plan.identity = true;
  plan.piece_count = 1;
  return plan;
}

PartitionPlan plan_rfs(const Working& w, int sid) {
  const WOrbit& sigma = w.pool[sid];
  const int m = sigma.dim;
  GroupTablePtr pw = w.pointwise_stab(sid);
  const std::size_t index = sigma.stab->order() / pw->order();
  if (index == 1) return plan_identity(sid);

  FacetData fd = facet_data(w, sid);
  for (const auto& orbit : fd.orbits) {
    if (orbit.size() != index) {
      throw InputError("facet orbit size does not equal [stabilizer : pointwise] at " +
                       w.name(sid) + " (invalid complex)");
    }
  }
  for (const BCell& f : fd.facets) {
    if (fd.incidence.at(f) != 1 && fd.incidence.at(f) != -1) {
      throw AlgorithmError("RFS requires regular (+-1) facet incidences at " + w.name(sid));
    }
  }

  std::vector<BCell> t = accumulate_rfs_domain(w, sid, fd, m);

  PartitionPlan plan;
  plan.sid = sid;
  plan.piece_count = index;

  // d F as the boundary of sum_{tau in T} [sigma:tau] cone(tau), normalized
  // so the first facet of T enters F's boundary with incidence +1
  const long long orient = fd.incidence.at(t.front());
  ConeChain chain;
  for (const BCell& tau : t) add_cone_boundary(w, tau, orient * fd.incidence.at(tau), chain);

  ConeBuilder cb(w, sid);
  std::vector<std::pair<BCell, long long>> rim;  // S with signed coefficients
  for (const auto& [cell, coeff] : chain.cone) {
    if (coeff == 0) continue;
    rim.push_back({cell, coeff});
    cb.ensure_class(cell);
  }
  emit_cone_orbits(w, sid, cb, plan);

  // F itself
  NewOrbitSpec f;
  f.dim = m;
  std::vector<GroupElement> f_stab_elements;
  for (const GroupElement& h : sigma.stab->elements()) {
    bool fixes = true;
    for (const BCell& tau : t) {
      if (!(w.bconcrete(tau.orbit, h * tau.elt) == tau)) {
        fixes = false;
        break;
      }
    }
    if (fixes) f_stab_elements.push_back(h);
  }
  f.stab = FiniteGroupTable::from_closed_elements(f_stab_elements);
  f.gens = f_stab_elements;
  if (f.stab->order() != pw->order()) {
    throw AlgorithmError("fundamental domain stabilizer differs from the pointwise stabilizer at " +
                         w.name(sid));
  }
  f.label = sigma.label.empty() ? "rfs" : sigma.label + ".rfs";
  for (const BCell& tau : t) {
    f.boundary.push_back({tau.orbit, tau.elt, orient * fd.incidence.at(tau)});
  }
  for (const auto& [cell, coeff] : rim) {
    auto [cls, gamma] = cb.cone_ref(cell);
    f.boundary.push_back({-1 - cb.classes[cls].plan_index, gamma, coeff});
  }
  if (chain.apex != 0) {
    f.boundary.push_back({-1 - plan.barycenter, w.gd.identity(), chain.apex});
  }
  int f_index = static_cast<int>(plan.new_orbits.size());
  plan.new_orbits.push_back(std::move(f));
  plan.fundamental = {f_index};

  // Partition translates and their signs, anchored at the first facet of T:
  // with d F normalized above, gamma F enters the chain of sigma with the
  // incidence of the translated anchor facet.
  CosetList cosets = left_cosets(sigma.stab, pw);
  const BCell& tau0 = t.front();
  std::vector<std::pair<GroupElement, long long>> translates;
  for (const GroupElement& gamma : cosets.representatives) {
    BCell moved = w.bconcrete(tau0.orbit, gamma * tau0.elt);
    translates.push_back({gamma, fd.incidence.at(moved)});
  }

  // Verification: the translated copies of dF must sum to the facet chain of
  // sigma with every interior cone cell cancelling.
  {
    std::map<BCell, long long> facet_sum;
    std::map<std::pair<int, GroupElement>, long long> cone_sum;
    long long apex_sum = 0;
    for (const auto& [gamma, ct] : translates) {
      for (const auto& [tau, c] : chain.base) {
        facet_sum[w.bconcrete(tau.orbit, gamma * tau.elt)] += ct * c;
      }
      for (const auto& [cell, coeff] : rim) {
        auto [cls, g0] = cb.cone_ref(cell);
        cone_sum[{cls, cb.canon_cone(cls, gamma * g0)}] += ct * coeff;
      }
      apex_sum += ct * chain.apex;
    }
    bool ok = (apex_sum == 0);
    for (const auto& [key, v] : cone_sum) {
      if (v != 0) ok = false;
    }
    if (ok) {
      for (const BCell& fc : fd.facets) {
        long long got = facet_sum.count(fc) ? facet_sum.at(fc) : 0;
        if (got != fd.incidence.at(fc)) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) {
      throw AlgorithmError("RFS orientation consistency check failed at " + w.name(sid));
    }
  }

  for (const auto& [gamma, ct] : translates) {
    plan.replacement.push_back({-1 - f_index, gamma, ct});
  }
  return plan;
}

PartitionPlan plan_vss(const Working& w, int sid) {
  const WOrbit& sigma = w.pool[sid];
  const int m = sigma.dim;
  GroupTablePtr pw = w.pointwise_stab(sid);
  const std::size_t index = sigma.stab->order() / pw->order();

  FacetData fd = facet_data(w, sid);
  for (const auto& orbit : fd.orbits) {
    if (orbit.size() != index) {
      throw InputError("facet orbit size does not equal [stabilizer : pointwise] at " +
                       w.name(sid) + " (invalid complex)");
    }
  }

  PartitionPlan plan;
  plan.sid = sid;
  plan.piece_count = fd.facets.size();

  ConeBuilder cb(w, sid);
  std::vector<ConeChain> chains(fd.orbits.size());
  for (std::size_t j = 0; j < fd.orbits.size(); ++j) {
    const BCell& tau = fd.orbits[j].front().first;
    add_cone_boundary(w, tau, 1, chains[j]);
    for (const auto& [cell, coeff] : chains[j].cone) cb.ensure_class(cell);
  }
  emit_cone_orbits(w, sid, cb, plan);

  std::vector<int> f_indices;
  for (std::size_t j = 0; j < fd.orbits.size(); ++j) {
    const BCell& tau = fd.orbits[j].front().first;
    NewOrbitSpec f;
    f.dim = m;
    std::vector<GroupElement> f_stab_elements;
    for (const GroupElement& h : sigma.stab->elements()) {
      if (w.bconcrete(tau.orbit, h * tau.elt) == tau) f_stab_elements.push_back(h);
    }
    f.stab = FiniteGroupTable::from_closed_elements(f_stab_elements);
    f.gens = f_stab_elements;
    f.label = (sigma.label.empty() ? "vss" : sigma.label + ".vss") + std::to_string(j);
    f.boundary.push_back({tau.orbit, tau.elt, 1});
    for (const auto& [cell, coeff] : chains[j].cone) {
      if (coeff == 0) continue;
      auto [cls, gamma] = cb.cone_ref(cell);
      f.boundary.push_back({-1 - cb.classes[cls].plan_index, gamma, coeff});
    }
    if (chains[j].apex != 0) {
      f.boundary.push_back({-1 - plan.barycenter, w.gd.identity(), chains[j].apex});
    }
    f_indices.push_back(static_cast<int>(plan.new_orbits.size()));
    plan.new_orbits.push_back(std::move(f));
  }
  plan.fundamental = f_indices;

  // The interior cones cancel iff d^2 = 0 holds at sigma; a violation means
  // broken orientations in the input.
  {
    std::map<BCell, long long> acc;
    for (const BCell& phi : fd.facets) {
      long long c = fd.incidence.at(phi);
      if (c == 0) continue;
      for (const BFace& f : w.boundary_chain(phi)) acc[f.cell] += c * f.coeff;
    }
    for (const auto& [cell, v] : acc) {
      if (v != 0) {
        throw InputError("boundary orientation error (d^2 != 0) at " + w.name(sid));
      }
    }
  }

  // Replacement: every concrete facet phi contributes its cone with the
  // incidence of phi in d sigma.
  for (std::size_t j = 0; j < fd.orbits.size(); ++j) {
    for (const auto& [phi, gamma] : fd.orbits[j]) {
      plan.replacement.push_back({-1 - f_indices[j], gamma, fd.incidence.at(phi)});
    }
  }
  return plan;
}

void apply_plan(Working& w, const PartitionPlan& plan) {
  if (plan.identity) return;
  const int m = w.pool[plan.sid].dim;
  std::vector<int> real_ids;
  for (const NewOrbitSpec& spec : plan.new_orbits) {
    int id = static_cast<int>(w.pool.size());
    real_ids.push_back(id);
    WOrbit o{spec.dim, spec.gens, spec.stab, spec.boundary, spec.label, true};
    w.pool.push_back(std::move(o));
    w.by_dim[spec.dim].push_back(id);
  }
  auto resolve = [&](int target) { return target >= 0 ? target : real_ids[-1 - target]; };
  for (int id : real_ids) {
    for (WRef& r : w.pool[id].boundary) r.target = resolve(r.target);
  }
  w.pool[plan.sid].alive = false;

  std::vector<std::tuple<int, GroupElement, long long>> repl;
  for (const auto& [target, elt, inc] : plan.replacement) {
    repl.push_back({resolve(target), elt, inc});
  }
  w.replacement[plan.sid] = repl;

  if (m + 1 < static_cast<int>(w.by_dim.size())) {
    for (int id : w.by_dim[m + 1]) {
      WOrbit& o = w.pool[id];
      if (!o.alive) continue;
      std::vector<WRef> updated;
      for (const WRef& r : o.boundary) {
        if (r.target != plan.sid) {
          updated.push_back(r);
          continue;
        }
        for (const auto& [target, gamma, inc] : repl) {
          updated.push_back({target, r.elt * gamma, r.inc * inc});
        }
      }
      o.boundary = std::move(updated);
    }
  }
}

struct Finalized {
  EquivariantComplex complex;
  std::map<int, std::pair<int, int>> index_of;  // stable id -> (dim, final idx)
};

Finalized finalize(const Working& w) {
  std::map<int, std::pair<int, int>> index_of;
  std::vector<std::vector<OrbitCell>> cells(w.by_dim.size());
  for (int dim = 0; dim < static_cast<int>(w.by_dim.size()); ++dim) {
    for (int id : w.by_dim[dim]) {
      if (!w.pool[id].alive) continue;
      index_of[id] = {dim, static_cast<int>(cells[dim].size())};
      cells[dim].push_back({});
    }
  }
  for (int dim = 0; dim < static_cast<int>(w.by_dim.size()); ++dim) {
    for (int id : w.by_dim[dim]) {
      if (!w.pool[id].alive) continue;
      const WOrbit& o = w.pool[id];
      OrbitCell& cell = cells[dim][index_of[id].second];
      cell.stabilizer_gens = o.stab_gens;
      cell.stabilizer = o.stab;
      cell.label = o.label;
      for (const WRef& r : o.boundary) {
        cell.boundary.push_back({index_of.at(r.target).second, r.elt, r.inc});
      }
    }
  }
  return Finalized{EquivariantComplex(w.gd, std::move(cells), w.bounds), std::move(index_of)};
}

std::vector<std::vector<ConcreteCell>> tracked_region(const EquivariantComplex& input,
                                                      const Working& w, const Finalized& fin) {
  // stable ids of the input orbits, in (dim, idx) order as created by Working
  std::vector<std::vector<int>> original_ids(input.dimension() + 1);
  int next = 0;
  for (int dim = 0; dim <= input.dimension(); ++dim) {
    for (int idx = 0; idx < input.orbit_count(dim); ++idx) original_ids[dim].push_back(next++);
  }
  const EquivariantComplex& out = fin.complex;
  std::set<ConcreteCell> cells;
  std::vector<ConcreteCell> queue;
  auto insert = [&](const ConcreteCell& c) {
    if (cells.insert(c).second) queue.push_back(c);
  };
  std::vector<std::vector<ConcreteCell>> input_cells = enumerate_cells(input);
  for (int dim = 0; dim <= input.dimension(); ++dim) {
    for (const ConcreteCell& c : input_cells[dim]) {
      int sid = original_ids[dim][c.orbit];
      if (w.pool[sid].alive) {
        auto [fd, fi] = fin.index_of.at(sid);
        insert(out.concrete(fd, fi, c.elt));
      } else {
        for (const auto& [target, gamma, inc] : w.replacement.at(sid)) {
          auto [fd, fi] = fin.index_of.at(target);
          insert(out.concrete(fd, fi, c.elt * gamma));
        }
      }
    }
  }
  while (!queue.empty()) {
    ConcreteCell cur = queue.back();
    queue.pop_back();
    if (cur.dim == 0) continue;
    for (const auto& e : out.concrete_boundary(cur)) insert(e.cell);
  }
  std::vector<std::vector<ConcreteCell>> region(out.dimension() + 1);
  for (const ConcreteCell& c : cells) region[c.dim].push_back(c);
  return region;
}

std::vector<std::size_t> region_counts(const std::vector<std::vector<ConcreteCell>>& region) {
  std::vector<std::size_t> counts;
  for (const auto& v : region) counts.push_back(v.size());
  return counts;
}

}  // namespace

SubdivisionResult rigidify(const EquivariantComplex& x, SubdivisionMethod method,
                           SubdivisionOptions opts) {
  if (method == SubdivisionMethod::Hybrid) return hybrid(x, opts);
  Working w(x);
  std::vector<std::string> warnings;
  const int top = x.dimension();
  for (int m = 1; m <= top; ++m) {
    std::vector<int> snapshot;
    for (int id : w.by_dim[m]) {
      if (w.pool[id].alive) snapshot.push_back(id);
    }
    // decide which cells to subdivide
    std::vector<int> work;
    for (int id : snapshot) {
      if (method == SubdivisionMethod::Barycentric || !w.orbit_rigid(id)) work.push_back(id);
    }
    // plan phase (parallelizable: plans only read the working complex)
    std::vector<PartitionPlan> plans(work.size());
    auto plan_one = [&](std::size_t i) {
      int id = work[i];
      if (method == SubdivisionMethod::RFS) {
        try {
          plans[i] = plan_rfs(w, id);
        } catch (const AlgorithmError& e) {
          if (!opts.allow_fallback) throw;
          plans[i] = plan_vss(w, id);
          plans[i].warning = std::string("RFS fell back to VSS: ") + e.what();
        }
      } else {
        plans[i] = plan_vss(w, id);
      }
    };
    if (opts.jobs > 1 && work.size() > 1) {
      std::vector<std::thread> threads;
      std::atomic<std::size_t> cursor{0};
      int jobs = std::min<int>(opts.jobs, static_cast<int>(work.size()));
      for (int j = 0; j < jobs; ++j) {
        threads.emplace_back([&] {
          for (std::size_t i = cursor.fetch_add(1); i < work.size(); i = cursor.fetch_add(1)) {
            plan_one(i);
          }
        });
      }
      for (auto& th : threads) th.join();
    } else {
      for (std::size_t i = 0; i < work.size(); ++i) plan_one(i);
    }
    // apply in deterministic orbit order
    for (PartitionPlan& plan : plans) {
      if (!plan.warning.empty()) warnings.push_back(plan.warning);
      apply_plan(w, plan);
    }
  }
  Finalized fin = finalize(w);
  std::vector<std::vector<ConcreteCell>> region = tracked_region(x, w, fin);
  std::vector<std::size_t> counts = region_counts(region);
  return SubdivisionResult{std::move(fin.complex), std::move(warnings), std::move(region),
                           std::move(counts)};
}

SubdivisionResult hybrid(const EquivariantComplex& x, SubdivisionOptions opts) {
  Working w(x);
  std::vector<std::string> warnings;
  const int top = x.dimension();
  for (int m = 1; m <= top; ++m) {
    std::vector<int> snapshot;
    for (int id : w.by_dim[m]) {
      if (w.pool[id].alive && !w.orbit_rigid(id)) snapshot.push_back(id);
    }
    for (int id : snapshot) {
      PartitionPlan plan;
      if (m < top) {
        try {
          plan = plan_rfs(w, id);
        } catch (const AlgorithmError& e) {
          if (!opts.allow_fallback) throw;
          plan = plan_vss(w, id);
          plan.warning = std::string("RFS fell back to VSS: ") + e.what();
        }
      } else {
        plan = plan_vss(w, id);
      }
      if (!plan.warning.empty()) warnings.push_back(plan.warning);
      apply_plan(w, plan);
    }
  }
  Finalized fin = finalize(w);
  std::vector<std::vector<ConcreteCell>> region = tracked_region(x, w, fin);
  std::vector<std::size_t> counts = region_counts(region);
  return SubdivisionResult{std::move(fin.complex), std::move(warnings), std::move(region),
                           std::move(counts)};
}

namespace {

CellPartition single_cell(const EquivariantComplex& x, int dim, int orbit, bool use_rfs) {
  if (dim < 1 || dim > x.dimension() || orbit < 0 || orbit >= x.orbit_count(dim)) {
    throw InputError("single-cell subdivision: no such cell");
  }
  Working w(x);
  int sid = -1;
  {
    int next = 0;
    for (int d = 0; d <= x.dimension(); ++d) {
      for (int i = 0; i < x.orbit_count(d); ++i, ++next) {
        if (d == dim && i == orbit) sid = next;
      }
    }
  }
  // facets must already be rigid
  for (const BFace& f : w.boundary_chain(w.bconcrete(sid, x.group().identity()))) {
    if (!w.orbit_rigid(f.cell.orbit)) {
      throw InputError("cell subdivision requires rigid facets; facet " + w.name(f.cell.orbit) +
                       " is not rigid");
    }
  }
  CellPartition out;
  if (use_rfs && w.orbit_rigid(sid)) {
    out.identity = true;
    out.piece_count = 1;
    out.result = x;
    return out;
  }
  PartitionPlan plan = use_rfs ? plan_rfs(w, sid) : plan_vss(w, sid);
  std::vector<int> plan_to_real;
  {
    int base = static_cast<int>(w.pool.size());
    for (std::size_t i = 0; i < plan.new_orbits.size(); ++i) {
      plan_to_real.push_back(base + static_cast<int>(i));
    }
  }
  apply_plan(w, plan);
  Finalized fin = finalize(w);
  out.identity = plan.identity;
  out.piece_count = plan.piece_count;
  for (int pi : plan.fundamental) out.fundamental_orbits.push_back(fin.index_of.at(plan_to_real[pi]).second);
  if (plan.barycenter >= 0) {
    out.barycenter_orbit = fin.index_of.at(plan_to_real[plan.barycenter]).second;
  }
  for (const auto& [target, elt, inc] : plan.replacement) {
    int real = target >= 0 ? target : plan_to_real[-1 - target];
    out.replacement.push_back({fin.index_of.at(real).second, elt, inc});
  }
  for (int real : plan_to_real) {
    out.new_orbits.push_back(fin.index_of.at(real));
  }
  out.result = std::move(fin.complex);
  return out;
}

}  // namespace

CellPartition rfs_cell(const EquivariantComplex& x, int dim, int orbit) {
  return single_cell(x, dim, orbit, true);
}

CellPartition vss_cell(const EquivariantComplex& x, int dim, int orbit) {
  return single_cell(x, dim, orbit, false);
}

EnvelopeResult cone_envelope(const EquivariantComplex& x, int dim, int orbit,
                             const std::vector<ConcreteCell>& t) {
  if (t.empty()) throw InputError("cone_envelope: empty facet list");
  Working w(x);
  int sid = -1;
  {
    int next = 0;
    for (int d = 0; d <= x.dimension(); ++d) {
      for (int i = 0; i < x.orbit_count(d); ++i, ++next) {
        if (d == dim && i == orbit) sid = next;
      }
    }
  }
  FacetData fd = facet_data(w, sid);
  std::vector<BCell> tb;
  for (const ConcreteCell& c : t) {
    // translate a ConcreteCell of x into working coordinates
    int face_sid = -1, next = 0;
    for (int d = 0; d <= x.dimension(); ++d) {
      for (int i = 0; i < x.orbit_count(d); ++i, ++next) {
        if (d == c.dim && i == c.orbit) face_sid = next;
      }
    }
    BCell b = w.bconcrete(face_sid, c.elt);
    if (!fd.incidence.count(b)) {
      throw InputError("cone_envelope: listed cell is not a facet of the target cell");
    }
    tb.push_back(b);
  }
  // adjacency connectivity of T via shared faces
  {
    std::vector<int> parent(tb.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    std::map<BCell, int> first_owner;
    for (std::size_t i = 0; i < tb.size(); ++i) {
      for (const BCell& c : w.closure(tb[i])) {
        auto [it, inserted] = first_owner.emplace(c, static_cast<int>(i));
        if (!inserted) parent[find(static_cast<int>(i))] = find(it->second);
      }
    }
    int roots = 0;
    for (std::size_t i = 0; i < tb.size(); ++i) {
      if (find(static_cast<int>(i)) == static_cast<int>(i)) ++roots;
    }
    if (roots != 1) throw InputError("cone_envelope: facet list is not connected by adjacency");
  }

  PartitionPlan plan;
  plan.sid = sid;
  ConeChain chain;
  for (const BCell& tau : tb) {
    long long c = fd.incidence.at(tau);
    add_cone_boundary(w, tau, c == 0 ? 1 : c, chain);
  }
  ConeBuilder cb(w, sid);
  // rim: one-facet cells by reference count (Algorithm 3's uniqueness rule)
  std::map<BCell, int> facet_count;
  for (const BCell& f : tb) {
    for (const BFace& bf : w.boundary_chain(f)) facet_count[bf.cell] += bf.count;
  }
  std::vector<std::pair<BCell, long long>> rim;
  for (const auto& [cell, cnt] : facet_count) {
    if (cnt != 1) continue;
    long long coeff = chain.cone.count(cell) ? chain.cone.at(cell) : 0;
    rim.push_back({cell, coeff});
    cb.ensure_class(cell);
  }
  emit_cone_orbits(w, sid, cb, plan);

  NewOrbitSpec f;
  f.dim = dim;
  std::vector<GroupElement> f_stab_elements;
  for (const GroupElement& h : w.pool[sid].stab->elements()) {
    bool fixes = true;
    for (const BCell& tau : tb) {
      if (!(w.bconcrete(tau.orbit, h * tau.elt) == tau)) {
        fixes = false;
        break;
      }
    }
    if (fixes) f_stab_elements.push_back(h);
  }
  f.stab = FiniteGroupTable::from_closed_elements(f_stab_elements);
  f.gens = f_stab_elements;
  f.label = "envelope";
  for (const BCell& tau : tb) f.boundary.push_back({tau.orbit, tau.elt, fd.incidence.at(tau)});
  for (const auto& [cell, coeff] : rim) {
    auto [cls, gamma] = cb.cone_ref(cell);
    f.boundary.push_back({-1 - cb.classes[cls].plan_index, gamma, coeff});
  }
  if (chain.apex != 0) f.boundary.push_back({-1 - plan.barycenter, w.gd.identity(), chain.apex});
  int f_index = static_cast<int>(plan.new_orbits.size());
  plan.new_orbits.push_back(std::move(f));

  // append without replacing sigma
  std::vector<int> plan_to_real;
  int base = static_cast<int>(w.pool.size());
  for (std::size_t i = 0; i < plan.new_orbits.size(); ++i) {
    plan_to_real.push_back(base + static_cast<int>(i));
  }
  for (const NewOrbitSpec& spec : plan.new_orbits) {
    int id = static_cast<int>(w.pool.size());
    WOrbit o{spec.dim, spec.gens, spec.stab, spec.boundary, spec.label, true};
    w.pool.push_back(std::move(o));
    w.by_dim[spec.dim].push_back(id);
  }
  for (int id = base; id < static_cast<int>(w.pool.size()); ++id) {
    for (WRef& r : w.pool[id].boundary) {
      if (r.target < 0) r.target = plan_to_real[-1 - r.target];
    }
  }
  Finalized fin = finalize(w);
  EnvelopeResult out;
  out.base_facets = tb.size();
  out.rim_cells = rim.size();
  out.f_orbit = fin.index_of.at(plan_to_real[f_index]).second;
  out.barycenter_orbit = fin.index_of.at(plan_to_real[plan.barycenter]).second;
  out.result = std::move(fin.complex);
  return out;
}

bool contractible_check(const ConcreteSubcomplex& sub) {
  return indexed_contractible(indexed_from_subcomplex(sub));
}

bool sphere_boundary_check(const ConcreteSubcomplex& s, int m, bool final_facet) {
  return indexed_sphere_check(indexed_from_subcomplex(s), m, final_facet);
}

}  // namespace gcw
