#include "gcw/bredon.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include "gcw/errors.hpp"

namespace gcw {

BredonComplex bredon_chain_complex(const EquivariantComplex& x) {
  RigidityReport rig = is_rigid(x);
  if (!rig.rigid) {
    std::string offenders;
    for (const RigidityOffender& o : rig.offenders) {
      if (!offenders.empty()) offenders += ", ";
      offenders += x.orbit_name(o.dim, o.orbit);
    }
    throw RigidityError(
        "Bredon homology requires a rigid complex; offending cells: " + offenders +
        ". Subdivide first (cmd: subdivide --method rfs).");
  }

  BredonComplex b;
  const int top = x.dimension();
  b.block_offset.resize(top + 1);
  b.block_rank.resize(top + 1);
  std::vector<std::vector<CharacterTablePtr>> tables(top + 1);
  for (int dim = 0; dim <= top; ++dim) {
    std::size_t offset = 0;
    for (int idx = 0; idx < x.orbit_count(dim); ++idx) {
      CharacterTablePtr t = character_table(x.orbit(dim, idx).stabilizer);
      b.block_offset[dim].push_back(offset);
      b.block_rank[dim].push_back(t->irreducible_count());
      tables[dim].push_back(t);
      offset += t->irreducible_count();
    }
    b.chain.sizes.push_back(offset);
  }
  b.chain.boundary.resize(top + 1);
  for (int dim = 1; dim <= top; ++dim) {
    IntMat d(b.chain.sizes[dim - 1], b.chain.sizes[dim]);
    for (int idx = 0; idx < x.orbit_count(dim); ++idx) {
      const OrbitCell& cell = x.orbit(dim, idx);
      for (const FaceRef& ref : cell.boundary) {
        // R_C(Stab sigma) -> R_C(Stab face) along h -> g^-1 h g
        GroupTablePtr face_stab = x.orbit(dim - 1, ref.orbit).stabilizer;
        Embedding embed = Embedding::conjugated_inclusion(cell.stabilizer, face_stab, ref.elt);
        RepRingMap block = induction_matrix(embed);
        std::size_t row0 = b.block_offset[dim - 1][ref.orbit];
        std::size_t col0 = b.block_offset[dim][idx];
        for (std::size_t i = 0; i < block.matrix.size(); ++i) {
          for (std::size_t j = 0; j < block.matrix[i].size(); ++j) {
            d.at(row0 + i, col0 + j) += ref.incidence * block.matrix[i][j];
          }
        }
      }
    }
    b.chain.boundary[dim] = std::move(d);
  }
  // invariant: consecutive differentials compose to zero
  for (int dim = 2; dim <= top; ++dim) {
    if (!(b.chain.boundary[dim - 1] * b.chain.boundary[dim]).is_zero()) {
      throw InternalError("Bredon differentials do not compose to zero");
    }
  }
  return b;
}

std::vector<HomologyGroup> bredon_homology(const EquivariantComplex& x) {
  return homology(bredon_chain_complex(x).chain);
}

EquivariantComplex torsion_subcomplex(const EquivariantComplex& x, long long ell,
                                      std::string* warning) {
  if (ell < 2) throw InputError("torsion subcomplex: the prime must be >= 2");
  for (long long d = 2; d * d <= ell; ++d) {
    if (ell % d == 0) throw InputError("torsion subcomplex: " + std::to_string(ell) +
                                       " is not prime");
  }
  if (warning) {
    *warning = is_rigid(x).rigid ? "" : "input complex is not rigid";
  }
  std::vector<std::vector<OrbitCell>> kept(x.dimension() + 1);
  std::vector<std::vector<int>> new_index(x.dimension() + 1);
  for (int dim = 0; dim <= x.dimension(); ++dim) {
    new_index[dim].assign(x.orbit_count(dim), -1);
    for (int idx = 0; idx < x.orbit_count(dim); ++idx) {
      const OrbitCell& cell = x.orbit(dim, idx);
      if (static_cast<long long>(cell.stabilizer->order()) % ell != 0) continue;
      new_index[dim][idx] = static_cast<int>(kept[dim].size());
      kept[dim].push_back(cell);
    }
  }
  for (int dim = 1; dim <= x.dimension(); ++dim) {
    for (OrbitCell& cell : kept[dim]) {
      std::vector<FaceRef> filtered;
      for (const FaceRef& ref : cell.boundary) {
        int ni = new_index[dim - 1][ref.orbit];
        if (ni < 0) continue;
        filtered.push_back({ni, ref.elt, ref.incidence});
      }
      cell.boundary = std::move(filtered);
    }
  }
  return EquivariantComplex(x.group(), std::move(kept), x.bounds());
}

GroupFingerprint fingerprint(const FiniteGroupTable& g) {
  GroupFingerprint fp;
  fp.order = static_cast<long long>(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) {
    fp.order_histogram.push_back(g.element_order(static_cast<int>(i)));
  }
  std::sort(fp.order_histogram.begin(), fp.order_histogram.end());
  fp.abelian_invariants = g.abelianization_invariants();
  fp.cyclic = g.is_abelian() && g.exponent() == fp.order;
  return fp;
}

std::string GroupFingerprint::name() const {
  if (order == 1) return "1";
  if (cyclic) return "C" + std::to_string(order);
  // compressed order histogram: 1,2^3,3^2 style
  std::ostringstream os;
  os << "[" << order << ";ords=";
  for (std::size_t i = 0; i < order_histogram.size();) {
    std::size_t j = i;
    while (j < order_histogram.size() && order_histogram[j] == order_histogram[i]) ++j;
    if (i) os << ",";
    os << order_histogram[i];
    if (j - i > 1) os << "^" << (j - i);
    i = j;
  }
  os << ";ab=";
  if (abelian_invariants.empty()) {
    os << "1";
  } else {
    for (std::size_t i = 0; i < abelian_invariants.size(); ++i) {
      os << (i ? "." : "") << abelian_invariants[i];
    }
  }
  os << "]";
  return os.str();
}

StabilizerCensus stabilizer_census(const EquivariantComplex& x) {
  StabilizerCensus census;
  census.dimensions = x.dimension() + 1;
  std::map<GroupFingerprint, std::size_t> row_of;
  std::vector<std::vector<ConcreteCell>> enumerated = enumerate_cells(x);
  std::vector<std::vector<std::size_t>> cells_per_orbit(x.dimension() + 1);
  for (int dim = 0; dim <= x.dimension(); ++dim) {
    cells_per_orbit[dim].assign(x.orbit_count(dim), 0);
    for (const ConcreteCell& c : enumerated[dim]) ++cells_per_orbit[dim][c.orbit];
  }
  for (int dim = 0; dim <= x.dimension(); ++dim) {
    for (int idx = 0; idx < x.orbit_count(dim); ++idx) {
      GroupFingerprint fp = fingerprint(*x.orbit(dim, idx).stabilizer);
      auto it = row_of.find(fp);
      if (it == row_of.end()) {
        it = row_of.emplace(fp, census.rows.size()).first;
        census.rows.push_back({fp, std::vector<std::size_t>(census.dimensions, 0),
                               std::vector<std::size_t>(census.dimensions, 0)});
      }
      census.rows[it->second].orbit_count[dim] += 1;
      census.rows[it->second].cell_count[dim] += cells_per_orbit[dim][idx];
    }
  }
  std::sort(census.rows.begin(), census.rows.end(),
            [](const StabilizerCensus::Row& a, const StabilizerCensus::Row& b) {
              return a.type < b.type;
            });
  return census;
}

std::string render_census(const StabilizerCensus& census) {
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> header{"stabilizer"};
  for (int d = 0; d < census.dimensions; ++d) header.push_back("dim " + std::to_string(d));
  table.push_back(header);
  bool any_fingerprint = false;
  for (const StabilizerCensus::Row& row : census.rows) {
    std::vector<std::string> line{row.type.name()};
    if (!row.type.cyclic && row.type.order > 1) any_fingerprint = true;
    for (int d = 0; d < census.dimensions; ++d) {
      line.push_back(std::to_string(row.orbit_count[d]) + "/" +
                     std::to_string(row.cell_count[d]));
    }
    table.push_back(std::move(line));
  }
  std::vector<std::size_t> width(table[0].size(), 0);
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  std::ostringstream os;
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      os << std::left << std::setw(static_cast<int>(width[i]) + 2) << line[i];
    }
    os << "\n";
  }
  os << "entries: orbits/cells";
  if (any_fingerprint) os << "; bracketed rows are fingerprints, not certified isomorphism types";
  os << "\n";
  return os.str();
}

}  // namespace gcw
