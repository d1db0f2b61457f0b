#include "gcw/homology.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "gcw/errors.hpp"

namespace gcw {

namespace {

void verify_d_squared(const IntegerChainComplex& c,
                      const std::vector<std::vector<ConcreteCell>>* basis) {
  for (std::size_t k = 2; k < c.boundary.size(); ++k) {
    IntMat prod = c.boundary[k - 1] * c.boundary[k];
    if (prod.is_zero()) continue;
    std::string detail;
    if (basis) {
      for (std::size_t i = 0; i < prod.rows() && detail.empty(); ++i) {
        for (std::size_t j = 0; j < prod.cols(); ++j) {
          if (prod.at(i, j) != 0) {
            detail = ": d o d != 0 between " + std::to_string(k) + "-cell #" + std::to_string(j) +
                     " and " + std::to_string(k - 2) + "-cell #" + std::to_string(i);
            break;
          }
        }
      }
    }
    throw InputError("boundary orientation error (d^2 != 0) in degree " + std::to_string(k) +
                     detail);
  }
}

}  // namespace

SpaceChainComplex chain_complex_of_space(const EquivariantComplex& x) {
  return chain_complex_from_basis(x, enumerate_cells(x));
}

SpaceChainComplex chain_complex_from_basis(const EquivariantComplex& x,
                                           std::vector<std::vector<ConcreteCell>> basis) {
  SpaceChainComplex out;
  out.basis = std::move(basis);
  const int top = static_cast<int>(out.basis.size()) - 1;
  std::vector<std::map<ConcreteCell, std::size_t>> index(top + 1);
  for (int d = 0; d <= top; ++d) {
    for (std::size_t i = 0; i < out.basis[d].size(); ++i) index[d][out.basis[d][i]] = i;
    out.chain.sizes.push_back(out.basis[d].size());
  }
  out.chain.boundary.resize(top + 1);
  for (int d = 1; d <= top; ++d) {
    IntMat m(out.chain.sizes[d - 1], out.chain.sizes[d]);
    for (std::size_t j = 0; j < out.basis[d].size(); ++j) {
      for (const auto& entry : x.concrete_boundary(out.basis[d][j])) {
        auto it = index[d - 1].find(entry.cell);
        if (it == index[d - 1].end()) {
          throw InternalError("enumerated cell set is not closed under boundaries");
        }
        m.at(it->second, j) += entry.coeff;
      }
    }
    out.chain.boundary[d] = std::move(m);
  }
  verify_d_squared(out.chain, &out.basis);
  return out;
}

IntegerChainComplex chain_complex_of_subcomplex(const ConcreteSubcomplex& sub) {
  IntegerChainComplex c;
  const int top = static_cast<int>(sub.cells.size()) - 1;
  std::vector<std::map<ConcreteCell, std::size_t>> index(top + 1);
  for (int d = 0; d <= top; ++d) {
    for (std::size_t i = 0; i < sub.cells[d].size(); ++i) index[d][sub.cells[d][i]] = i;
    c.sizes.push_back(sub.cells[d].size());
  }
  c.boundary.resize(top + 1);
  for (int d = 1; d <= top; ++d) {
    IntMat m(c.sizes[d - 1], c.sizes[d]);
    for (std::size_t j = 0; j < sub.cells[d].size(); ++j) {
      auto it = sub.faces.find(sub.cells[d][j]);
      if (it == sub.faces.end()) continue;
      for (const auto& entry : it->second) {
        m.at(index[d - 1].at(entry.cell), j) += entry.coeff;
      }
    }
    c.boundary[d] = std::move(m);
  }
  return c;
}

std::vector<HomologyGroup> homology(const IntegerChainComplex& c) {
  const int top = static_cast<int>(c.sizes.size()) - 1;
  std::vector<std::size_t> rank(top + 2, 0);
  std::vector<std::vector<BigInt>> factors(top + 2);
  for (int d = 1; d <= top; ++d) {
    std::vector<BigInt> f = invariant_factors(c.boundary[d]);
    rank[d] = f.size();
    factors[d] = std::move(f);
  }
  std::vector<HomologyGroup> out;
  for (int d = 0; d <= top; ++d) {
    HomologyGroup h{d, 0, {}};
    std::size_t rd = d >= 1 ? rank[d] : 0;
    h.betti = c.sizes[d] - rd - rank[d + 1];
    for (const BigInt& v : factors[d + 1]) {
      if (v > 1) h.torsion.push_back(v);
    }
    out.push_back(std::move(h));
  }
  return out;
}

bool reduced_homology_trivial(const ConcreteSubcomplex& sub) {
  if (sub.total_cells() == 0) return false;
  IntegerChainComplex c = chain_complex_of_subcomplex(sub);
  std::vector<HomologyGroup> h = homology(c);
  for (const HomologyGroup& g : h) {
    if (g.degree == 0) {
      if (g.betti != 1 || !g.torsion.empty()) return false;
    } else {
      if (g.betti != 0 || !g.torsion.empty()) return false;
    }
  }
  return true;
}

long long euler_characteristic(const EquivariantComplex& x) {
  long long chi = 0, sign = 1;
  for (std::size_t n : cell_counts(x)) {
    chi += sign * static_cast<long long>(n);
    sign = -sign;
  }
  return chi;
}

long long reduced_euler(const ConcreteSubcomplex& sub) {
  return sub.euler_characteristic() - 1;
}

BigRational equivariant_euler_characteristic(const EquivariantComplex& x) {
  BigRational chi = 0;
  for (int dim = 0; dim <= x.dimension(); ++dim) {
    for (int idx = 0; idx < x.orbit_count(dim); ++idx) {
      BigRational term(1, static_cast<long long>(x.orbit(dim, idx).stabilizer->order()));
      chi += (dim % 2 == 0) ? term : -term;
    }
  }
  return chi;
}

std::string render_homology_group(const HomologyGroup& h) {
  std::ostringstream os;
  bool any = false;
  if (h.betti == 1) {
    os << "Z";
    any = true;
  } else if (h.betti > 1) {
    os << "Z^" << h.betti;
    any = true;
  }
  for (const BigInt& d : h.torsion) {
    if (any) os << " + ";
    os << "Z/" << d.str();
    any = true;
  }
  if (!any) return "0";
  return os.str();
}

}  // namespace gcw
