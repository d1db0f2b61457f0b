#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gcw/complex.hpp"
#include "gcw/matrix.hpp"

namespace gcw {

using BigRational = boost::multiprecision::cpp_rational;

/// Graded integer chain complex; boundary[k] maps degree k to degree k-1 and
/// has shape sizes[k-1] x sizes[k]. boundary[0] is empty.
struct IntegerChainComplex {
  std::vector<std::size_t> sizes;
  std::vector<IntMat> boundary;
};

struct HomologyGroup {
  int degree;
  std::size_t betti;
  std::vector<BigInt> torsion;  // d1 | d2 | ..., each > 1
};

/// Chain complex of the enumerated concrete cells; basis order is the
/// canonical cell order. Verifies that consecutive boundaries compose to zero
/// and reports the offending cell pair otherwise.
struct SpaceChainComplex {
  IntegerChainComplex chain;
  std::vector<std::vector<ConcreteCell>> basis;
};
SpaceChainComplex chain_complex_of_space(const EquivariantComplex& x);

/// Same construction over an explicit, boundary-closed cell basis (e.g. the
/// tracked region of a subdivision result).
SpaceChainComplex chain_complex_from_basis(const EquivariantComplex& x,
                                           std::vector<std::vector<ConcreteCell>> basis);

IntegerChainComplex chain_complex_of_subcomplex(const ConcreteSubcomplex& sub);

std::vector<HomologyGroup> homology(const IntegerChainComplex& c);

/// True iff all reduced integral homology of the subcomplex vanishes
/// (H_0 = Z exactly, H_k = 0 for k >= 1).
bool reduced_homology_trivial(const ConcreteSubcomplex& sub);

long long euler_characteristic(const EquivariantComplex& x);
long long reduced_euler(const ConcreteSubcomplex& sub);

/// Sum over orbit representatives of (-1)^dim / |stabilizer|; a subdivision
/// invariant.
BigRational equivariant_euler_characteristic(const EquivariantComplex& x);

/// "0", "Z", "Z^b", with " + Z/d" terms appended for torsion.
std::string render_homology_group(const HomologyGroup& h);

}  // namespace gcw
