#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gcw/bredon.hpp"
#include "gcw/errors.hpp"
#include "gcw/fixtures.hpp"
#include "gcw/subdivide.hpp"

#include "helpers.hpp"

using namespace gcw;

namespace {

std::string signature(const std::vector<HomologyGroup>& groups) {
  std::string s;
  for (const HomologyGroup& h : groups) s += render_homology_group(h) + ";";
  return s;
}

}  // namespace

TEST_CASE("T1: the modular tree Bredon chain complex and homology") {
  EquivariantComplex t1 = make_modular_tree(ModularTreeVariant::T1);
  BredonComplex b = bredon_chain_complex(t1);
  REQUIRE(b.chain.sizes == std::vector<std::size_t>{5, 1});
  // d = (1,1,-1,-1,-1)^T in the (C2 | C3) block basis
  long long expected[5] = {1, 1, -1, -1, -1};
  for (int i = 0; i < 5; ++i) CHECK(b.chain.boundary[1].at(i, 0) == expected[i]);

  auto h = bredon_homology(t1);
  CHECK(h[0].betti == 4);
  CHECK(h[0].torsion.empty());
  CHECK(h[1].betti == 0);
}

TEST_CASE("T2: non-rigid input is refused, rigidification restores Z^4") {
  EquivariantComplex t2 = make_modular_tree(ModularTreeVariant::T2);
  try {
    bredon_chain_complex(t2);
    FAIL("expected RigidityError");
  } catch (const RigidityError& e) {
    CHECK(std::string(e.what()).find("double-edge") != std::string::npos);
  }

  SubdivisionResult r = rigidify(t2, SubdivisionMethod::RFS);
  BredonComplex b = bredon_chain_complex(r.complex);
  // degree 0: C3 vertex contributes 3, the C2 barycenter 2; degree 1: rank 1
  CHECK(b.chain.sizes == std::vector<std::size_t>{5, 1});
  auto h = bredon_homology(r.complex);
  CHECK(h[0].betti == 4);
  CHECK(h[1].betti == 0);
}

TEST_CASE("polygon(4) rigidified: two C2 vertex orbits and a free edge") {
  SubdivisionResult r = rigidify(make_polygon(4), SubdivisionMethod::RFS);
  BredonComplex b = bredon_chain_complex(r.complex);
  CHECK(b.chain.sizes == std::vector<std::size_t>{4, 1});
  auto h = bredon_homology(r.complex);
  CHECK(h[0].betti == 3);
  CHECK(h[0].torsion.empty());
  CHECK(h[1].betti == 0);
}

TEST_CASE("Bredon rank bookkeeping and d o d = 0 on subdivided fixtures") {
  for (const EquivariantComplex& x :
       {rigidify(make_square(), SubdivisionMethod::RFS).complex,
        rigidify(make_simplex(2), SubdivisionMethod::RFS).complex,
        rigidify(make_simplex(3), SubdivisionMethod::RFS).complex,
        rigidify(make_simplex(2), SubdivisionMethod::Barycentric).complex}) {
    BredonComplex b = bredon_chain_complex(x);  // verifies d o d = 0 internally
    for (int dim = 0; dim <= x.dimension(); ++dim) {
      std::size_t rank = 0;
      for (int idx = 0; idx < x.orbit_count(dim); ++idx) {
        rank += x.orbit(dim, idx).stabilizer->conjugacy_classes().size();
      }
      CHECK(b.chain.sizes[dim] == rank);
    }
  }
}

TEST_CASE("Bredon homology invariant under further subdivision") {
  EquivariantComplex t1 = make_modular_tree(ModularTreeVariant::T1);
  std::string base = signature(bredon_homology(t1));
  EquivariantComplex bcs = rigidify(t1, SubdivisionMethod::Barycentric).complex;
  CHECK(signature(bredon_homology(bcs)) == base);
  EquivariantComplex bcs2 = rigidify(bcs, SubdivisionMethod::Barycentric).complex;
  CHECK(signature(bredon_homology(bcs2)) == base);

  // same for the rigidified square across methods
  std::string sq = signature(bredon_homology(rigidify(make_square(), SubdivisionMethod::RFS).complex));
  CHECK(signature(bredon_homology(rigidify(make_square(), SubdivisionMethod::VSS).complex)) == sq);
  CHECK(signature(bredon_homology(rigidify(make_square(), SubdivisionMethod::Barycentric).complex)) ==
        sq);
}

TEST_CASE("classifying-space oracle: rigid contractible G-complexes") {
  // For a finite group G, a rigid contractible G-complex with contractible
  // fixed sets computes Bredon H_0 = R_C(G) = Z^(#conjugacy classes of G)
  // and nothing above. This checks the whole assembly pipeline against an
  // independently known answer.
  struct Case {
    EquivariantComplex complex;
    std::size_t classes;
  };
  std::vector<Case> cases;
  cases.push_back({make_simplex(2), 3});                  // S3
  cases.push_back({make_simplex(3), 5});                  // S4
  cases.push_back({make_simplex(4), 7});                  // S5
  cases.push_back({gcw_test::make_mirrored_cube(), 2});   // C2
  cases.push_back({gcw_test::make_octahedral_cube(), 10});  // C2 x S4, order 48
  for (const Case& c : cases) {
    for (SubdivisionMethod m : {SubdivisionMethod::RFS, SubdivisionMethod::Barycentric}) {
      SubdivisionResult r = rigidify(c.complex, m);
      std::vector<HomologyGroup> h = bredon_homology(r.complex);
      CHECK(h[0].betti == c.classes);
      CHECK(h[0].torsion.empty());
      for (std::size_t d = 1; d < h.size(); ++d) {
        CHECK(h[d].betti == 0);
        CHECK(h[d].torsion.empty());
      }
    }
  }
}

TEST_CASE("torsion subcomplex") {
  EquivariantComplex t1 = make_modular_tree(ModularTreeVariant::T1);
  EquivariantComplex at2 = torsion_subcomplex(t1, 2);
  CHECK(at2.dimension() == 0);
  REQUIRE(at2.orbit_count(0) == 1);
  CHECK(at2.orbit(0, 0).stabilizer->order() == 2);

  EquivariantComplex at3 = torsion_subcomplex(t1, 3);
  REQUIRE(at3.orbit_count(0) == 1);
  CHECK(at3.orbit(0, 0).stabilizer->order() == 3);

  EquivariantComplex at5 = torsion_subcomplex(t1, 5);
  CHECK(at5.orbit_count(0) == 0);

  CHECK_THROWS_AS(torsion_subcomplex(t1, 4), InputError);
  CHECK_THROWS_AS(torsion_subcomplex(t1, 1), InputError);

  // every stabilizer of polygon(4) has even order: the 2-torsion subcomplex
  // is the whole complex
  EquivariantComplex poly = make_polygon(4);
  std::string warning;
  EquivariantComplex full = torsion_subcomplex(poly, 2, &warning);
  CHECK(warning == "input complex is not rigid");
  CHECK(full.orbit_count(0) == poly.orbit_count(0));
  CHECK(full.orbit_count(1) == poly.orbit_count(1));

  // rigid input produces no warning
  torsion_subcomplex(t1, 2, &warning);
  CHECK(warning.empty());
}

TEST_CASE("fingerprints") {
  auto c6 = FiniteGroupTable::generate(
      std::vector<GroupElement>{GroupElement::permutation({1, 2, 3, 4, 5, 0})},
      ElementKind::Permutation, 6, false);
  auto s3 = FiniteGroupTable::generate(
      std::vector<GroupElement>{GroupElement::permutation({1, 0, 2}),
                                GroupElement::permutation({1, 2, 0})},
      ElementKind::Permutation, 3, false);
  GroupFingerprint f6 = fingerprint(*c6);
  GroupFingerprint f3 = fingerprint(*s3);
  CHECK(f6.order == f3.order);
  CHECK(f6 != f3);  // same order, different element statistics
  CHECK(f6.name() == "C6");
  CHECK(f3.name() == "[6;ords=1,2^3,3^2;ab=2]");
  CHECK(fingerprint(*FiniteGroupTable::generate({}, ElementKind::Permutation, 2, false)).name() ==
        "1");
}

TEST_CASE("stabilizer census") {
  // T1: one C2 vertex, one C3 vertex, one free edge
  StabilizerCensus c1 = stabilizer_census(make_modular_tree(ModularTreeVariant::T1));
  REQUIRE(c1.rows.size() == 3);
  for (const auto& row : c1.rows) {
    if (row.type.name() == "1") {
      CHECK(row.orbit_count == std::vector<std::size_t>{0, 1});
    } else if (row.type.name() == "C2") {
      CHECK(row.orbit_count == std::vector<std::size_t>{1, 0});
    } else {
      CHECK(row.type.name() == "C3");
      CHECK(row.orbit_count == std::vector<std::size_t>{1, 0});
    }
  }

  // RFS(square): C2 on exactly 3 vertex orbits and 2 edge orbits
  StabilizerCensus c2 = stabilizer_census(rigidify(make_square(), SubdivisionMethod::RFS).complex);
  bool found = false;
  for (const auto& row : c2.rows) {
    if (row.type.name() == "C2") {
      found = true;
      CHECK(row.orbit_count == std::vector<std::size_t>{3, 2, 0});
    }
  }
  CHECK(found);

  // simplex(2): the top orbit stabilizer has order 6 and is nonabelian
  StabilizerCensus c3 = stabilizer_census(make_simplex(2));
  bool top_found = false;
  for (const auto& row : c3.rows) {
    if (row.type.order == 6) {
      top_found = true;
      CHECK_FALSE(row.type.cyclic);
      CHECK(row.orbit_count == std::vector<std::size_t>{0, 0, 1});
    }
  }
  CHECK(top_found);

  // column sums equal orbit counts per dimension
  for (int d = 0; d < c2.dimensions; ++d) {
    std::size_t total = 0;
    for (const auto& row : c2.rows) total += row.orbit_count[d];
    CHECK(total ==
          static_cast<std::size_t>(
              rigidify(make_square(), SubdivisionMethod::RFS).complex.orbit_count(d)));
  }

  // rendering mentions the fingerprint caveat only when needed
  CHECK(render_census(c3).find("not certified") != std::string::npos);
  CHECK(render_census(c1).find("not certified") == std::string::npos);

  // pinned layout for T1 (types x dimensions, aligned)
  CHECK(render_census(c1) ==
        "stabilizer  dim 0  dim 1  \n"
        "1           0/0    1/1    \n"
        "C2          1/1    0/0    \n"
        "C3          1/1    0/0    \n"
        "entries: orbits/cells\n");
}
