#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "gcw/character.hpp"
#include "gcw/errors.hpp"

using namespace gcw;

namespace {

GroupTablePtr perm_group(std::vector<std::vector<long long>> gens, int d) {
  std::vector<GroupElement> g;
  for (auto& v : gens) g.push_back(GroupElement::permutation(std::move(v)));
  return FiniteGroupTable::generate(g, ElementKind::Permutation, d, false);
}

// Both orthogonality relations, in exact cyclotomic arithmetic.
void check_orthogonality(const CharacterTable& t) {
  const FiniteGroupTable& g = t.group();
  const auto& classes = g.conjugacy_classes();
  const long long order = static_cast<long long>(g.order());
  // rows
  for (int i = 0; i < t.irreducible_count(); ++i) {
    for (int j = 0; j < t.irreducible_count(); ++j) {
      Cyclotomic acc(BigInt(0));
      for (std::size_t c = 0; c < classes.size(); ++c) {
        int inv_cls = g.class_of(g.inverse(classes[c].front()));
        acc += Cyclotomic(BigInt(static_cast<long long>(classes[c].size()))) * t.value(i, c) *
               t.value(j, inv_cls);
      }
      REQUIRE(acc.is_integer());
      CHECK(acc.integer_value() == (i == j ? BigInt(order) : BigInt(0)));
    }
  }
  // columns: sum over chi of chi(g_i) chi(g_j^-1) = delta_ij |C_G(g_i)|
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    for (std::size_t cj = 0; cj < classes.size(); ++cj) {
      int inv_cj = g.class_of(g.inverse(classes[cj].front()));
      Cyclotomic acc(BigInt(0));
      for (int r = 0; r < t.irreducible_count(); ++r) {
        acc += t.value(r, static_cast<int>(ci)) * t.value(r, inv_cj);
      }
      REQUIRE(acc.is_integer());
      BigInt expected = (ci == cj) ? BigInt(order / static_cast<long long>(classes[ci].size()))
                                   : BigInt(0);
      CHECK(acc.integer_value() == expected);
    }
  }
}

}  // namespace

TEST_CASE("cyclotomic arithmetic and conductor unification") {
  Cyclotomic z3 = Cyclotomic::root_of_unity(3, 1);
  Cyclotomic one(BigInt(1));
  CHECK((z3 * z3 * z3) == one);
  CHECK((one + z3 + z3 * z3).is_zero());  // 1 + z + z^2 = 0
  // zeta_6 = -zeta_3^2, computed at different conductors
  Cyclotomic z6 = Cyclotomic::root_of_unity(6, 1);
  CHECK(z6 == -(z3 * z3));
  // zeta_2 * zeta_3 = zeta_6^5
  Cyclotomic z2 = Cyclotomic::root_of_unity(2, 1);
  CHECK(z2 * z3 == Cyclotomic::root_of_unity(6, 5));
  // sum of all primitive 5th roots is -1
  Cyclotomic s(BigInt(0));
  for (int k = 1; k <= 4; ++k) s += Cyclotomic::root_of_unity(5, k);
  CHECK(s.is_integer());
  CHECK(s.integer_value() == -1);
  // lifting then arithmetic agrees with arithmetic at mixed conductors
  Cyclotomic a = Cyclotomic::root_of_unity(4, 1);
  CHECK(a + z6 == a.lifted(12) + z6.lifted(12));
}

TEST_CASE("character table: C2, C3") {
  auto c2 = perm_group({{1, 0}}, 2);
  auto t2 = character_table(c2);
  REQUIRE(t2->irreducible_count() == 2);
  CHECK(t2->value(0, 0).integer_value() == 1);
  CHECK(t2->value(0, 1).integer_value() == 1);
  CHECK(t2->value(1, 0).integer_value() == 1);
  CHECK(t2->value(1, 1).integer_value() == -1);
  check_orthogonality(*t2);

  auto c3 = perm_group({{1, 2, 0}}, 3);
  auto t3 = character_table(c3);
  REQUIRE(t3->irreducible_count() == 3);
  Cyclotomic z3 = Cyclotomic::root_of_unity(3, 1);
  Cyclotomic z3sq = Cyclotomic::root_of_unity(3, 2);
  // rows (1,1,1), (1,z,z^2), (1,z^2,z) in this order
  CHECK(t3->value(0, 1) == Cyclotomic(BigInt(1)));
  CHECK(t3->value(1, 1) == z3);
  CHECK(t3->value(1, 2) == z3sq);
  CHECK(t3->value(2, 1) == z3sq);
  CHECK(t3->value(2, 2) == z3);
  check_orthogonality(*t3);
}

TEST_CASE("character table: S3 pinned rows") {
  auto s3 = perm_group({{1, 0, 2}, {1, 2, 0}}, 3);
  auto t = character_table(s3);
  REQUIRE(t->irreducible_count() == 3);
  // classes ordered e, transpositions, 3-cycles
  CHECK(t->group().conjugacy_classes()[0].size() == 1);
  CHECK(t->group().conjugacy_classes()[1].size() == 3);
  CHECK(t->group().conjugacy_classes()[2].size() == 2);
  long long expected[3][3] = {{1, 1, 1}, {1, -1, 1}, {2, 0, -1}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      REQUIRE(t->value(i, j).is_integer());
      CHECK(t->value(i, j).integer_value() == expected[i][j]);
    }
  }
  check_orthogonality(*t);
}

TEST_CASE("character table: C6, D4, S4, A4 orthogonality and degrees") {
  auto c6 = perm_group({{1, 2, 3, 4, 5, 0}}, 6);
  check_orthogonality(*character_table(c6));

  auto d4 = perm_group({{1, 2, 3, 0}, {0, 3, 2, 1}}, 4);
  auto td4 = character_table(d4);
  std::vector<long long> deg_d4;
  for (int i = 0; i < td4->irreducible_count(); ++i) deg_d4.push_back(td4->degree(i));
  CHECK(deg_d4 == std::vector<long long>{1, 1, 1, 1, 2});
  check_orthogonality(*td4);

  auto s4 = perm_group({{1, 0, 2, 3}, {1, 2, 3, 0}}, 4);
  auto ts4 = character_table(s4);
  std::vector<long long> deg_s4;
  for (int i = 0; i < ts4->irreducible_count(); ++i) deg_s4.push_back(ts4->degree(i));
  CHECK(deg_s4 == std::vector<long long>{1, 1, 2, 3, 3});
  check_orthogonality(*ts4);

  auto a4 = perm_group({{1, 0, 3, 2}, {1, 2, 0, 3}}, 4);
  auto ta4 = character_table(a4);
  std::vector<long long> deg_a4;
  for (int i = 0; i < ta4->irreducible_count(); ++i) deg_a4.push_back(ta4->degree(i));
  CHECK(deg_a4 == std::vector<long long>{1, 1, 1, 3});
  check_orthogonality(*ta4);

  // Klein four group exercises the non-cyclic abelian path
  auto v4 = perm_group({{1, 0, 3, 2}, {2, 3, 0, 1}}, 4);
  auto tv4 = character_table(v4);
  CHECK(tv4->irreducible_count() == 4);
  check_orthogonality(*tv4);
}

TEST_CASE("character table: dihedral of order 12 and (C3 x C3) : C2") {
  // dihedral symmetries of the hexagon
  auto d6 = perm_group({{1, 2, 3, 4, 5, 0}, {0, 5, 4, 3, 2, 1}}, 6);
  REQUIRE(d6->order() == 12);
  auto td6 = character_table(d6);
  std::vector<long long> degs;
  for (int i = 0; i < td6->irreducible_count(); ++i) degs.push_back(td6->degree(i));
  CHECK(degs == std::vector<long long>{1, 1, 1, 1, 2, 2});
  check_orthogonality(*td6);

  // elementary abelian 3x3 extended by the inversion
  auto e9c2 = perm_group({{1, 2, 0, 3, 4, 5}, {0, 1, 2, 4, 5, 3}, {0, 2, 1, 3, 5, 4}}, 6);
  REQUIRE(e9c2->order() == 18);
  CHECK_FALSE(e9c2->is_abelian());
  auto te = character_table(e9c2);
  std::vector<long long> edegs;
  for (int i = 0; i < te->irreducible_count(); ++i) edegs.push_back(te->degree(i));
  CHECK(edegs == std::vector<long long>{1, 1, 2, 2, 2, 2});
  check_orthogonality(*te);

  // direct product S3 x S3 (order 36) through the general path
  auto s3s3 = perm_group({{1, 0, 2, 3, 4, 5}, {1, 2, 0, 3, 4, 5},
                          {0, 1, 2, 4, 3, 5}, {0, 1, 2, 4, 5, 3}}, 6);
  REQUIRE(s3s3->order() == 36);
  auto ts = character_table(s3s3);
  CHECK(ts->irreducible_count() == 9);
  long long sum = 0;
  for (int i = 0; i < ts->irreducible_count(); ++i) sum += ts->degree(i) * ts->degree(i);
  CHECK(sum == 36);
  check_orthogonality(*ts);
}

TEST_CASE("restrict_character") {
  auto s3 = perm_group({{1, 0, 2}, {1, 2, 0}}, 3);
  auto t = character_table(s3);
  auto c2 = perm_group({{1, 0, 2}}, 3);
  auto a3 = perm_group({{1, 2, 0}}, 3);
  Embedding inc2 = Embedding::inclusion(c2, s3);
  Embedding inc3 = Embedding::inclusion(a3, s3);

  // trivial restricts to trivial
  auto triv = restrict_character(*t, 0, inc2);
  CHECK(triv[0].integer_value() == 1);
  CHECK(triv[1].integer_value() == 1);
  // 2-dim character restricted to C2 = <(0 1)> gives (2, 0)
  auto std2 = restrict_character(*t, 2, inc2);
  CHECK(std2[0].integer_value() == 2);
  CHECK(std2[1].integer_value() == 0);
  // sign restricted to A3 is trivial
  auto sgn = restrict_character(*t, 1, inc3);
  for (const Cyclotomic& v : sgn) CHECK(v.integer_value() == 1);
}

TEST_CASE("induction matrices: pinned examples") {
  auto triv2 = FiniteGroupTable::generate({}, ElementKind::Permutation, 2, false);
  auto c2 = perm_group({{1, 0}}, 2);
  RepRingMap reg2 = induction_matrix(Embedding::inclusion(triv2, c2));
  CHECK(reg2.matrix == std::vector<std::vector<long long>>{{1}, {1}});

  auto triv3 = FiniteGroupTable::generate({}, ElementKind::Permutation, 3, false);
  auto c3 = perm_group({{1, 2, 0}}, 3);
  RepRingMap reg3 = induction_matrix(Embedding::inclusion(triv3, c3));
  CHECK(reg3.matrix == std::vector<std::vector<long long>>{{1}, {1}, {1}});

  auto s3 = perm_group({{1, 0, 2}, {1, 2, 0}}, 3);
  auto c2s = perm_group({{1, 0, 2}}, 3);
  Embedding emb = Embedding::inclusion(c2s, s3);
  RepRingMap ind = induction_matrix(emb);
  CHECK(ind.matrix == std::vector<std::vector<long long>>{{1, 0}, {0, 1}, {1, 1}});

  // conjugated by the identity: unchanged
  RepRingMap same = conjugated_induction(emb, GroupElement::identity(ElementKind::Permutation, 3, false));
  CHECK(same.matrix == ind.matrix);
  // conjugated by a 3-cycle: conjugate subgroup, same matrix
  RepRingMap conj = conjugated_induction(emb, GroupElement::permutation({1, 2, 0}));
  CHECK(conj.matrix == ind.matrix);
  // trivial subgroup, any conjugator: the regular representation column
  RepRingMap regc = conjugated_induction(Embedding::inclusion(triv3, s3),
                                         GroupElement::permutation({1, 2, 0}));
  CHECK(regc.matrix == std::vector<std::vector<long long>>{{1}, {1}, {2}});
}

TEST_CASE("induction invariants") {
  auto s4 = perm_group({{1, 0, 2, 3}, {1, 2, 3, 0}}, 4);
  auto d4 = perm_group({{1, 2, 3, 0}, {0, 3, 2, 1}}, 4);
  auto s3 = perm_group({{1, 0, 2, 3}, {1, 2, 0, 3}}, 4);
  for (auto sub : {d4, s3}) {
    Embedding emb = Embedding::inclusion(sub, s4);
    RepRingMap ind = induction_matrix(emb);
    auto ts = character_table(sub);
    auto tg = character_table(s4);
    long long index = static_cast<long long>(s4->order() / sub->order());
    for (int j = 0; j < ts->irreducible_count(); ++j) {
      long long acc = 0;
      for (int i = 0; i < tg->irreducible_count(); ++i) {
        CHECK(ind.matrix[i][j] >= 0);
        acc += tg->degree(i) * ind.matrix[i][j];
      }
      CHECK(acc == index * ts->degree(j));
    }
  }
  // trivial embedding H = G: the identity matrix
  RepRingMap idm = induction_matrix(Embedding::inclusion(s4, s4));
  for (std::size_t i = 0; i < idm.matrix.size(); ++i) {
    for (std::size_t j = 0; j < idm.matrix[i].size(); ++j) {
      CHECK(idm.matrix[i][j] == (i == j ? 1 : 0));
    }
  }
}

TEST_CASE("character table cache is shared and safe under concurrent readers") {
  auto s4 = perm_group({{1, 0, 2, 3}, {1, 2, 3, 0}}, 4);
  std::vector<CharacterTablePtr> results(8);
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&, i] { results[i] = character_table(s4); });
  }
  for (auto& t : threads) t.join();
  for (int i = 1; i < 8; ++i) CHECK(results[i].get() == results[0].get());
}

TEST_CASE("embedding validation") {
  auto s3 = perm_group({{1, 0, 2}, {1, 2, 0}}, 3);
  auto c4 = perm_group({{1, 2, 3, 0}}, 4);
  // degree mismatch: image not contained
  CHECK_THROWS_AS(Embedding::inclusion(c4, s3), InputError);
  // non-homomorphism
  auto c2 = perm_group({{1, 0, 2}}, 3);
  CHECK_THROWS_AS(Embedding::from_map(c2, s3,
                                      [&](const GroupElement& g) {
                                        return g.is_identity() ? GroupElement::permutation({1, 2, 0})
                                                               : GroupElement::permutation({1, 0, 2});
                                      }),
                  InputError);
  // conjugated inclusion that escapes the target is a rigidity violation
  auto a3 = perm_group({{1, 2, 0}}, 3);
  CHECK_THROWS_AS(Embedding::conjugated_inclusion(c2, a3, GroupElement::permutation({1, 2, 0})),
                  RigidityError);
}
