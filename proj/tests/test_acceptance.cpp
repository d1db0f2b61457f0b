// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "gcw/bredon.hpp"
#include "gcw/errors.hpp"
#include "gcw/fixtures.hpp"
#include "gcw/gcw_io.hpp"
#include "gcw/homology.hpp"
#include "gcw/matrix.hpp"
#include "gcw/subdivide.hpp"

using namespace gcw;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail = "") {
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!pass) ++failures;
}

void criterion(int number, const std::string& name, const std::function<void()>& body) {
  try {
    body();
    report(number, name, true);
  } catch (const std::exception& e) {
    report(number, name, false, e.what());
  }
}

void require(bool cond, const std::string& what) {
  if (!cond) throw std::runtime_error(what);
}

double run_timed(const std::function<void()>& body) {
  Clock::time_point t0 = Clock::now();
  body();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string homology_text(const std::vector<HomologyGroup>& h) {
  std::string s;
  for (const HomologyGroup& g : h) s += "H_" + std::to_string(g.degree) + "=" +
                                        render_homology_group(g) + " ";
  return s;
}

std::vector<std::size_t> orbit_counts_of(const EquivariantComplex& x) {
  std::vector<std::size_t> out;
  for (int d = 0; d <= x.dimension(); ++d) out.push_back(x.orbit_count(d));
  return out;
}

struct ToolRun {
  int exit_code;
  std::string out, err;
};

ToolRun run_tool(const std::string& args) {
  const char* env = std::getenv("GCWTOOL");
  if (!env) throw std::runtime_error("GCWTOOL environment variable not set");
  std::string err_file = std::string(env) + ".stderr.tmp";
  std::string cmd = std::string(env) + " " + args + " 2>" + err_file;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot start gcwtool");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  std::ifstream err_in(err_file);
  std::stringstream err;
  err << err_in.rdbuf();
  std::remove(err_file.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, err.str()};
}

}  // namespace

int main() {
  // 1. Bredon homology of the modular tree T1: H0 = Z^4, H1 = 0, < 1 s.
  criterion(1, "Bredon homology of T1 is Z^4, 0 within 1 s", [] {
    std::vector<HomologyGroup> h;
    double dt = run_timed([&] { h = bredon_homology(make_modular_tree(ModularTreeVariant::T1)); });
    require(h.size() == 2, "expected two degrees");
    require(h[0].betti == 4 && h[0].torsion.empty(), "H_0 != Z^4: " + homology_text(h));
    require(h[1].betti == 0 && h[1].torsion.empty(), "H_1 != 0: " + homology_text(h));
    require(dt < 1.0, "took " + std::to_string(dt) + " s");
  });

  // 2. Non-rigid refusal for T2; after RFS the homology returns.
  criterion(2, "T2 refused with the flipped edge named; RFS restores Z^4", [] {
    std::string dir = "/tmp";
    std::string t2 = dir + "/acceptance_t2.gcw";
    save_complex(make_modular_tree(ModularTreeVariant::T2), t2);
    ToolRun refusal = run_tool("bredon " + t2);
    require(refusal.exit_code == 3, "expected exit 3, got " + std::to_string(refusal.exit_code));
    require(refusal.err.find("double-edge") != std::string::npos,
            "error does not name the flipped edge");
    std::string out = dir + "/acceptance_t2_rfs.gcw";
    ToolRun sub = run_tool("subdivide " + t2 + " --method rfs -o " + out);
    require(sub.exit_code == 0, "subdivide failed");
    ToolRun again = run_tool("bredon " + out);
    require(again.exit_code == 0, "bredon on rigidified T2 failed");
    require(again.out == "H_0 = Z^4\nH_1 = 0\n", "unexpected output: " + again.out);
  });

  // 3. Figure 1 reproduction on the square.
  criterion(3, "square: RFS (7,8,2)/(5,5,1), VSS (7,12,6)/(5,7,3), BCS (9,16,8); 3 VSS pairs", [] {
    EquivariantComplex sq = make_square();
    SubdivisionResult rfs = rigidify(sq, SubdivisionMethod::RFS);
    require(rfs.tracked_cell_counts == std::vector<std::size_t>{7, 8, 2}, "RFS cells");
    require(orbit_counts_of(rfs.complex) == std::vector<std::size_t>{5, 5, 1}, "RFS orbits");
    SubdivisionResult vss = rigidify(sq, SubdivisionMethod::VSS);
    require(vss.tracked_cell_counts == std::vector<std::size_t>{7, 12, 6}, "VSS cells");
    require(orbit_counts_of(vss.complex) == std::vector<std::size_t>{5, 7, 3}, "VSS orbits");
    SubdivisionResult bcs = rigidify(sq, SubdivisionMethod::Barycentric);
    require(bcs.tracked_cell_counts == std::vector<std::size_t>{9, 16, 8}, "BCS cells");
    // VSS face orbits: exactly 3 pairs
    auto enumerated = enumerate_cells(vss.complex);
    std::map<int, int> per_orbit;
    for (const ConcreteCell& c : enumerated[2]) ++per_orbit[c.orbit];
    require(per_orbit.size() == 3, "expected 3 face orbits");
    for (const auto& [orbit, count] : per_orbit) require(count == 2, "expected orbit pairs");
  });

  // 4. Symmetric-simplex lower bound attained for n = 1,2,3.
  criterion(4, "RFS(simplex(n)) has exactly (n+1)! top cells, n=1..3, <10 s at n=3", [] {
    std::size_t factorial = 1;
    for (int n = 1; n <= 3; ++n) {
      factorial *= static_cast<std::size_t>(n + 1);
      SubdivisionResult r;
      double dt = run_timed([&] { r = rigidify(make_simplex(n), SubdivisionMethod::RFS); });
      require(r.tracked_cell_counts.back() == factorial,
              "n=" + std::to_string(n) + ": got " +
                  std::to_string(r.tracked_cell_counts.back()) + " top cells");
      if (n == 3) require(dt < 10.0, "n=3 took " + std::to_string(dt) + " s");
    }
  });

  // 5. Invariance suite.
  criterion(5, "homology, chi and equivariant chi invariant under every method", [] {
    std::vector<EquivariantComplex> fixtures;
    fixtures.push_back(make_square());
    fixtures.push_back(make_simplex(1));
    fixtures.push_back(make_simplex(2));
    fixtures.push_back(make_simplex(3));
    fixtures.push_back(make_polygon(3));
    fixtures.push_back(make_polygon(4));
    fixtures.push_back(make_polygon(5));
    fixtures.push_back(make_modular_tree(ModularTreeVariant::T1));
    fixtures.push_back(make_modular_tree(ModularTreeVariant::T2));
    for (std::size_t fi = 0; fi < fixtures.size(); ++fi) {
      const EquivariantComplex& x = fixtures[fi];
      std::string h0 = homology_text(homology(chain_complex_of_space(x).chain));
      long long chi0 = euler_characteristic(x);
      BigRational eq0 = equivariant_euler_characteristic(x);
      for (SubdivisionMethod m : {SubdivisionMethod::RFS, SubdivisionMethod::VSS,
                                  SubdivisionMethod::Hybrid, SubdivisionMethod::Barycentric}) {
        SubdivisionResult r = rigidify(x, m);
        std::string where = "fixture " + std::to_string(fi) + " method " + method_name(m);
        // homology and chi of the subdivided region (equals the full
        // enumeration whenever the ambient group is finite)
        require(homology_text(homology(
                    chain_complex_from_basis(r.complex, r.tracked_cells).chain)) == h0,
                "homology changed: " + where);
        long long chi = 0, sign = 1;
        for (std::size_t n : r.tracked_cell_counts) {
          chi += sign * static_cast<long long>(n);
          sign = -sign;
        }
        require(chi == chi0, "chi changed: " + where);
        require(equivariant_euler_characteristic(r.complex) == eq0,
                "equivariant chi changed: " + where);
        if (x.group().kind == ElementKind::Permutation) {
          require(homology_text(homology(chain_complex_of_space(r.complex).chain)) == h0,
                  "standalone homology changed: " + where);
        }
      }
    }
    // T1/T2: equivariant chi = -1/6 before and after
    for (ModularTreeVariant v : {ModularTreeVariant::T1, ModularTreeVariant::T2}) {
      EquivariantComplex t = make_modular_tree(v);
      require(equivariant_euler_characteristic(t) == BigRational(-1, 6), "tree chi_Gamma");
      require(equivariant_euler_characteristic(rigidify(t, SubdivisionMethod::RFS).complex) ==
                  BigRational(-1, 6),
              "tree chi_Gamma after RFS");
    }
  });

  // 6. Rigid Facets Lemma as a property test.
  criterion(6, "facet orbits have size [stab:pointwise] and pointwise stab is normal", [] {
    std::vector<EquivariantComplex> complexes;
    for (const EquivariantComplex& x :
         {make_square(), make_simplex(2), make_simplex(3), make_polygon(4),
          make_modular_tree(ModularTreeVariant::T1), make_modular_tree(ModularTreeVariant::T2)}) {
      for (SubdivisionMethod m : {SubdivisionMethod::RFS, SubdivisionMethod::VSS,
                                  SubdivisionMethod::Hybrid, SubdivisionMethod::Barycentric}) {
        complexes.push_back(rigidify(x, m).complex);
      }
      complexes.push_back(x);
    }
    for (const EquivariantComplex& x : complexes) {
      for (int d = 1; d <= x.dimension(); ++d) {
        for (int i = 0; i < x.orbit_count(d); ++i) {
          bool facets_rigid = true;
          for (const auto& e : x.concrete_boundary(x.concrete(d, i, x.group().identity()))) {
            GroupTablePtr pw = pointwise_stabilizer(x, d - 1, e.cell.orbit);
            if (pw->order() != x.orbit(d - 1, e.cell.orbit).stabilizer->order()) {
              facets_rigid = false;
            }
          }
          if (!facets_rigid) continue;
          GroupTablePtr stab = x.orbit(d, i).stabilizer;
          GroupTablePtr pw = pointwise_stabilizer(x, d, i);
          require(is_normal(stab, pw), "pointwise stabilizer not normal");
          std::size_t index = stab->order() / pw->order();
          for (const FacetOrbit& o : orbits_of_faces(x, d, i)) {
            require(o.members.size() == index, "facet orbit size != index");
          }
        }
      }
    }
  });

  // 7. Character and representation suite.
  criterion(7, "character tables exact; induction matrices match the stated ones", [] {
    auto pg = [](std::vector<std::vector<long long>> gens, int d) {
      std::vector<GroupElement> g;
      for (auto& v : gens) g.push_back(GroupElement::permutation(std::move(v)));
      return FiniteGroupTable::generate(g, ElementKind::Permutation, d, false);
    };
    std::vector<GroupTablePtr> groups{
        pg({{1, 0}}, 2),                      // C2
        pg({{1, 2, 0}}, 3),                   // C3
        pg({{1, 2, 3, 4, 5, 0}}, 6),          // C6
        pg({{1, 0, 2}, {1, 2, 0}}, 3),        // S3
        pg({{1, 2, 3, 0}, {0, 3, 2, 1}}, 4),  // D4
        pg({{1, 0, 2, 3}, {1, 2, 3, 0}}, 4),  // S4
    };
    for (const GroupTablePtr& g : groups) {
      CharacterTablePtr t = character_table(g);
      const auto& classes = g->conjugacy_classes();
      const long long order = static_cast<long long>(g->order());
      // row orthogonality
      for (int i = 0; i < t->irreducible_count(); ++i) {
        for (int j = 0; j < t->irreducible_count(); ++j) {
          Cyclotomic acc(BigInt(0));
          for (std::size_t c = 0; c < classes.size(); ++c) {
            int inv_cls = g->class_of(g->inverse(classes[c].front()));
            acc += Cyclotomic(BigInt(static_cast<long long>(classes[c].size()))) * t->value(i, c) *
                   t->value(j, inv_cls);
          }
          require(acc.is_integer() && acc.integer_value() == (i == j ? BigInt(order) : BigInt(0)),
                  "row orthogonality failed");
        }
      }
      // column orthogonality
      for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        for (std::size_t cj = 0; cj < classes.size(); ++cj) {
          int inv_cj = g->class_of(g->inverse(classes[cj].front()));
          Cyclotomic acc(BigInt(0));
          for (int r = 0; r < t->irreducible_count(); ++r) {
            acc += t->value(r, static_cast<int>(ci)) * t->value(r, inv_cj);
          }
          BigInt expected =
              (ci == cj) ? BigInt(order / static_cast<long long>(classes[ci].size())) : BigInt(0);
          require(acc.is_integer() && acc.integer_value() == expected,
                  "column orthogonality failed");
        }
      }
    }
    // induction matrices
    auto triv2 = FiniteGroupTable::generate({}, ElementKind::Permutation, 2, false);
    auto triv3 = FiniteGroupTable::generate({}, ElementKind::Permutation, 3, false);
    require(induction_matrix(Embedding::inclusion(triv2, groups[0])).matrix ==
                std::vector<std::vector<long long>>{{1}, {1}},
            "1 -> C2");
    require(induction_matrix(Embedding::inclusion(triv3, groups[1])).matrix ==
                std::vector<std::vector<long long>>{{1}, {1}, {1}},
            "1 -> C3");
    require(induction_matrix(Embedding::inclusion(pg({{1, 0, 2}}, 3), groups[3])).matrix ==
                std::vector<std::vector<long long>>{{1, 0}, {0, 1}, {1, 1}},
            "C2 -> S3");
  });

  // 8. Refinement monotonicity.
  criterion(8, "per-dimension cell counts satisfy RFS <= HYBRID <= VSS <= BCS", [] {
    for (const EquivariantComplex& x :
         {make_square(), make_simplex(1), make_simplex(2), make_simplex(3), make_polygon(3),
          make_polygon(4), make_polygon(5), make_modular_tree(ModularTreeVariant::T1),
          make_modular_tree(ModularTreeVariant::T2)}) {
      auto rfs = rigidify(x, SubdivisionMethod::RFS).tracked_cell_counts;
      auto hys = rigidify(x, SubdivisionMethod::Hybrid).tracked_cell_counts;
      auto vss = rigidify(x, SubdivisionMethod::VSS).tracked_cell_counts;
      auto bcs = rigidify(x, SubdivisionMethod::Barycentric).tracked_cell_counts;
      for (std::size_t d = 0; d < rfs.size(); ++d) {
        require(rfs[d] <= hys[d] && hys[d] <= vss[d] && vss[d] <= bcs[d],
                "monotonicity violated in dimension " + std::to_string(d));
      }
    }
  });

  // 9. Conditional large-scale reproduction (external data required).
  {
    const char* path = std::getenv("GCW_SL3_FILE");
    std::string file = path ? path : "data/sl3z.gcw";
    std::ifstream probe(file);
    if (!probe) {
      std::cout << "[SKIP] criterion 9: SL3(Z)-scale complex not supplied "
                << "(set GCW_SL3_FILE to a gcw-1 file to enable)" << std::endl;
    } else {
      criterion(9, "SL3(Z)-scale RFS row (orbits 5/11/8/1, cells 51/194/168/24) within 60 s",
                [&] {
                  EquivariantComplex x = load_complex(file);
                  SubdivisionResult r;
                  double dt =
                      run_timed([&] { r = rigidify(x, SubdivisionMethod::RFS); });
                  require(dt < 60.0, "took " + std::to_string(dt) + " s");
                  require(orbit_counts_of(r.complex) == std::vector<std::size_t>{5, 11, 8, 1},
                          "orbit row mismatch");
                  require(r.tracked_cell_counts == std::vector<std::size_t>{51, 194, 168, 24},
                          "cell row mismatch");
                });
    }
  }

  // 10. SNF property test: 1000 random matrices.
  criterion(10, "SNF on 1000 random matrices (<=20x20, entries <=1e6): exact", [] {
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<long long> entry(-1000000, 1000000);
    std::uniform_int_distribution<std::size_t> size(1, 20);
    // exact determinant via Bareiss, independent of the SNF path
    auto det = [](const IntMat& m) {
      const std::size_t n = m.rows();
      std::vector<BigInt> a(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m.at(i, j);
      }
      BigInt prev = 1;
      int sign = 1;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k * n + k] == 0) {
          std::size_t p = k + 1;
          while (p < n && a[p * n + k] == 0) ++p;
          if (p == n) return BigInt(0);
          for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
          sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
          for (std::size_t j = k + 1; j < n; ++j) {
            a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
          }
          a[i * n + k] = 0;
        }
        prev = a[k * n + k];
      }
      return BigInt(sign * a[(n - 1) * n + (n - 1)]);
    };
    for (int trial = 0; trial < 1000; ++trial) {
      IntMat a(size(rng), size(rng));
      for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) a.at(i, j) = entry(rng);
      }
      SNFResult snf = smith_normal_form(a);
      require(snf.u * a * snf.v == snf.s, "U*A*V != S");
      BigInt du = det(snf.u), dv = det(snf.v);
      require(du == 1 || du == -1, "|det U| != 1");
      require(dv == 1 || dv == -1, "|det V| != 1");
      const std::size_t n = std::min(a.rows(), a.cols());
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const BigInt& d1 = snf.s.at(i, i);
        const BigInt& d2 = snf.s.at(i + 1, i + 1);
        require(d1 >= 0 && d2 >= 0, "negative invariant factor");
        if (d1 == 0) {
          require(d2 == 0, "zero before nonzero in the chain");
        } else if (d2 != 0) {
          require(d2 % d1 == 0, "divisibility chain violated");
        }
      }
    }
  });

  if (failures == 0) {
    std::cout << "acceptance: all criteria passed" << std::endl;
    return 0;
  }
  std::cout << "acceptance: " << failures << " criterion(s) FAILED" << std::endl;
  return 1;
}
