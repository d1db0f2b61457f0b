#include "gcw/character.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>

#include "gcw/errors.hpp"
#include "gcw/matrix.hpp"

namespace gcw {

namespace {

constexpr std::size_t kMaxGroupOrder = 2000;

// ---------------------------------------------------------------------------
// F_p helpers (p < 2^31, products fit in unsigned 64-bit)

using u64 = std::uint64_t;

u64 mod_pow(u64 b, u64 e, u64 p) {
  u64 r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

u64 mod_inv(u64 a, u64 p) { return mod_pow(a % p, p - 2, p); }

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Smallest prime p = 1 (mod e) with p > lower.
u64 find_dixon_prime(u64 e, u64 lower) {
  u64 p = e + 1;
  while (p <= lower || !is_prime(p)) p += e;
  return p;
}

u64 primitive_root(u64 p) {
  std::vector<u64> factors;
  u64 m = p - 1;
  for (u64 d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) factors.push_back(m);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (u64 f : factors) {
      if (mod_pow(g, (p - 1) / f, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw InternalError("no primitive root found");
}

using FpVec = std::vector<u64>;
using FpMat = std::vector<FpVec>;  // rows

// Reduced row echelon form in place; returns pivot column per row.
std::vector<int> rref(FpMat& m, u64 p) {
  std::vector<int> pivots;
  std::size_t row = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    u64 inv = mod_inv(m[row][col], p);
    for (std::size_t j = col; j < cols; ++j) m[row][j] = m[row][j] * inv % p;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == 0) continue;
      u64 f = m[i][col];
      for (std::size_t j = col; j < cols; ++j) {
        m[i][j] = (m[i][j] + (p - f) * m[row][j]) % p;
      }
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  m.resize(row);
  return pivots;
}

// Nullspace basis (as rows) of a square matrix over F_p.
FpMat nullspace(FpMat a, u64 p) {
  const std::size_t n = a.size();
  std::vector<int> pivots = rref(a, p);
  std::vector<bool> is_pivot(n, false);
  for (int c : pivots) is_pivot[c] = true;
  FpMat basis;
  for (std::size_t free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    FpVec v(n, 0);
    v[free_col] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      u64 val = a[r][free_col];
      if (val) v[pivots[r]] = p - val;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

// Characteristic polynomial over F_p via Hessenberg reduction, O(n^3).
// Returns coefficients c_0..c_n of det(xI - A).
FpVec char_poly(FpMat a, u64 p) {
  const std::size_t n = a.size();
  // Reduce to upper Hessenberg form with row/col similarity transforms.
  for (std::size_t k = 1; k + 1 < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a[pivot][k - 1] == 0) ++pivot;
    if (pivot == n) continue;
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      for (std::size_t i = 0; i < n; ++i) std::swap(a[i][pivot], a[i][k]);
    }
    u64 inv = mod_inv(a[k][k - 1], p);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k - 1] == 0) continue;
      u64 f = a[i][k - 1] * inv % p;
      for (std::size_t j = 0; j < n; ++j) a[i][j] = (a[i][j] + (p - f) * a[k][j]) % p;
      for (std::size_t j = 0; j < n; ++j) a[j][k] = (a[j][k] + f * a[j][i]) % p;
    }
  }
  // p_k(x) = det(xI - A_k) recurrence on leading principal minors.
  std::vector<FpVec> polys(n + 1);
  polys[0] = {1};
  for (std::size_t k = 1; k <= n; ++k) {
    // p_k = (x - a[k-1][k-1]) * p_{k-1} - sum over trailing products
    FpVec cur(k + 1, 0);
    const FpVec& prev = polys[k - 1];
    for (std::size_t i = 0; i < prev.size(); ++i) {
      cur[i + 1] = (cur[i + 1] + prev[i]) % p;
      cur[i] = (cur[i] + (p - a[k - 1][k - 1] % p) * prev[i]) % p;
    }
    u64 prod = 1;
    for (std::size_t m = 1; m < k; ++m) {
      // term: -a[k-1-m][k-1] * (prod of subdiagonal) * p_{k-1-m}
      prod = prod * a[k - m][k - m - 1] % p;
      if (a[k - 1 - m][k - 1] == 0 || prod == 0) continue;
      u64 coeff = (p - a[k - 1 - m][k - 1] * prod % p) % p;
      const FpVec& pm = polys[k - 1 - m];
      for (std::size_t i = 0; i < pm.size(); ++i) cur[i] = (cur[i] + coeff * pm[i]) % p;
    }
    polys[k] = std::move(cur);
  }
  return polys[n];
}

u64 poly_eval(const FpVec& poly, u64 x, u64 p) {
  u64 r = 0;
  for (std::size_t i = poly.size(); i-- > 0;) r = (r * x + poly[i]) % p;
  return r;
}

// ---------------------------------------------------------------------------

struct ClassData {
  int count = 0;
  std::vector<int> rep;        // class -> representative element index
  std::vector<int> size;       // class -> size
  std::vector<int> inv_class;  // class -> class of inverses
};

ClassData class_data(const FiniteGroupTable& g) {
  ClassData d;
  const auto& classes = g.conjugacy_classes();
  d.count = static_cast<int>(classes.size());
  for (const auto& cls : classes) {
    d.rep.push_back(cls.front());
    d.size.push_back(static_cast<int>(cls.size()));
  }
  for (int c = 0; c < d.count; ++c) d.inv_class.push_back(g.class_of(g.inverse(d.rep[c])));
  return d;
}

// Lifts from mod-p character values to exact cyclotomics via eigenvalue
// multiplicities: chi(g) = sum_l m_l zeta_n^l with
// m_l = (1/n) sum_r chi(g^r) z_n^{-lr} (mod p), 0 <= m_l <= deg.
Cyclotomic lift_value(const FiniteGroupTable& g, const std::vector<u64>& chi_mod_p, int rep,
                      long long degree, u64 p, u64 zeta_e, long long e) {
  const int n = g.element_order(rep);
  const u64 zn = mod_pow(zeta_e, static_cast<u64>(e / n), p);  // primitive n-th root
  const u64 zn_inv = mod_inv(zn, p);
  const u64 n_inv = mod_inv(static_cast<u64>(n), p);
  std::vector<BigInt> mult(n, 0);
  // powers of the representative
  std::vector<int> pow_class(n);
  {
    int x = g.identity_index();
    for (int r = 0; r < n; ++r) {
      pow_class[r] = g.class_of(x);
      x = g.multiply(x, rep);
    }
  }
  BigInt total = 0;
  for (int l = 0; l < n; ++l) {
    u64 acc = 0;
    u64 w = 1;  // zn^{-l*r}
    const u64 step = mod_pow(zn_inv, static_cast<u64>(l), p);
    for (int r = 0; r < n; ++r) {
      acc = (acc + chi_mod_p[pow_class[r]] * w) % p;
      w = w * step % p;
    }
    u64 ml = acc * n_inv % p;
    if (ml > static_cast<u64>(degree)) {
      throw InternalError("character lift produced an out-of-range multiplicity");
    }
    mult[l] = static_cast<long long>(ml);
    total += mult[l];
  }
  if (total != degree) throw InternalError("character lift multiplicities do not sum to degree");
  Cyclotomic value(BigInt(0));
  for (int l = 0; l < n; ++l) {
    if (mult[l] == 0) continue;
    value += Cyclotomic::from_powers(n, [&] {
      std::vector<BigInt> c(static_cast<std::size_t>(l) + 1, 0);
      c[l] = mult[l];
      return c;
    }());
  }
  return value;
}

// --- cyclic groups: chi_j(g^k) = zeta_n^(jk) ------------------------------

std::vector<std::vector<Cyclotomic>> cyclic_rows(const FiniteGroupTable& g, const ClassData& cd) {
  const int n = static_cast<int>(g.order());
  int gen = -1;
  for (int i = 0; i < n; ++i) {
    if (g.element_order(i) == n) {
      gen = i;
      break;
    }
  }
  if (gen < 0) throw InternalError("cyclic path invoked on a non-cyclic group");
  // discrete log of each class representative w.r.t. the generator
  std::vector<long long> dlog(cd.count, -1);
  int x = g.identity_index();
  for (int k = 0; k < n; ++k) {
    int cls = g.class_of(x);  // classes are singletons
    dlog[cls] = k;
    x = g.multiply(x, gen);
  }
  std::vector<std::vector<Cyclotomic>> rows;
  for (int j = 0; j < n; ++j) {
    std::vector<Cyclotomic> row;
    for (int c = 0; c < cd.count; ++c) row.push_back(Cyclotomic::root_of_unity(n, j * dlog[c]));
    rows.push_back(std::move(row));
  }
  return rows;
}

// --- general abelian groups via the relation lattice -----------------------

std::vector<std::vector<Cyclotomic>> abelian_rows(const FiniteGroupTable& g, const ClassData& cd) {
  const int n = static_cast<int>(g.order());
  // Reduced generating set, highest order first.
  std::vector<int> gens;
  std::vector<long long> gen_order;
  std::vector<bool> in_span(n, false);
  in_span[g.identity_index()] = true;
  int spanned = 1;
  while (spanned < n) {
    int best = -1;
    for (int i = 0; i < n; ++i) {
      if (!in_span[i] && (best < 0 || g.element_order(i) > g.element_order(best))) best = i;
    }
    gens.push_back(best);
    gen_order.push_back(g.element_order(best));
    // re-span
    std::fill(in_span.begin(), in_span.end(), false);
    std::vector<int> frontier{g.identity_index()};
    in_span[g.identity_index()] = true;
    spanned = 1;
    while (!frontier.empty()) {
      int x = frontier.back();
      frontier.pop_back();
      for (int gi : gens) {
        int y = g.multiply(gi, x);
        if (!in_span[y]) {
          in_span[y] = true;
          ++spanned;
          frontier.push_back(y);
        }
      }
    }
  }
  const int r = static_cast<int>(gens.size());
  // Enumerate the exponent box, recording a representative tuple per element
  // and every relation tuple.
  long long box = 1;
  for (long long o : gen_order) {
    box *= o;
    if (box > 2'000'000) throw ResourceError("abelian character path: exponent box too large");
  }
  std::vector<std::vector<long long>> elem_tuple(n);
  std::vector<std::vector<BigInt>> relations;
  std::vector<long long> tuple(r, 0);
  for (long long idx = 0; idx < box; ++idx) {
    long long t = idx;
    int prod = g.identity_index();
    for (int i = 0; i < r; ++i) {
      tuple[i] = t % gen_order[i];
      t /= gen_order[i];
      int pw = prod;
      for (long long k = 0; k < tuple[i]; ++k) pw = g.multiply(gens[i], pw);
      prod = pw;
    }
    if (elem_tuple[prod].empty() && prod != g.identity_index()) {
      elem_tuple[prod].assign(tuple.begin(), tuple.end());
    }
    if (prod == g.identity_index()) {
      std::vector<BigInt> rel(tuple.begin(), tuple.end());
      relations.push_back(std::move(rel));
    }
  }
  elem_tuple[g.identity_index()].assign(r, 0);
  for (int i = 0; i < r; ++i) {
    std::vector<BigInt> rel(r, 0);
    rel[i] = gen_order[i];
    relations.push_back(std::move(rel));
  }
  IntMat rel_mat(relations.size(), r);
  for (std::size_t i = 0; i < relations.size(); ++i) {
    for (int j = 0; j < r; ++j) rel_mat.at(i, j) = relations[i][j];
  }
  SNFResult snf = smith_normal_form(rel_mat);
  std::vector<long long> d(r);
  long long char_count = 1;
  for (int j = 0; j < r; ++j) {
    BigInt dj = snf.s.at(j, j);
    if (dj <= 0) throw InternalError("abelian relation lattice has infinite quotient");
    d[j] = static_cast<long long>(dj);
    char_count *= d[j];
  }
  if (char_count != n) throw InternalError("abelian character count mismatch");
  // Coordinates of a tuple x (row vector): x * V, entries mod d_j.
  auto coords = [&](const std::vector<long long>& x) {
    std::vector<long long> y(r, 0);
    for (int j = 0; j < r; ++j) {
      BigInt acc = 0;
      for (int i = 0; i < r; ++i) acc += BigInt(x[i]) * snf.v.at(i, j);
      BigInt m = acc % d[j];
      if (m < 0) m += d[j];
      y[j] = static_cast<long long>(m);
    }
    return y;
  };
  std::vector<std::vector<long long>> class_coord(cd.count);
  for (int c = 0; c < cd.count; ++c) class_coord[c] = coords(elem_tuple[cd.rep[c]]);

  std::vector<std::vector<Cyclotomic>> rows;
  std::vector<long long> choice(r, 0);
  for (long long idx = 0; idx < char_count; ++idx) {
    long long t = idx;
    for (int j = 0; j < r; ++j) {
      choice[j] = t % d[j];
      t /= d[j];
    }
    std::vector<Cyclotomic> row;
    for (int c = 0; c < cd.count; ++c) {
      Cyclotomic v(BigInt(1));
      for (int j = 0; j < r; ++j) {
        if (d[j] == 1) continue;
        v = v * Cyclotomic::root_of_unity(static_cast<int>(d[j]), choice[j] * class_coord[c][j]);
      }
      row.push_back(std::move(v));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// --- Dixon's modular method for the general case ---------------------------

std::vector<std::vector<Cyclotomic>> dixon_rows(const FiniteGroupTable& g, const ClassData& cd) {
  const int n = static_cast<int>(g.order());
  const int k = cd.count;
  const long long e = g.exponent();
  // p = 1 mod e and p > 2 sqrt(|G|)
  u64 lower = 1;
  while (lower * lower <= 4ull * n) ++lower;
  const u64 p = find_dixon_prime(static_cast<u64>(e), lower);
  const u64 zeta_e = mod_pow(primitive_root(p), (p - 1) / static_cast<u64>(e), p);

  // Class matrix M_i[k][j] = a_{ikj} (structure constants of class sums).
  auto class_matrix = [&](int i) {
    FpMat m(k, FpVec(k, 0));
    for (int x : g.conjugacy_classes()[i]) {
      for (int y = 0; y < n; ++y) {
        int z = g.multiply(x, y);
        m[g.class_of(y)][g.class_of(z)] += 1;
      }
    }
    for (int row = 0; row < k; ++row) {
      for (int col = 0; col < k; ++col) m[row][col] = m[row][col] / cd.size[col] % p;
    }
    return m;
  };

  // Split the common eigenspaces, biggest classes first.
  std::vector<int> order_by_size(k);
  std::iota(order_by_size.begin(), order_by_size.end(), 0);
  std::sort(order_by_size.begin(), order_by_size.end(), [&](int a, int b) {
    if (cd.size[a] != cd.size[b]) return cd.size[a] > cd.size[b];
    return a < b;
  });

  std::vector<FpMat> spaces;  // each: basis rows (full k coordinates), RREF
  {
    FpMat full(k, FpVec(k, 0));
    for (int i = 0; i < k; ++i) full[i][i] = 1;
    spaces.push_back(std::move(full));
  }
  for (int i : order_by_size) {
    if (cd.size[i] == 1 && cd.rep[i] == g.identity_index()) continue;
    bool all_one = std::all_of(spaces.begin(), spaces.end(),
                               [](const FpMat& s) { return s.size() == 1; });
    if (all_one) break;
    FpMat m = class_matrix(i);
    std::vector<FpMat> next;
    for (FpMat& space : spaces) {
      const std::size_t dim = space.size();
      if (dim == 1) {
        next.push_back(std::move(space));
        continue;
      }
      // Action of m on the subspace in basis coordinates.
      // Basis is in RREF; coordinates of w are read off at pivot columns.
      FpMat basis = space;
      std::vector<int> pivots;
      {
        FpMat tmp = basis;
        pivots = rref(tmp, p);
        basis = tmp;  // keep RREF basis
      }
      FpMat action(dim, FpVec(dim, 0));
      for (std::size_t b = 0; b < dim; ++b) {
        FpVec w(k, 0);
        for (int col = 0; col < k; ++col) {
          if (basis[b][col] == 0) continue;
          for (int row = 0; row < k; ++row) {
            w[row] = (w[row] + m[row][col] * basis[b][col]) % p;
          }
        }
        // coordinates: subtract multiples of basis rows at pivot columns
        for (std::size_t rbi = 0; rbi < dim; ++rbi) {
          u64 c = w[pivots[rbi]];
          action[b][rbi] = c;
          if (c == 0) continue;
          for (int col = 0; col < k; ++col) w[col] = (w[col] + (p - c) * basis[rbi][col]) % p;
        }
        for (int col = 0; col < k; ++col) {
          if (w[col] != 0) throw InternalError("class matrix does not preserve eigenspace");
        }
      }
      // transpose: action maps basis vector b to sum_r action[b][r] basis_r.
      // Eigen decomposition of the matrix A with A[r][b] = action[b][r].
      FpMat a(dim, FpVec(dim, 0));
      for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t b = 0; b < dim; ++b) a[r][b] = action[b][r];
      }
      FpVec poly = char_poly(a, p);
      std::vector<u64> roots;
      for (u64 lam = 0; lam < p; ++lam) {
        if (poly_eval(poly, lam, p) == 0) roots.push_back(lam);
      }
      for (u64 lam : roots) {
        FpMat shifted = a;
        for (std::size_t d2 = 0; d2 < dim; ++d2) shifted[d2][d2] = (shifted[d2][d2] + p - lam) % p;
        FpMat kernel = nullspace(shifted, p);
        if (kernel.empty()) continue;
        FpMat sub;
        for (const FpVec& coef : kernel) {
          FpVec v(k, 0);
          for (std::size_t b = 0; b < dim; ++b) {
            if (coef[b] == 0) continue;
            for (int col = 0; col < k; ++col) {
              v[col] = (v[col] + coef[b] * basis[b][col]) % p;
            }
          }
          sub.push_back(std::move(v));
        }
        rref(sub, p);
        next.push_back(std::move(sub));
      }
    }
    spaces = std::move(next);
  }
  for (const FpMat& s : spaces) {
    if (s.size() != 1) throw InternalError("Dixon eigenspace splitting did not terminate");
  }
  if (static_cast<int>(spaces.size()) != k) {
    throw InternalError("Dixon splitting produced a wrong number of characters");
  }

  int id_class = g.class_of(g.identity_index());
  std::vector<std::vector<Cyclotomic>> rows;
  for (const FpMat& s : spaces) {
    FpVec v = s[0];
    if (v[id_class] == 0) throw InternalError("Dixon eigenvector vanishes at the identity class");
    u64 norm = mod_inv(v[id_class], p);
    for (u64& x : v) x = x * norm % p;
    // degree from sum_j v_j v_{j*} / |C_j| = |G| / chi(1)^2
    u64 t = 0;
    for (int j = 0; j < k; ++j) {
      t = (t + v[j] * v[cd.inv_class[j]] % p * mod_inv(cd.size[j], p)) % p;
    }
    u64 target = static_cast<u64>(n) % p * mod_inv(t, p) % p;
    long long degree = -1;
    for (long long dcand = 1; dcand * dcand <= n; ++dcand) {
      if (static_cast<u64>(dcand) * dcand % p == target) {
        degree = dcand;
        break;
      }
    }
    if (degree < 0) throw InternalError("Dixon degree recovery failed");
    std::vector<u64> chi(k);
    for (int j = 0; j < k; ++j) {
      chi[j] = v[j] * static_cast<u64>(degree) % p * mod_inv(cd.size[j], p) % p;
    }
    std::vector<Cyclotomic> row;
    for (int j = 0; j < k; ++j) {
      row.push_back(lift_value(g, chi, cd.rep[j], degree, p, zeta_e, e));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------

void verify_row_orthogonality(const FiniteGroupTable& g, const ClassData& cd,
                              const std::vector<std::vector<Cyclotomic>>& rows) {
  const BigInt order(static_cast<long long>(g.order()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i; j < rows.size(); ++j) {
      Cyclotomic acc(BigInt(0));
      for (int c = 0; c < cd.count; ++c) {
        acc += Cyclotomic(BigInt(cd.size[c])) * rows[i][c] * rows[j][cd.inv_class[c]];
      }
      BigInt expected = (i == j) ? order : BigInt(0);
      if (!acc.is_integer() || acc.integer_value() != expected) {
        throw InternalError("character table fails row orthogonality");
      }
    }
  }
}

struct TableCache {
  std::shared_mutex mutex;
  std::map<std::vector<GroupElement>, CharacterTablePtr> entries;
};

TableCache& table_cache() {
  static TableCache cache;
  return cache;
}

}  // namespace

CharacterTablePtr character_table(const GroupTablePtr& g) {
  if (g->order() > kMaxGroupOrder) {
    throw ResourceError("character table limited to groups of order <= " +
                        std::to_string(kMaxGroupOrder));
  }
  {
    std::shared_lock lock(table_cache().mutex);
    auto it = table_cache().entries.find(g->elements());
    if (it != table_cache().entries.end()) return it->second;
  }
  ClassData cd = class_data(*g);
  std::vector<std::vector<Cyclotomic>> rows;
  if (g->order() == 1) {
    rows = {{Cyclotomic(BigInt(1))}};
  } else if (g->is_abelian() && g->exponent() == static_cast<long long>(g->order())) {
    rows = cyclic_rows(*g, cd);
  } else if (g->is_abelian()) {
    rows = abelian_rows(*g, cd);
  } else {
    rows = dixon_rows(*g, cd);
  }

  std::vector<long long> degrees;
  int id_class = g->class_of(g->identity_index());
  for (const auto& row : rows) {
    if (!row[id_class].is_integer()) throw InternalError("character degree is not an integer");
    degrees.push_back(static_cast<long long>(row[id_class].integer_value()));
  }
  // Deterministic row order: degree, then value key (larger coefficients
  // first so the trivial character leads within each degree).
  std::vector<int> perm(rows.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    if (degrees[a] != degrees[b]) return degrees[a] < degrees[b];
    for (int c = 0; c < cd.count; ++c) {
      int cmp = Cyclotomic::compare_for_sort(rows[a][c], rows[b][c]);
      if (cmp != 0) return cmp < 0;
    }
    return false;
  });
  auto table = std::shared_ptr<CharacterTable>(new CharacterTable());
  table->group_ = g;
  for (int idx : perm) {
    table->rows_.push_back(std::move(rows[idx]));
    table->degrees_.push_back(degrees[idx]);
  }
  long long degree_square_sum = 0;
  for (long long d : table->degrees_) degree_square_sum += d * d;
  if (degree_square_sum != static_cast<long long>(g->order())) {
    throw InternalError("character degrees do not satisfy sum of squares = |G|");
  }
  verify_row_orthogonality(*g, cd, table->rows_);

  std::unique_lock lock(table_cache().mutex);
  return table_cache().entries.emplace(g->elements(), table).first->second;
}

std::string CharacterTable::to_string() const {
  const auto& classes = group_->conjugacy_classes();
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> head{"classes:"};
  for (const auto& cls : classes) head.push_back(group_->element(cls.front()).to_string());
  grid.push_back(std::move(head));
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::vector<std::string> line{"chi_" + std::to_string(r) + ":"};
    for (const Cyclotomic& v : rows_[r]) line.push_back(v.to_string());
    grid.push_back(std::move(line));
  }
  std::vector<std::size_t> width(grid[0].size(), 0);
  for (const auto& line : grid) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  std::ostringstream os;
  for (const auto& line : grid) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      os << std::left << std::setw(static_cast<int>(width[i]) + 2) << line[i];
    }
    os << "\n";
  }
  return os.str();
}

Embedding Embedding::from_map(GroupTablePtr source, GroupTablePtr target,
                              const std::function<GroupElement(const GroupElement&)>& f) {
  Embedding e{std::move(source), std::move(target), {}};
  const int n = static_cast<int>(e.source->order());
  e.image.resize(n);
  for (int i = 0; i < n; ++i) {
    int idx = e.target->index_of(f(e.source->element(i)));
    if (idx < 0) throw InputError("embedding image is not contained in the target group");
    e.image[i] = idx;
  }
  std::vector<bool> hit(e.target->order(), false);
  for (int i = 0; i < n; ++i) {
    if (hit[e.image[i]]) throw InputError("embedding is not injective");
    hit[e.image[i]] = true;
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (e.image[e.source->multiply(a, b)] != e.target->multiply(e.image[a], e.image[b])) {
        throw InputError("embedding is not a homomorphism");
      }
    }
  }
  return e;
}

Embedding Embedding::inclusion(GroupTablePtr source, GroupTablePtr target) {
  return from_map(std::move(source), std::move(target), [](const GroupElement& g) { return g; });
}

Embedding Embedding::conjugated_inclusion(GroupTablePtr source, GroupTablePtr target,
                                          const GroupElement& g) {
  GroupElement gi = g.inverse();
  Embedding e{std::move(source), std::move(target), {}};
  const int n = static_cast<int>(e.source->order());
  e.image.resize(n);
  for (int i = 0; i < n; ++i) {
    int idx = e.target->index_of(gi * e.source->element(i) * g);
    if (idx < 0) {
      throw RigidityError("conjugated stabilizer is not contained in the face stabilizer");
    }
    e.image[i] = idx;
  }
  // conjugation is automatically an injective homomorphism
  return e;
}

std::vector<Cyclotomic> restrict_character(const CharacterTable& table, int row,
                                           const Embedding& embed) {
  if (embed.target.get() != &table.group()) {
    // accept equal element lists from distinct table objects
    if (embed.target->elements() != table.group().elements()) {
      throw InputError("restriction embedding target does not match the character table group");
    }
  }
  const FiniteGroupTable& h = *embed.source;
  std::vector<Cyclotomic> out;
  for (const auto& cls : h.conjugacy_classes()) {
    int g_class = table.group().class_of(embed.image[cls.front()]);
    out.push_back(table.value(row, g_class));
  }
  return out;
}

RepRingMap induction_matrix(const Embedding& embed) {
  CharacterTablePtr source_table = character_table(embed.source);
  CharacterTablePtr target_table = character_table(embed.target);
  const FiniteGroupTable& h = *embed.source;
  const auto& h_classes = h.conjugacy_classes();
  const BigInt h_order(static_cast<long long>(h.order()));

  RepRingMap map{embed, {}};
  map.matrix.assign(target_table->irreducible_count(),
                    std::vector<long long>(source_table->irreducible_count(), 0));
  for (int i = 0; i < target_table->irreducible_count(); ++i) {
    std::vector<Cyclotomic> restricted = restrict_character(*target_table, i, embed);
    for (int j = 0; j < source_table->irreducible_count(); ++j) {
      // <Res chi_i, phi_j>_H via class sums; conjugate as value at inverses.
      Cyclotomic acc(BigInt(0));
      for (std::size_t c = 0; c < h_classes.size(); ++c) {
        int inv_cls = h.class_of(h.inverse(h_classes[c].front()));
        acc += Cyclotomic(BigInt(static_cast<long long>(h_classes[c].size()))) * restricted[c] *
               source_table->value(j, inv_cls);
      }
      if (!acc.is_integer() || acc.integer_value() % h_order != 0) {
        throw InternalError("non-integral induction multiplicity");
      }
      BigInt m = acc.integer_value() / h_order;
      if (m < 0) throw InternalError("negative induction multiplicity");
      map.matrix[i][j] = static_cast<long long>(m);
    }
  }
  return map;
}

RepRingMap conjugated_induction(const Embedding& embed, const GroupElement& g) {
  GroupElement gi = g.inverse();
  Embedding twisted{embed.source, embed.target, {}};
  const int n = static_cast<int>(embed.source->order());
  twisted.image.resize(n);
  for (int i = 0; i < n; ++i) {
    int idx = embed.target->index_of(gi * embed.target->element(embed.image[i]) * g);
    if (idx < 0) {
      throw RigidityError("conjugated image is not contained in the target group");
    }
    twisted.image[i] = idx;
  }
  return induction_matrix(twisted);
}

}  // namespace gcw
