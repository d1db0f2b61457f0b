#include "gcw/group_table.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "gcw/errors.hpp"

namespace gcw {

namespace {

int find_sorted(const std::vector<GroupElement>& v, const GroupElement& g) {
  auto it = std::lower_bound(v.begin(), v.end(), g);
  if (it != v.end() && *it == g) return static_cast<int>(it - v.begin());
  return -1;
}

}  // namespace

std::shared_ptr<const FiniteGroupTable> FiniteGroupTable::generate(
    std::span<const GroupElement> gens, ElementKind kind, int degree, bool projective,
    std::size_t bound) {
  const GroupElement id = GroupElement::identity(kind, degree, projective);
  for (const GroupElement& g : gens) {
    if (g.kind() != kind || g.degree() != degree || g.projective() != projective) {
      throw InputError("stabilizer generator does not match the ambient group signature");
    }
  }
  std::set<GroupElement> closed{id};
  std::vector<GroupElement> queue{id};
  while (!queue.empty()) {
    GroupElement x = std::move(queue.back());
    queue.pop_back();
    for (const GroupElement& g : gens) {
      GroupElement y = g * x;
      if (closed.insert(y).second) {
        if (closed.size() > bound) {
          throw ResourceError("infinite or oversized stabilizer (closure exceeds " +
                              std::to_string(bound) + " elements)");
        }
        queue.push_back(std::move(y));
      }
    }
  }
  auto table = std::shared_ptr<FiniteGroupTable>(new FiniteGroupTable());
  table->elements_.assign(closed.begin(), closed.end());
  table->build_tables();
  return table;
}

std::shared_ptr<const FiniteGroupTable> FiniteGroupTable::from_closed_elements(
    std::vector<GroupElement> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  auto table = std::shared_ptr<FiniteGroupTable>(new FiniteGroupTable());
  table->elements_ = std::move(elements);
  table->build_tables();
  return table;
}

void FiniteGroupTable::build_tables() {
  const int n = static_cast<int>(elements_.size());
  if (n == 0) throw InternalError("empty element list in group table");
  mul_.assign(static_cast<std::size_t>(n) * n, -1);
  inv_.assign(n, -1);
  identity_ = -1;
  for (int a = 0; a < n; ++a) {
    if (elements_[a].is_identity()) identity_ = a;
    for (int b = 0; b < n; ++b) {
      GroupElement p = elements_[a] * elements_[b];
      int idx = find_sorted(elements_, p);
      if (idx < 0) throw InputError("element list is not closed under multiplication");
      mul_[a * n + b] = idx;
      if (idx == identity_ && identity_ >= 0) inv_[a] = b;
    }
  }
  if (identity_ < 0) throw InputError("element list does not contain the identity");
  // inv_ may have been filled before identity_ was known; redo directly.
  for (int a = 0; a < n; ++a) {
    inv_[a] = -1;
    for (int b = 0; b < n; ++b) {
      if (mul_[a * n + b] == identity_) {
        inv_[a] = b;
        break;
      }
    }
    if (inv_[a] < 0) throw InputError("element list is not closed under inverse");
  }

  element_orders_.assign(n, 1);
  exponent_ = 1;
  for (int a = 0; a < n; ++a) {
    int x = a, ord = 1;
    while (x != identity_) {
      x = mul_[x * n + a];
      ++ord;
    }
    element_orders_[a] = ord;
    exponent_ = std::lcm(exponent_, static_cast<long long>(ord));
  }

  abelian_ = true;
  for (int a = 0; a < n && abelian_; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (mul_[a * n + b] != mul_[b * n + a]) {
        abelian_ = false;
        break;
      }
    }
  }

  // Conjugacy classes: orbits under x -> g x g^-1, ordered by least member.
  class_of_.assign(n, -1);
  classes_.clear();
  for (int a = 0; a < n; ++a) {
    if (class_of_[a] >= 0) continue;
    std::vector<int> cls;
    std::vector<int> stack{a};
    class_of_[a] = static_cast<int>(classes_.size());
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      cls.push_back(x);
      for (int g = 0; g < n; ++g) {
        int y = mul_[mul_[g * n + x] * n + inv_[g]];
        if (class_of_[y] < 0) {
          class_of_[y] = class_of_[a];
          stack.push_back(y);
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    classes_.push_back(std::move(cls));
  }
}

int FiniteGroupTable::index_of(const GroupElement& g) const {
  return find_sorted(elements_, g);
}

std::vector<long long> FiniteGroupTable::abelianization_invariants() const {
  const int n = static_cast<int>(order());
  // Commutator subgroup: closure of all [a,b] = a^-1 b^-1 a b.
  std::set<int> comm;
  std::vector<int> queue;
  comm.insert(identity_);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int c = mul_[mul_[mul_[inv_[a] * n + inv_[b]] * n + a] * n + b];
      if (comm.insert(c).second) queue.push_back(c);
    }
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(comm.begin(), comm.end());
    for (int x : cur) {
      for (int y : cur) {
        if (comm.insert(mul_[x * n + y]).second) grew = true;
      }
    }
  }
  // Quotient cosets and their orders.
  std::vector<int> coset_of(n, -1);
  std::vector<int> reps;
  for (int a = 0; a < n; ++a) {
    if (coset_of[a] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(a);
    for (int h : comm) coset_of[mul_[a * n + h]] = id;
  }
  const int q = static_cast<int>(reps.size());
  std::vector<long long> orders(q, 1);
  for (int c = 0; c < q; ++c) {
    int x = reps[c], acc = x;
    long long ord = 1;
    while (coset_of[acc] != coset_of[identity_]) {
      acc = mul_[acc * n + x];
      ++ord;
    }
    orders[c] = ord;
  }
  return abelian_invariants_from_orders(orders);
}

std::vector<long long> abelian_invariants_from_orders(const std::vector<long long>& orders) {
  long long n = static_cast<long long>(orders.size());
  if (n <= 1) return {};
  // Factor the group order from the element orders (their lcm has the same
  // prime support as |A|).
  long long lcm_all = 1;
  for (long long o : orders) lcm_all = std::lcm(lcm_all, o);
  std::vector<long long> primes;
  long long m = lcm_all;
  for (long long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      primes.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) primes.push_back(m);

  // For each prime, the p-type: lambda is the conjugate of the partition
  // mu_j = log_p(N_j / N_{j-1}) where N_j counts elements of order dividing p^j.
  std::vector<std::vector<long long>> per_prime;  // descending prime-power lists
  for (long long p : primes) {
    // N_j = #{a : p-part of ord(a) <= p^j}, starting with N_0; the ratios
    // N_j / N_{j-1} are the p-powers mu_j of the conjugate partition.
    std::vector<long long> counts;
    long long pj = 1;
    while (true) {
      long long nj = 0;
      for (long long o : orders) {
        long long op = 1;  // p-part of o
        long long oo = o;
        while (oo % p == 0) {
          op *= p;
          oo /= p;
        }
        if (op <= pj) ++nj;
      }
      counts.push_back(nj);
      if (counts.size() > 1 && counts[counts.size() - 1] == counts[counts.size() - 2]) {
        counts.pop_back();
        break;
      }
      pj *= p;
    }
    std::vector<long long> mu;  // mu_j = #{i : lambda_i >= j}
    for (std::size_t j = 1; j < counts.size(); ++j) {
      long long ratio = counts[j] / counts[j - 1];
      long long e = 0;
      while (ratio > 1) {
        ratio /= p;
        ++e;
      }
      mu.push_back(e);
    }
    // Conjugate partition -> exponents lambda_1 >= lambda_2 >= ...
    std::vector<long long> lambda;
    for (long long i = 0; i < (mu.empty() ? 0 : mu[0]); ++i) {
      long long e = 0;
      for (long long mj : mu) {
        if (mj > i) ++e;
      }
      lambda.push_back(e);
    }
    std::vector<long long> powers;
    for (long long e : lambda) {
      long long v = 1;
      for (long long i = 0; i < e; ++i) v *= p;
      powers.push_back(v);
    }
    per_prime.push_back(std::move(powers));
  }
  std::size_t k = 0;
  for (const auto& v : per_prime) k = std::max(k, v.size());
  std::vector<long long> invariants(k, 1);
  for (const auto& v : per_prime) {
    for (std::size_t i = 0; i < v.size(); ++i) invariants[i] *= v[i];
  }
  std::reverse(invariants.begin(), invariants.end());  // ascending, d1 | d2 | ...
  return invariants;
}

CosetList left_cosets(const GroupTablePtr& g, const GroupTablePtr& h) {
  for (const GroupElement& e : h->elements()) {
    if (!g->contains(e)) throw InputError("left_cosets: subgroup is not contained in the group");
  }
  const int n = static_cast<int>(g->order());
  std::vector<bool> covered(n, false);
  CosetList out{g, h, {}};
  for (int a = 0; a < n; ++a) {
    if (covered[a]) continue;
    out.representatives.push_back(g->element(a));  // least key in its coset
    for (const GroupElement& e : h->elements()) {
      int idx = g->index_of(g->element(a) * e);
      covered[idx] = true;
    }
  }
  return out;
}

bool is_normal(const GroupTablePtr& g, const GroupTablePtr& n) {
  for (const GroupElement& e : n->elements()) {
    if (!g->contains(e)) throw InputError("is_normal: subgroup is not contained in the group");
  }
  for (const GroupElement& x : g->elements()) {
    GroupElement xi = x.inverse();
    for (const GroupElement& e : n->elements()) {
      if (!n->contains(x * e * xi)) return false;
    }
  }
  return true;
}

GroupTablePtr intersection(const FiniteGroupTable& a, const FiniteGroupTable& b) {
  std::vector<GroupElement> common;
  for (const GroupElement& e : a.elements()) {
    if (b.contains(e)) common.push_back(e);
  }
  return FiniteGroupTable::from_closed_elements(std::move(common));
}

GroupTablePtr conjugate_subgroup(const FiniteGroupTable& h, const GroupElement& g) {
  GroupElement gi = g.inverse();
  std::vector<GroupElement> out;
  out.reserve(h.order());
  for (const GroupElement& e : h.elements()) out.push_back(g * e * gi);
  return FiniteGroupTable::from_closed_elements(std::move(out));
}

}  // namespace gcw
