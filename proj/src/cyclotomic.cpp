#include "gcw/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "gcw/errors.hpp"

namespace gcw {

namespace {

// Exact division of polynomials with the divisor monic; returns the quotient.
std::vector<BigInt> divide_monic(const std::vector<BigInt>& num, const std::vector<BigInt>& den) {
  std::vector<BigInt> rem = num;
  std::vector<BigInt> quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, 0);
  for (int i = static_cast<int>(rem.size()) - 1; i >= static_cast<int>(den.size()) - 1; --i) {
    BigInt c = rem[i];
    if (c == 0) continue;
    int shift = i - (static_cast<int>(den.size()) - 1);
    quot[shift] = c;
    for (std::size_t j = 0; j < den.size(); ++j) rem[shift + j] -= c * den[j];
  }
  for (const BigInt& r : rem) {
    if (r != 0) throw InternalError("non-exact division in cyclotomic polynomial computation");
  }
  return quot;
}

std::map<int, std::vector<BigInt>>& phi_cache() {
  static std::map<int, std::vector<BigInt>> cache;
  return cache;
}
std::mutex phi_mutex;

}  // namespace

const std::vector<BigInt>& cyclotomic_polynomial(int m) {
  std::lock_guard<std::mutex> lock(phi_mutex);
  auto it = phi_cache().find(m);
  if (it != phi_cache().end()) return it->second;
  std::vector<BigInt> result;
  if (m == 1) {
    result = {-1, 1};  // x - 1
  } else {
    // (x^m - 1) / prod_{d | m, d < m} Phi_d, computed without recursion on the
    // cache lock by resolving divisors iteratively.
    std::vector<BigInt> num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (int d = 1; d < m; ++d) {
      if (m % d != 0) continue;
      auto dit = phi_cache().find(d);
      if (dit == phi_cache().end()) {
        // Fill cache for d by the same formula; divisors of d are < d so this
        // terminates. Simple recursion with the lock held.
        std::vector<BigInt> dnum(d + 1, 0);
        dnum[0] = -1;
        dnum[d] = 1;
        for (int e = 1; e < d; ++e) {
          if (d % e != 0) continue;
          dnum = divide_monic(dnum, phi_cache().at(e));  // e < d already cached
        }
        dit = phi_cache().emplace(d, std::move(dnum)).first;
      }
      num = divide_monic(num, dit->second);
    }
    result = std::move(num);
  }
  return phi_cache().emplace(m, std::move(result)).first->second;
}

Cyclotomic::Cyclotomic(int conductor, std::vector<BigInt> coeffs)
    : conductor_(conductor), coeffs_(std::move(coeffs)) {
  reduce(coeffs_);
}

void Cyclotomic::reduce(std::vector<BigInt>& poly) const {
  const std::vector<BigInt>& phi = cyclotomic_polynomial(conductor_);
  const int deg = static_cast<int>(phi.size()) - 1;
  for (int i = static_cast<int>(poly.size()) - 1; i >= deg; --i) {
    BigInt c = poly[i];
    if (c == 0) continue;
    for (int j = 0; j <= deg; ++j) poly[i - deg + j] -= c * phi[j];
  }
  poly.resize(deg);
}

Cyclotomic Cyclotomic::root_of_unity(int n, long long k) {
  if (n <= 0) throw InputError("root_of_unity: order must be positive");
  k %= n;
  if (k < 0) k += n;
  std::vector<BigInt> coeffs(static_cast<std::size_t>(k) + 1, 0);
  coeffs[k] = 1;
  return Cyclotomic(n, std::move(coeffs));
}

Cyclotomic Cyclotomic::from_powers(int n, const std::vector<BigInt>& coeffs_of_powers) {
  std::vector<BigInt> coeffs = coeffs_of_powers;
  return Cyclotomic(n, std::move(coeffs));
}

Cyclotomic Cyclotomic::lifted(int new_conductor) const {
  if (new_conductor == conductor_) return *this;
  if (new_conductor % conductor_ != 0) {
    throw InternalError("cyclotomic lift requires a conductor multiple");
  }
  const int step = new_conductor / conductor_;
  std::vector<BigInt> poly(static_cast<std::size_t>(new_conductor), 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) poly[i * step] = coeffs_[i];
  return Cyclotomic(new_conductor, std::move(poly));
}

bool Cyclotomic::is_zero() const {
  for (const BigInt& c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

bool Cyclotomic::is_integer() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return false;
  }
  return true;
}

BigInt Cyclotomic::integer_value() const {
  if (!is_integer()) throw InternalError("cyclotomic value is not a rational integer");
  return coeffs_[0];
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  int m = std::lcm(a.conductor_, b.conductor_);
  Cyclotomic la = a.lifted(m), lb = b.lifted(m);
  for (std::size_t i = 0; i < la.coeffs_.size(); ++i) la.coeffs_[i] += lb.coeffs_[i];
  return la;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
  int m = std::lcm(a.conductor_, b.conductor_);
  Cyclotomic la = a.lifted(m), lb = b.lifted(m);
  for (std::size_t i = 0; i < la.coeffs_.size(); ++i) la.coeffs_[i] -= lb.coeffs_[i];
  return la;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  int m = std::lcm(a.conductor_, b.conductor_);
  Cyclotomic la = a.lifted(m), lb = b.lifted(m);
  std::vector<BigInt> prod(la.coeffs_.size() + lb.coeffs_.size(), 0);
  for (std::size_t i = 0; i < la.coeffs_.size(); ++i) {
    if (la.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < lb.coeffs_.size(); ++j) {
      if (lb.coeffs_[j] == 0) continue;
      prod[i + j] += la.coeffs_[i] * lb.coeffs_[j];
    }
  }
  return Cyclotomic(m, std::move(prod));
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (BigInt& c : r.coeffs_) c = -c;
  return r;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  int m = std::lcm(conductor_, o.conductor_);
  return lifted(m).coeffs_ == o.lifted(m).coeffs_;
}

int Cyclotomic::compare_for_sort(const Cyclotomic& a, const Cyclotomic& b) {
  int m = std::lcm(a.conductor_, b.conductor_);
  Cyclotomic la = a.lifted(m), lb = b.lifted(m);
  for (std::size_t i = 0; i < la.coeffs_.size(); ++i) {
    if (la.coeffs_[i] != lb.coeffs_[i]) return la.coeffs_[i] > lb.coeffs_[i] ? -1 : 1;
  }
  return 0;
}

std::string Cyclotomic::to_string() const {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (any) os << (coeffs_[i] > 0 ? " + " : " - ");
    else if (coeffs_[i] < 0) os << "-";
    BigInt mag = abs(coeffs_[i]);
    if (i == 0) {
      os << mag.str();
    } else {
      if (mag != 1) os << mag.str() << "*";
      os << "z" << conductor_;
      if (i > 1) os << "^" << i;
    }
    any = true;
  }
  if (!any) return "0";
  return os.str();
}

}  // namespace gcw
