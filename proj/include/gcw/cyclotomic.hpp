#pragma once

#include <compare>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gcw {

using BigInt = boost::multiprecision::cpp_int;

/// The m-th cyclotomic polynomial as an integer coefficient vector
/// (constant term first, monic). Results are cached.
const std::vector<BigInt>& cyclotomic_polynomial(int m);

/// Element of Z[zeta_m] stored as a reduced residue modulo Phi_m(x) in the
/// power basis 1, x, ..., x^(deg Phi_m - 1). Arithmetic on values with
/// different conductors lifts both to the lcm first.
class Cyclotomic {
 public:
  Cyclotomic() : conductor_(1), coeffs_(1, 0) {}
  explicit Cyclotomic(const BigInt& integer) : conductor_(1), coeffs_(1, integer) {}
  explicit Cyclotomic(long long integer) : conductor_(1), coeffs_(1, integer) {}

  /// zeta_n^k at conductor n.
  static Cyclotomic root_of_unity(int n, long long k);
  /// Construct from an arbitrary coefficient list of powers of zeta_n.
  static Cyclotomic from_powers(int n, const std::vector<BigInt>& coeffs_of_powers);

  int conductor() const { return conductor_; }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }

  Cyclotomic lifted(int new_conductor) const;  // requires conductor() | new_conductor

  bool is_zero() const;
  bool is_integer() const;
  BigInt integer_value() const;  // requires is_integer()

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }

  bool operator==(const Cyclotomic& o) const;

  /// Deterministic total order used for character-row sorting: values are
  /// compared at the common conductor, larger coefficient vectors first
  /// (so 1 orders before any nontrivial root of unity, and x before -1-x).
  static int compare_for_sort(const Cyclotomic& a, const Cyclotomic& b);

  std::string to_string() const;

 private:
  Cyclotomic(int conductor, std::vector<BigInt> coeffs);
  void reduce(std::vector<BigInt>& poly) const;  // mod Phi_conductor

  int conductor_;
  std::vector<BigInt> coeffs_;
};

}  // namespace gcw
