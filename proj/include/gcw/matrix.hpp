#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gcw {

using BigInt = boost::multiprecision::cpp_int;

/// Dense arbitrary-precision integer matrix (row-major).
class IntMat {
 public:
  IntMat() : rows_(0), cols_(0) {}
  IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static IntMat identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigInt& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool operator==(const IntMat& o) const = default;
  bool is_zero() const;

  friend IntMat operator*(const IntMat& a, const IntMat& b);

  std::string to_string() const;

 private:
  std::size_t rows_, cols_;
  std::vector<BigInt> data_;
};

/// U * A * V = S with S diagonal, d_i | d_{i+1}, det U, det V in {+1, -1}.
struct SNFResult {
  IntMat u, s, v;
};

/// Smith normal form by elimination with minimal-|entry| pivoting. Exact and
/// deterministic; no modular shortcuts.
SNFResult smith_normal_form(const IntMat& a);

/// Rank of an integer matrix (exact, via fraction-free elimination).
std::size_t integer_rank(const IntMat& a);

/// Nonzero diagonal entries of the Smith form (the invariant factors).
std::vector<BigInt> invariant_factors(const IntMat& a);

}  // namespace gcw
