#include "gcw/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "gcw/errors.hpp"

namespace gcw {

IntMat IntMat::identity(std::size_t n) {
  IntMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool IntMat::is_zero() const {
  for (const BigInt& v : data_) {
    if (v != 0) return false;
  }
  return true;
}

IntMat operator*(const IntMat& a, const IntMat& b) {
  if (a.cols_ != b.rows_) throw InternalError("matrix dimension mismatch in product");
  IntMat out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const BigInt& aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (b.at(k, j) == 0) continue;
        out.at(i, j) += aik * b.at(k, j);
      }
    }
  }
  return out;
}

std::string IntMat::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).str();
    os << "]\n";
  }
  return os.str();
}

namespace {

void swap_rows(IntMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

void swap_cols(IntMat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

void add_row(IntMat& m, std::size_t dst, std::size_t src, const BigInt& f) {
  if (f == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m.at(dst, j) += f * m.at(src, j);
}

void add_col(IntMat& m, std::size_t dst, std::size_t src, const BigInt& f) {
  if (f == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, dst) += f * m.at(i, src);
}

void negate_row(IntMat& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) = -m.at(r, j);
}

}  // namespace

SNFResult smith_normal_form(const IntMat& a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  SNFResult res{IntMat::identity(rows), a, IntMat::identity(cols)};
  IntMat& s = res.s;
  IntMat& u = res.u;
  IntMat& v = res.v;

  // Nearest-integer quotient keeps remainders at most half the pivot.
  auto rounded_div = [](const BigInt& a_, const BigInt& p) {
    BigInt q = a_ / p;
    BigInt r = a_ - q * p;
    BigInt half = abs(p);
    if (2 * abs(r) > half) q += (r > 0) == (p > 0) ? 1 : -1;
    return q;
  };

  const std::size_t n = std::min(rows, cols);
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Pivot: minimal nonzero |entry| in the trailing block, re-selected
      // every round; earliest position on ties.
      std::size_t pr = t, pc = t;
      BigInt best = 0;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          const BigInt& e = s.at(i, j);
          if (e == 0) continue;
          BigInt mag = abs(e);
          if (best == 0 || mag < best) {
            best = mag;
            pr = i;
            pc = j;
          }
        }
      }
      if (best == 0) {
        t = n;  // trailing block is zero; done
        break;
      }
      swap_rows(s, t, pr);
      swap_rows(u, t, pr);
      swap_cols(s, t, pc);
      swap_cols(v, t, pc);

      bool reduced = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (s.at(i, t) == 0) continue;
        BigInt q = rounded_div(s.at(i, t), s.at(t, t));
        add_row(s, i, t, -q);
        add_row(u, i, t, -q);
        if (s.at(i, t) != 0) reduced = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (s.at(t, j) == 0) continue;
        BigInt q = rounded_div(s.at(t, j), s.at(t, t));
        add_col(s, j, t, -q);
        add_col(v, j, t, -q);
        if (s.at(t, j) != 0) reduced = false;
      }
      if (!reduced) continue;  // smaller remainders exist; re-select pivot

      // Row and column are clear; make the pivot divide the trailing block.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (s.at(i, j) % s.at(t, t) != 0) {
            add_row(s, t, i, 1);
            add_row(u, t, i, 1);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (t >= n) break;
    if (s.at(t, t) < 0) {
      negate_row(s, t);
      negate_row(u, t);
    }
  }
  // Positive signs for any pivots placed before an early zero-block exit.
  for (std::size_t t = 0; t < n; ++t) {
    if (s.at(t, t) < 0) {
      negate_row(s, t);
      negate_row(u, t);
    }
  }
  return res;
}

std::size_t integer_rank(const IntMat& a) {
  std::size_t r = 0;
  SNFResult snf = smith_normal_form(a);
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) {
    if (snf.s.at(i, i) != 0) ++r;
  }
  return r;
}

std::vector<BigInt> invariant_factors(const IntMat& a) {
  SNFResult snf = smith_normal_form(a);
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) {
    if (snf.s.at(i, i) != 0) out.push_back(snf.s.at(i, i));
  }
  return out;
}

}  // namespace gcw
