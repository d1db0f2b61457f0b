#include "gcw/element.hpp"

#include <algorithm>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "gcw/errors.hpp"

namespace gcw {

using boost::multiprecision::cpp_int;

namespace {

// Exact determinant via fraction-free Bareiss elimination.
cpp_int determinant(const std::vector<long long>& m, int d) {
  std::vector<cpp_int> a(m.begin(), m.end());
  cpp_int prev = 1;
  int sign = 1;
  for (int k = 0; k < d - 1; ++k) {
    if (a[k * d + k] == 0) {
      int pivot = -1;
      for (int i = k + 1; i < d; ++i) {
        if (a[i * d + k] != 0) {
          pivot = i;
          break;
        }
      }
      if (pivot < 0) return 0;
      for (int j = 0; j < d; ++j) std::swap(a[k * d + j], a[pivot * d + j]);
      sign = -sign;
    }
    for (int i = k + 1; i < d; ++i) {
      for (int j = k + 1; j < d; ++j) {
        a[i * d + j] = (a[i * d + j] * a[k * d + k] - a[i * d + k] * a[k * d + j]) / prev;
      }
      a[i * d + k] = 0;
    }
    prev = a[k * d + k];
  }
  return sign * a[(d - 1) * d + (d - 1)];
}

long long checked_narrow(const cpp_int& v, const char* context) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min()) {
    throw InternalError(std::string("integer overflow in ") + context);
  }
  return static_cast<long long>(v);
}

}  // namespace

GroupElement::GroupElement(ElementKind kind, int degree, bool projective,
                           std::vector<long long> data)
    : kind_(kind), degree_(degree), projective_(projective), data_(std::move(data)) {
  canonicalize();
}

void GroupElement::canonicalize() {
  if (kind_ != ElementKind::Matrix || !projective_) return;
  for (long long v : data_) {
    if (v > 0) return;
    if (v < 0) {
      for (long long& w : data_) w = -w;
      return;
    }
  }
}

GroupElement GroupElement::matrix(int degree, std::vector<long long> row_major, bool projective) {
  if (degree <= 0) throw InputError("matrix element degree must be positive");
  if (row_major.size() != static_cast<std::size_t>(degree) * degree) {
    throw InputError("matrix element has wrong number of entries");
  }
  cpp_int det = determinant(row_major, degree);
  if (det != 1 && det != -1) {
    throw InputError("matrix element is not invertible over the integers (det " + det.str() + ")");
  }
  return GroupElement(ElementKind::Matrix, degree, projective, std::move(row_major));
}

GroupElement GroupElement::permutation(std::vector<long long> images) {
  const int d = static_cast<int>(images.size());
  if (d <= 0) throw InputError("permutation element must have positive degree");
  std::vector<bool> seen(d, false);
  for (long long v : images) {
    if (v < 0 || v >= d || seen[v]) throw InputError("permutation image sequence is not a bijection");
    seen[v] = true;
  }
  return GroupElement(ElementKind::Permutation, d, false, std::move(images));
}

GroupElement GroupElement::identity(ElementKind kind, int degree, bool projective) {
  std::vector<long long> data;
  if (kind == ElementKind::Matrix) {
    data.assign(static_cast<std::size_t>(degree) * degree, 0);
    for (int i = 0; i < degree; ++i) data[i * degree + i] = 1;
  } else {
    data.resize(degree);
    for (int i = 0; i < degree; ++i) data[i] = i;
  }
  return GroupElement(kind, degree, kind == ElementKind::Matrix && projective, std::move(data));
}

bool GroupElement::is_identity() const {
  return *this == identity(kind_, degree_, projective_);
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  if (a.kind_ != b.kind_ || a.degree_ != b.degree_ || a.projective_ != b.projective_) {
    throw InputError("group element variant/degree mismatch in multiplication");
  }
  const int d = a.degree_;
  std::vector<long long> out;
  if (a.kind_ == ElementKind::Matrix) {
    out.assign(static_cast<std::size_t>(d) * d, 0);
    for (int i = 0; i < d; ++i) {
      for (int k = 0; k < d; ++k) {
        const long long aik = a.data_[i * d + k];
        if (aik == 0) continue;
        for (int j = 0; j < d; ++j) {
          cpp_int v = cpp_int(out[i * d + j]) + cpp_int(aik) * b.data_[k * d + j];
          out[i * d + j] = checked_narrow(v, "matrix multiplication");
        }
      }
    }
  } else {
    out.resize(d);
    for (int i = 0; i < d; ++i) out[i] = a.data_[b.data_[i]];
  }
  return GroupElement(a.kind_, d, a.projective_, std::move(out));
}

GroupElement GroupElement::inverse() const {
  const int d = degree_;
  if (kind_ == ElementKind::Permutation) {
    std::vector<long long> out(d);
    for (int i = 0; i < d; ++i) out[data_[i]] = i;
    return GroupElement(kind_, d, projective_, std::move(out));
  }
  // Gauss-Jordan over exact rationals; the result is integral since det = +-1.
  using boost::multiprecision::cpp_rational;
  std::vector<cpp_rational> a(static_cast<std::size_t>(d) * 2 * d, 0);
  const int w = 2 * d;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a[i * w + j] = data_[i * d + j];
    a[i * w + d + i] = 1;
  }
  for (int col = 0; col < d; ++col) {
    int pivot = -1;
    for (int i = col; i < d; ++i) {
      if (a[i * w + col] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) throw InternalError("singular matrix in inverse()");
    if (pivot != col) {
      for (int j = 0; j < w; ++j) std::swap(a[col * w + j], a[pivot * w + j]);
    }
    const cpp_rational p = a[col * w + col];
    for (int j = 0; j < w; ++j) a[col * w + j] /= p;
    for (int i = 0; i < d; ++i) {
      if (i == col || a[i * w + col] == 0) continue;
      const cpp_rational f = a[i * w + col];
      for (int j = 0; j < w; ++j) a[i * w + j] -= f * a[col * w + j];
    }
  }
  std::vector<long long> out(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const cpp_rational& v = a[i * w + d + j];
      if (denominator(v) != 1) throw InternalError("non-integral inverse of unimodular matrix");
      out[i * d + j] = checked_narrow(numerator(v), "matrix inverse");
    }
  }
  return GroupElement(kind_, d, projective_, std::move(out));
}

std::strong_ordering GroupElement::operator<=>(const GroupElement& o) const {
  if (auto c = kind_ <=> o.kind_; c != 0) return c;
  if (auto c = degree_ <=> o.degree_; c != 0) return c;
  if (auto c = projective_ <=> o.projective_; c != 0) return c;
  return std::lexicographical_compare_three_way(data_.begin(), data_.end(), o.data_.begin(),
                                                o.data_.end());
}

std::string GroupElement::to_string() const {
  std::ostringstream os;
  if (kind_ == ElementKind::Permutation) {
    os << "perm[";
    for (std::size_t i = 0; i < data_.size(); ++i) os << (i ? "," : "") << data_[i];
    os << "]";
  } else {
    os << (projective_ ? "pmat[" : "mat[");
    for (int i = 0; i < degree_; ++i) {
      os << (i ? ";" : "");
      for (int j = 0; j < degree_; ++j) os << (j ? "," : "") << data_[i * degree_ + j];
    }
    os << "]";
  }
  return os.str();
}

}  // namespace gcw
