#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gcw {

enum class ElementKind : std::uint8_t { Matrix = 0, Permutation = 1 };

/// An element of the ambient group: an integer matrix with determinant +-1
/// (optionally projective, identifying M with -M) or a permutation given by
/// its image sequence on {0,...,d-1}.
///
/// Elements are canonicalized on construction; for projective matrices the
/// canonical representative has its first nonzero entry (row-major) positive.
/// The total order used everywhere for tie-breaking is lexicographic on the
/// canonical encoding (kind, degree, projective flag, entries).
class GroupElement {
 public:
  static GroupElement matrix(int degree, std::vector<long long> row_major, bool projective);
  static GroupElement permutation(std::vector<long long> images);
  static GroupElement identity(ElementKind kind, int degree, bool projective);

  ElementKind kind() const { return kind_; }
  int degree() const { return degree_; }
  bool projective() const { return projective_; }
  const std::vector<long long>& data() const { return data_; }

  bool is_identity() const;
  GroupElement inverse() const;

  /// Exact product a*b (this happens-before b: (a*b) acts as a after b).
  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);

  bool operator==(const GroupElement& o) const {
    return kind_ == o.kind_ && degree_ == o.degree_ && projective_ == o.projective_ &&
           data_ == o.data_;
  }
  std::strong_ordering operator<=>(const GroupElement& o) const;

  std::string to_string() const;

 private:
  GroupElement(ElementKind kind, int degree, bool projective, std::vector<long long> data);
  void canonicalize();

  ElementKind kind_;
  int degree_;
  bool projective_;
  std::vector<long long> data_;  // d*d row-major entries, or d images
};

}  // namespace gcw
