#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "gcw/element.hpp"

namespace gcw {

/// Explicit finite subgroup of the ambient group: closed element list (sorted
/// by canonical key), multiplication/inverse tables indexed by position, and
/// cached conjugacy data. Immutable after construction.
class FiniteGroupTable {
 public:
  static constexpr std::size_t kDefaultClosureBound = 10000;

  /// Closes a generating set under multiplication. An empty generating set
  /// needs the ambient signature to build the trivial group.
  static std::shared_ptr<const FiniteGroupTable> generate(std::span<const GroupElement> gens,
                                                          ElementKind kind, int degree,
                                                          bool projective,
                                                          std::size_t bound = kDefaultClosureBound);

  /// Builds a table from an already-closed element list (e.g. an intersection
  /// of two subgroups). Throws if the list is not closed.
  static std::shared_ptr<const FiniteGroupTable> from_closed_elements(
      std::vector<GroupElement> elements);

  std::size_t order() const { return elements_.size(); }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const GroupElement& element(int i) const { return elements_[i]; }
  int identity_index() const { return identity_; }

  int multiply(int a, int b) const { return mul_[a * static_cast<int>(order()) + b]; }
  int inverse(int a) const { return inv_[a]; }

  /// Index of an element, or -1 if not a member.
  int index_of(const GroupElement& g) const;
  bool contains(const GroupElement& g) const { return index_of(g) >= 0; }

  /// Partition of element indices into conjugacy classes; classes are ordered
  /// by their least element key, members sorted ascending.
  const std::vector<std::vector<int>>& conjugacy_classes() const { return classes_; }
  int class_of(int element_index) const { return class_of_[element_index]; }

  int element_order(int i) const { return element_orders_[i]; }
  long long exponent() const { return exponent_; }
  bool is_abelian() const { return abelian_; }

  /// Invariant factors d1 | d2 | ... of the abelianization G/[G,G].
  std::vector<long long> abelianization_invariants() const;

 private:
  FiniteGroupTable() = default;
  void build_tables();  // mul/inv/classes/orders from sorted elements_

  std::vector<GroupElement> elements_;
  int identity_ = -1;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::vector<std::vector<int>> classes_;
  std::vector<int> class_of_;
  std::vector<int> element_orders_;
  long long exponent_ = 1;
  bool abelian_ = true;
};

using GroupTablePtr = std::shared_ptr<const FiniteGroupTable>;

/// Ordered left-coset representatives of H in G (canonical least-key element
/// per coset).
struct CosetList {
  GroupTablePtr group;
  GroupTablePtr subgroup;
  std::vector<GroupElement> representatives;
};

CosetList left_cosets(const GroupTablePtr& g, const GroupTablePtr& h);
bool is_normal(const GroupTablePtr& g, const GroupTablePtr& n);

/// Subgroup of elements common to both tables.
GroupTablePtr intersection(const FiniteGroupTable& a, const FiniteGroupTable& b);

/// The conjugate subgroup g H g^-1.
GroupTablePtr conjugate_subgroup(const FiniteGroupTable& h, const GroupElement& g);

/// Invariant factors of a finite abelian group described by its multiplication
/// table (helper shared with the stabilizer census).
std::vector<long long> abelian_invariants_from_orders(
    const std::vector<long long>& element_orders);

}  // namespace gcw
