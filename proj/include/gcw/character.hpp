#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "gcw/cyclotomic.hpp"
#include "gcw/group_table.hpp"

namespace gcw {

/// Injective homomorphism between explicit finite groups, stored as an index
/// map. Verified to be a monomorphism on construction.
struct Embedding {
  GroupTablePtr source;
  GroupTablePtr target;
  std::vector<int> image;  // source element index -> target element index

  static Embedding from_map(GroupTablePtr source, GroupTablePtr target,
                            const std::function<GroupElement(const GroupElement&)>& f);
  /// Ambient-element inclusion (every source element must be a target member).
  static Embedding inclusion(GroupTablePtr source, GroupTablePtr target);
  /// h -> g^-1 h g; throws RigidityError if the conjugate is not contained.
  static Embedding conjugated_inclusion(GroupTablePtr source, GroupTablePtr target,
                                        const GroupElement& g);
};

/// Table of irreducible complex characters with exact cyclotomic values.
/// Rows are sorted by (degree, value key); columns follow the group's
/// conjugacy class order.
class CharacterTable {
 public:
  const FiniteGroupTable& group() const { return *group_; }
  const GroupTablePtr& group_ptr() const { return group_; }
  int irreducible_count() const { return static_cast<int>(rows_.size()); }
  int class_count() const { return static_cast<int>(rows_.empty() ? 0 : rows_[0].size()); }
  long long degree(int row) const { return degrees_[row]; }
  const Cyclotomic& value(int row, int cls) const { return rows_[row][cls]; }
  const std::vector<Cyclotomic>& row(int r) const { return rows_[r]; }

  std::string to_string() const;  // aligned debug dump

 private:
  friend std::shared_ptr<const CharacterTable> character_table(const GroupTablePtr&);
  GroupTablePtr group_;
  std::vector<std::vector<Cyclotomic>> rows_;
  std::vector<long long> degrees_;
};

using CharacterTablePtr = std::shared_ptr<const CharacterTable>;

/// Character table of a finite group, |G| <= 2000. Cyclic and abelian groups
/// use closed-form constructions; the general case runs Dixon's modular
/// method. Results are memoized behind a shared cache.
CharacterTablePtr character_table(const GroupTablePtr& g);

/// Values of row `row` of chi restricted along the embedding, one per
/// source-group conjugacy class.
std::vector<Cyclotomic> restrict_character(const CharacterTable& table, int row,
                                           const Embedding& embed);

/// Integer matrix of induction multiplicities R_C(H) -> R_C(G).
/// entry (i, j) = <Res chi_i, phi_j>_H by Frobenius reciprocity.
struct RepRingMap {
  Embedding embed;
  std::vector<std::vector<long long>> matrix;  // [target irr][source irr]
};

RepRingMap induction_matrix(const Embedding& embed);
RepRingMap conjugated_induction(const Embedding& embed, const GroupElement& g);

}  // namespace gcw
