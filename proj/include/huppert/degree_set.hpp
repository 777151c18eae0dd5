#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "huppert/arith.hpp"

namespace huppert {

/// A set of character degrees: strictly ascending positive integers that
/// always include 1. Multiplicities are not represented.
class DegreeSet {
 public:
  DegreeSet() : values_{1} {}
  /// Throws std::invalid_argument unless the input, once sorted, is
  /// duplicate-free, positive and contains 1.
  explicit DegreeSet(std::vector<Int> values);
  DegreeSet(std::initializer_list<Int> values) : DegreeSet(std::vector<Int>(values)) {}

  /// Builds a set from arbitrary positive integers, adding 1 and
  /// dropping duplicates.
  static DegreeSet closure_of(std::vector<Int> values);

  std::span<const Int> values() const { return values_; }
  /// Elements other than 1, ascending.
  std::span<const Int> nontrivial() const { return std::span<const Int>(values_).subspan(1); }
  std::size_t size() const { return values_.size(); }
  Int max() const { return values_.back(); }
  bool contains(Int d) const;
  /// True iff some element is a multiple of d.
  bool has_multiple_of(Int d) const;
  /// True iff some element other than d itself is a multiple of d.
  bool has_proper_multiple_of(Int d) const;
  bool is_subset_of(const DegreeSet& other) const;

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const DegreeSet&, const DegreeSet&) = default;

 private:
  std::vector<Int> values_;
};

}  // namespace huppert
