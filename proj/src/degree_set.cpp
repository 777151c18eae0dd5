#include "huppert/degree_set.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace huppert {

DegreeSet::DegreeSet(std::vector<Int> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
  if (values_.empty() || values_.front() != 1) {
    throw std::invalid_argument("degree set must contain 1 and only positive integers");
  }
  if (std::adjacent_find(values_.begin(), values_.end()) != values_.end()) {
    throw std::invalid_argument("degree set contains a duplicate entry");
  }
}

DegreeSet DegreeSet::closure_of(std::vector<Int> values) {
  for (Int v : values) {
    if (v < 1) throw std::invalid_argument("degree " + std::to_string(v) + " is not positive");
  }
  values.push_back(1);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return DegreeSet(std::move(values));
}

bool DegreeSet::contains(Int d) const { return std::binary_search(values_.begin(), values_.end(), d); }

bool DegreeSet::has_multiple_of(Int d) const {
  return std::any_of(values_.begin(), values_.end(), [d](Int x) { return x % d == 0; });
}

bool DegreeSet::has_proper_multiple_of(Int d) const {
  return std::any_of(values_.begin(), values_.end(), [d](Int x) { return x != d && x % d == 0; });
}

bool DegreeSet::is_subset_of(const DegreeSet& other) const {
  return std::includes(other.values_.begin(), other.values_.end(), values_.begin(), values_.end());
}

}  // namespace huppert
