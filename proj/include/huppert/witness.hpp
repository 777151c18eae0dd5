#pragma once

// Elimination witnesses and their independent validators.
//
// A witness is a rule tag, a few named references into the catalog and an
// ordered list of named integer arrays. The payload stores the chosen inputs
// together with every derived value (products, quotients, remainders), so
// the validator can recompute each one and any edited integer is caught.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "huppert/arith.hpp"
#include "huppert/groupdata.hpp"

namespace huppert {

enum class Rule {
  CaseANoPrimePower,
  CaseAGallagher,
  FrobB2,
  FrobB1,
  KBound,
  OutProduct,
  WitnessDegree,
  Cover,
  MaxIndex,
  ProductNonmember,
  OddParity,
  Overflow,
  Distinguishing,
};

std::string_view to_string(Rule rule);
std::optional<Rule> rule_from_string(std::string_view tag);

struct PayloadField {
  std::string name;
  std::vector<Int> values;

  friend bool operator==(const PayloadField&, const PayloadField&) = default;
};

struct EliminationWitness {
  Rule rule = Rule::CaseANoPrimePower;
  std::map<std::string, std::string> refs;
  std::vector<PayloadField> payload;

  EliminationWitness() = default;
  explicit EliminationWitness(Rule r) : rule(r) {}

  EliminationWitness& ref(std::string key, std::string value);
  EliminationWitness& add(std::string name, std::vector<Int> values);

  /// nullptr when absent.
  const std::vector<Int>* find(std::string_view name) const;
  /// Throws std::out_of_range when absent.
  const std::vector<Int>& field(std::string_view name) const;
  /// Empty string when absent.
  std::string ref_or_empty(std::string_view key) const;

  friend bool operator==(const EliminationWitness&, const EliminationWitness&) = default;
};

struct ValidationResult {
  bool ok = true;
  std::string reason;

  explicit operator bool() const { return ok; }
};

/// Re-checks a witness from its raw payload against the catalog. Does not
/// run any search; only recomputes the deterministic quantities the payload
/// claims. Never throws.
ValidationResult validate(const EliminationWitness& witness, const Catalog& catalog);

/// Prime-index Clifford pairing between a group and a normal subgroup of
/// prime index p: every degree of the larger group is d or p*d for a degree
/// d of the smaller one, and every degree of the smaller group reappears
/// as d or p*d above.
struct CliffordPairing {
  Int prime = 0;
  std::vector<Int> restrictions;  // triples [d, e, d/e]
  std::vector<Int> inductions;    // triples [d, e, d*e]
};

/// Builds the pairing, or nullopt when some degree has no partner.
std::optional<CliffordPairing> clifford_pairing(const DegreeSet& larger, const DegreeSet& smaller, Int prime);

/// Index of the smaller group in the larger when both orders are known and
/// the ratio is a prime. Without orders, a proper extension of a socle with
/// prime |Out| has that index. Otherwise nullopt.
std::optional<Int> prime_index(const GroupProfile& larger, const GroupProfile& smaller);

}  // namespace huppert
