#pragma once

// Elimination rules over character degree sets. Each rule either returns a
// witness that re-validates on its own or reports failure as a value.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "huppert/arith.hpp"
#include "huppert/degree_set.hpp"
#include "huppert/groupdata.hpp"
#include "huppert/witness.hpp"

namespace huppert {

/// Search cap for k_bound.
inline constexpr Int kBoundCap = 10;

bool divides_some(Int d, std::span<const Int> s);
inline bool divides_some(Int d, const DegreeSet& s) { return divides_some(d, s.values()); }

struct DivisibilityResult {
  bool divides = true;
  /// Least failing degree.
  std::optional<Int> witness;
  /// Every failing degree, ascending.
  std::vector<Int> failing;
};

/// Whether every available degree of S divides some degree of H.
DivisibilityResult degrees_divide(const GroupProfile& S, const GroupProfile& H);

struct CandidateVerdict {
  std::string name;
  bool accepted = false;
  std::vector<Int> failing;
  /// WITNESS_DEGREE for rejected candidates.
  std::optional<EliminationWitness> witness;
};

struct Table1Row {
  std::string target;
  std::vector<CandidateVerdict> verdicts;

  std::vector<std::string> accepted() const;
  const CandidateVerdict* verdict(std::string_view name) const;
};

Table1Row table1_row(const GroupProfile& H, const CandidatePool& pool, const Catalog& catalog);

struct CaseAResult {
  bool ok = false;
  std::vector<EliminationWitness> witnesses;
  /// Prime with an r-power degree that no coprime degree blocks.
  std::optional<Int> stuck_prime;
};

CaseAResult case_a_eliminate(const DegreeSet& cd, const std::string& set_name = {});

struct FrobeniusResult {
  bool ok = false;
  std::map<Int, EliminationWitness> by_f;
  std::vector<Int> stuck;
};

FrobeniusResult frobenius_eliminate(const DegreeSet& cd, const std::string& set_name = {});

/// Largest k <= kBoundCap such that psi^k divides some degree of cdH for
/// every psi in cd(S). Throws DataError(Unusable) without full degrees.
Int k_bound(const GroupProfile& S, const DegreeSet& cdH);
EliminationWitness k_bound_witness(const GroupProfile& S, const DegreeSet& cdH, const std::string& set_name);

/// OUT_PRODUCT witness: psi with t*psi outside cdH for every t | |Out(S)|.
/// Tries `preferred` first, then scans ascending.
std::optional<EliminationWitness> socle_eliminate(const GroupProfile& S, const DegreeSet& cdH,
                                                  const std::string& set_name = {},
                                                  std::optional<Int> preferred = std::nullopt);

struct QuotientProfile {
  const MaximalSubgroupRecord* subgroup = nullptr;
  std::vector<Int> quotients;
};

/// Throws DataError(Unusable) when H0 has no maximal-subgroup list.
std::vector<QuotientProfile> maximal_index_quotients(const GroupProfile& H0, const DegreeSet& cdH);
EliminationWitness max_index_witness(const GroupProfile& H0, const QuotientProfile& q, const std::string& set_name);

/// True iff the product of the factors divides no element of cd.
bool product_nonmember(std::span<const Int> factors, std::span<const Int> cd);

struct ProductRequest {
  std::vector<Int> factors;
  std::string reference;
  std::vector<Int> reference_values;
  std::optional<Int> tau;
  std::string tau_group;
  std::string subgroup;
  /// Needed when the reference is a quotient set.
  std::string group;
  std::string set;
};

std::optional<EliminationWitness> product_nonmember_witness(const ProductRequest& request);

std::optional<EliminationWitness> cover_eliminate(const GroupProfile& owner, const CoverRecord& cover,
                                                  const DegreeSet& reference);

/// True iff every value is odd and greater than 1.
bool odd_parity_eliminate(std::span<const Int> values);
std::optional<EliminationWitness> odd_parity_witness(std::span<const Int> values, const std::string& group,
                                                     const std::string& subgroup);

std::optional<EliminationWitness> overflow_check(const DegreeSet& cd_socle, const DegreeSet& cdH,
                                                 const std::string& socle_name = {},
                                                 const std::string& set_name = {});

/// Least element of cdH outside cdX.
std::optional<Int> distinguishing_degree(const DegreeSet& cdH, const DegreeSet& cdX);

}  // namespace huppert
