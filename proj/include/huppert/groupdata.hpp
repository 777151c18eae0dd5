#pragma once

// Declarative group-theoretic premises: degree sets, orders, Schur
// multipliers, maximal subgroups, covering-group witnesses, candidate pools
// and per-target certificate scripts. Nothing here is computed from a
// group presentation; every record carries the source it was taken from.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "huppert/arith.hpp"
#include "huppert/degree_set.hpp"

namespace huppert {

enum class DataErrorKind { ParseError, ValidationError, DanglingReference, NotFound, NoPool, Unusable };

std::string_view to_string(DataErrorKind kind);

class DataError : public std::runtime_error {
 public:
  DataError(DataErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}
  DataErrorKind kind() const { return kind_; }

 private:
  DataErrorKind kind_;
};

/// A tagged, sourced assertion about a subgroup, e.g.
/// NO_SUBGROUP_OF_INDEX [7] or TRIVIAL_SCHUR_MULTIPLIER [].
struct StructuralFact {
  std::string tag;
  std::vector<Int> args;
  std::string source;
};

struct MaximalSubgroupRecord {
  std::string name;
  Int index = 0;
  std::optional<Int> order;
  std::vector<StructuralFact> facts;

  const StructuralFact* find_fact(std::string_view tag) const;
};

/// m.S for m dividing the Schur multiplier order, with one faithful degree
/// that must fail to divide into the named reference degree set.
struct CoverRecord {
  Int multiplier = 0;
  Int witness_degree = 0;
  std::string reference_set;
};

struct GroupProfile {
  std::string name;
  std::optional<Int> order;
  std::optional<DegreeSet> degrees;
  std::optional<DegreeSet> witness_degrees;
  Int out_order = 1;
  Int schur_multiplier_order = 1;
  std::optional<std::vector<MaximalSubgroupRecord>> max_subgroups;
  std::vector<CoverRecord> covers;
  /// Socle name; equal to `name` for simple groups.
  std::string socle;
  /// Proper overgroups of the socle inside its automorphism group that the
  /// dataset records (only meaningful on socle profiles).
  std::vector<std::string> overgroups;
  std::string source;

  /// Full degrees when present, otherwise the witness degrees.
  const DegreeSet& available_degrees() const;
  const MaximalSubgroupRecord* find_subgroup(std::string_view subgroup) const;
  const CoverRecord* find_cover(Int multiplier) const;
};

struct CandidatePool {
  std::vector<Int> prime_spectrum;
  std::vector<std::string> members;
  std::string source;
};

enum class CheckKind { ProductNonmember, Cover, OddParity, Fact };

std::string_view to_string(CheckKind kind);

/// One entry of a target's step-3 certificate script.
struct CertificateCheck {
  CheckKind kind = CheckKind::Fact;
  /// Maximal subgroup of the socle this check disposes of; empty for
  /// checks about the Schur multiplier.
  std::string subgroup;
  // product_nonmember
  std::vector<Int> factors;
  std::string reference;  // group name, or "quotients:<subgroup>"
  std::optional<Int> tau;
  std::string tau_group;
  // cover
  Int multiplier = 0;
  // odd_parity
  std::vector<Int> values;
  // fact
  std::string owner;
  std::string tag;
  std::vector<Int> fact_args;
  std::string note;
};

struct Certificate {
  std::string target;
  /// Preferred psi(1) per step-2 candidate.
  std::map<std::string, Int> step2_psi;
  std::vector<CertificateCheck> step3;
  /// Degree to report per step-5 sibling group; must distinguish.
  std::map<std::string, Int> step5_degree;
};

class Catalog {
 public:
  const std::vector<GroupProfile>& groups() const { return groups_; }
  const std::vector<CandidatePool>& pools() const { return pools_; }
  const std::map<std::string, Certificate>& certificates() const { return certificates_; }

  /// Hex digest of the canonical JSON form of the dataset.
  const std::string& fingerprint() const { return fingerprint_; }
  /// The source text as loaded.
  const std::string& text() const { return text_; }

  const GroupProfile* find(std::string_view name) const;
  const Certificate* certificate(std::string_view target) const;

  /// Resolves a user-supplied name: case-insensitive, ':' and '.' treated
  /// alike. Returns nullptr on no or ambiguous match.
  const GroupProfile* resolve(std::string_view user_name) const;
  /// Names within a small edit distance of the given one.
  std::vector<std::string> near_misses(std::string_view user_name) const;

 private:
  friend Catalog parse_catalog(std::string_view text);
  std::vector<GroupProfile> groups_;
  std::vector<CandidatePool> pools_;
  std::map<std::string, Certificate> certificates_;
  std::string fingerprint_;
  std::string text_;
};

/// Parses and validates a dataset document. Throws DataError.
Catalog parse_catalog(std::string_view text);

/// Loads "builtin:<tag>" or a bare built-in tag such as "mathieu",
/// otherwise reads the named file.
Catalog load_dataset(const std::string& path_or_tag);

/// Text of a built-in dataset, empty if the tag is unknown.
std::string_view builtin_dataset_text(std::string_view tag);

/// Profile lookup. Throws DataError(NotFound) listing near-miss names.
const GroupProfile& profile(const Catalog& catalog, std::string_view name);

/// The pool whose spectrum equals the given one. Throws DataError(NoPool).
const CandidatePool& pool_for(const Catalog& catalog, std::span<const Int> spectrum);

}  // namespace huppert
