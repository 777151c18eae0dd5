#pragma once

// Five-step verification of a target group and independent re-checking of
// the resulting reports.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "huppert/groupdata.hpp"
#include "huppert/witness.hpp"

namespace huppert {

inline constexpr std::string_view kEngineVersion = "0.1.0";

enum class StepStatus { Pass, Fail, DataMissing };

std::string_view to_string(StepStatus status);
std::optional<StepStatus> step_status_from_string(std::string_view text);

/// A structural fact a step relied on, copied from the dataset.
struct Assumption {
  std::string owner;
  std::string subgroup;
  std::string tag;
  std::vector<Int> args;
  std::string source;

  friend bool operator==(const Assumption&, const Assumption&) = default;
};

struct StepResult {
  int step = 0;
  StepStatus status = StepStatus::DataMissing;
  std::vector<EliminationWitness> witnesses;
  std::vector<Assumption> assumptions;
  std::vector<std::string> notes;

  friend bool operator==(const StepResult&, const StepResult&) = default;
};

struct VerificationReport {
  std::string engine_version;
  std::string dataset_fingerprint;
  std::string target;
  std::string socle;
  /// Pool members surviving the divisibility filter, in pool order.
  std::vector<std::string> table1_row;
  std::vector<StepResult> steps;

  /// PASS iff all five steps pass; FAIL if any step fails; otherwise
  /// DATA_MISSING.
  StepStatus overall() const;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

/// Runs steps 1-5 for the named target. Throws DataError when the target
/// or its socle is missing or lacks a full degree set.
VerificationReport verify(const Catalog& catalog, std::string_view target);

class FingerprintMismatch : public std::runtime_error {
 public:
  FingerprintMismatch(const std::string& expected, const std::string& actual)
      : std::runtime_error("FINGERPRINT_MISMATCH: report was made against dataset " + expected +
                           ", catalog is " + actual) {}
};

struct RecheckResult {
  bool ok = true;
  std::vector<std::string> problems;
};

/// Re-validates every witness from its payload and checks that each PASS
/// step carries the witnesses its claim needs. Throws FingerprintMismatch.
RecheckResult recheck(const VerificationReport& report, const Catalog& catalog);

}  // namespace huppert
