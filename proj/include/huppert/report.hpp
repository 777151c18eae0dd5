#pragma once

// JSON and text forms of verification reports and candidate rows.

#include <string>

#include "huppert/degreelogic.hpp"
#include "huppert/verifier.hpp"
#include "json.hpp"

namespace huppert {

nlohmann::ordered_json to_json(const EliminationWitness& witness);
nlohmann::ordered_json to_json(const VerificationReport& report);
nlohmann::ordered_json to_json(const Table1Row& row);

/// Throws DataError(ParseError) on a malformed document.
VerificationReport report_from_json(const nlohmann::ordered_json& doc);
VerificationReport report_from_text(const std::string& text);

std::string render_text(const EliminationWitness& witness);
std::string render_text(const VerificationReport& report);
std::string render_text(const Table1Row& row);

}  // namespace huppert
