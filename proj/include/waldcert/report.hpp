#pragma once

// Structured text records (one `key: value` per line) and JSON for the
// verdict and report types. JSON objects use sorted keys.

#include "waldcert/bounds.hpp"
#include "waldcert/demailly.hpp"
#include "waldcert/oracle.hpp"

#include <json.hpp>

#include <string>

namespace waldcert {

std::string bound_text(const WaldschmidtLowerBound& b);
nlohmann::json bound_json(const WaldschmidtLowerBound& b);

std::string verdict_text(const DemaillyVerdict& v);
nlohmann::json verdict_json(const DemaillyVerdict& v);

std::string threshold_text(const GeneralThresholdReport& r);
nlohmann::json threshold_json(const GeneralThresholdReport& r);

std::string regularity_text(const RegularityReport& r, const ContainmentMargin& c);
nlohmann::json regularity_json(const RegularityReport& r, const ContainmentMargin& c);

std::string lemma31_text(const Lemma31Report& r);
nlohmann::json lemma31_json(const Lemma31Report& r);

std::string oracle_csv(const OracleRun& run);
nlohmann::json oracle_json(const OracleRun& run);

}  // namespace waldcert
