#pragma once

#include <string>

#include <json.hpp>

#include "autota/model.hpp"
#include "autota/reward.hpp"

namespace autota {

// ordered_json keeps field order stable so serialized artifacts are
// byte-reproducible.
using Json = nlohmann::ordered_json;

Json to_json(const QuoteId& q);        // string form "[P1_S001]"
Json to_json(const Utterance& u);
Json to_json(const Transcript& t);
Json to_json(const Code& c);
Json to_json(const Theme& t);
Json to_json(const ThemeSet& ts);
Json to_json(const ScoreVector& s);
Json to_json(const ThemeDraft& d);
Json to_json(const EditProposal& e);
Json to_json(const AgentExchange& ex);
Json to_json(const IterationRecord& r);
Json to_json(const AuditTrail& a);
Json to_json(const reward::RewardModel& m);

QuoteId quote_id_from_json(const Json& j);
Theme theme_from_json(const Json& j);
ThemeSet theme_set_from_json(const Json& j);
EditProposal edit_proposal_from_json(const Json& j);
AuditTrail audit_trail_from_json(const Json& j);
reward::RewardModel reward_model_from_json(const Json& j);
reward::RewardRecord reward_record_from_json(const Json& j);

/// {title, description?} objects; the on-disk theme-list format shared by
/// `compare` inputs and fixtures.
std::vector<std::pair<std::string, std::string>> theme_list_from_json(const Json& j);

/// Theme text used by the alignment metrics: title, plus the description
/// when present.
std::string theme_text(const std::string& title, const std::string& description);

std::string read_text_file(const std::string& path);      // throws IoError
void write_text_file(const std::string& path, const std::string& content);
Json read_json_file(const std::string& path);              // throws IoError/ParseError
void write_json_file(const std::string& path, const Json& j); // 2-space indent + newline

} // namespace autota
