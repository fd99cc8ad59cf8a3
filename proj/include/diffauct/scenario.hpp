#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "diffauct/mechanisms.hpp"
#include "diffauct/verifier.hpp"

namespace diffauct {

// On-disk scenario: the network, optional display names, and optionally a
// declared action profile (intended actions, checked and feasibility-
// transformed by consumers). Valuations are decimal strings so files stay
// exact under the declared precision.
struct ScenarioFile {
    int schema_version = 1;
    SocialNetwork net;
    std::vector<std::string> names;         // one per agent; may be empty
    std::optional<ActionProfile> declared;  // buyers absent from the list act null

    std::string label(AgentId id) const;
};

ScenarioFile scenario_from_json(const nlohmann::json& doc, int precision = Money::kScaleDigits);
nlohmann::json scenario_to_json(const ScenarioFile& scenario);

// Throws std::runtime_error on I/O failure, std::invalid_argument on schema
// violations.
ScenarioFile load_scenario(const std::string& path, int precision = Money::kScaleDigits);
void save_scenario(const ScenarioFile& scenario, const std::string& path);

nlohmann::json outcome_to_json(const ScenarioFile& scenario, MechanismKind kind, const Outcome& outcome);
std::string outcome_csv_header();
std::string outcome_csv_row(const std::string& scenario_name, MechanismKind kind, const Outcome& outcome,
                            const SocialNetwork& net, const std::string& seed);

nlohmann::json report_to_json(const VerificationReport& report);
nlohmann::json comparison_to_json(const RevenueComparison& cmp);

}  // namespace diffauct
