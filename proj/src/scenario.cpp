#include "diffauct/scenario.hpp"

#include <fstream>
#include <stdexcept>

namespace diffauct {

namespace {

using nlohmann::json;

Money money_field(const json& value, int precision, const std::string& where) {
    if (value.is_string()) return Money::parse(value.get<std::string>(), precision);
    if (value.is_number_integer()) return Money::whole(value.get<std::int64_t>());
    if (value.is_number_float()) return Money::quantize(value.get<double>(), precision);
    throw std::invalid_argument(where + ": expected a decimal string or number");
}

json money_json(Money m) { return m.str(); }

}  // namespace

std::string ScenarioFile::label(AgentId id) const {
    if (id >= 0 && static_cast<std::size_t>(id) < names.size() && !names[static_cast<std::size_t>(id)].empty())
        return names[static_cast<std::size_t>(id)];
    return std::to_string(id);
}

ScenarioFile scenario_from_json(const json& doc, int precision) {
    if (!doc.is_object()) throw std::invalid_argument("scenario: top level must be an object");
    int version = doc.value("schema_version", 1);
    if (version != 1) throw std::invalid_argument("scenario: unsupported schema_version");
    if (!doc.contains("seller") || !doc["seller"].is_number_integer())
        throw std::invalid_argument("scenario: missing integer 'seller'");
    if (!doc.contains("agents") || !doc["agents"].is_array())
        throw std::invalid_argument("scenario: missing 'agents' array");

    const auto seller = doc["seller"].get<AgentId>();
    const auto& agents = doc["agents"];
    const int n = static_cast<int>(agents.size());
    std::vector<std::vector<AgentId>> neighbors(static_cast<std::size_t>(n));
    std::vector<Money> valuations(static_cast<std::size_t>(n));
    std::vector<std::string> names(static_cast<std::size_t>(n));
    std::vector<bool> seen(static_cast<std::size_t>(n), false);

    for (const auto& agent : agents) {
        if (!agent.contains("id") || !agent["id"].is_number_integer())
            throw std::invalid_argument("scenario: agent entry without integer 'id'");
        const auto id = agent["id"].get<AgentId>();
        if (id < 0 || id >= n) throw std::invalid_argument("scenario: agent ids must be dense 0..n-1");
        if (seen[static_cast<std::size_t>(id)]) throw std::invalid_argument("scenario: duplicate agent id");
        seen[static_cast<std::size_t>(id)] = true;
        if (!agent.contains("neighbors") || !agent["neighbors"].is_array())
            throw std::invalid_argument("scenario: agent without 'neighbors' array");
        for (const auto& j : agent["neighbors"]) neighbors[static_cast<std::size_t>(id)].push_back(j.get<AgentId>());
        if (agent.contains("name")) names[static_cast<std::size_t>(id)] = agent["name"].get<std::string>();
        if (id == seller) {
            if (agent.contains("valuation"))
                valuations[static_cast<std::size_t>(id)] = money_field(agent["valuation"], precision, "seller reserve");
        } else {
            if (!agent.contains("valuation"))
                throw std::invalid_argument("scenario: buyer " + std::to_string(id) + " has no valuation");
            valuations[static_cast<std::size_t>(id)] = money_field(agent["valuation"], precision, "valuation");
        }
    }

    SocialNetwork net(seller, std::move(neighbors), std::move(valuations));
    ScenarioFile scenario{1, std::move(net), std::move(names), std::nullopt};

    if (doc.contains("declared_profile")) {
        if (!doc["declared_profile"].is_array())
            throw std::invalid_argument("scenario: 'declared_profile' must be an array");
        ActionProfile profile;
        profile.actions.resize(static_cast<std::size_t>(n));
        for (const auto& entry : doc["declared_profile"]) {
            const auto id = entry.at("id").get<AgentId>();
            if (!scenario.net.is_buyer(id))
                throw std::invalid_argument("scenario: declared action for a non-buyer id");
            if (!entry.contains("bid") || entry["bid"].is_null()) continue;
            std::vector<AgentId> relay;
            if (entry.contains("diffusion_set"))
                for (const auto& j : entry["diffusion_set"]) relay.push_back(j.get<AgentId>());
            profile.actions[static_cast<std::size_t>(id)] =
                Action(money_field(entry["bid"], precision, "bid"), std::move(relay));
        }
        validate_profile(scenario.net, profile);
        scenario.declared = std::move(profile);
    }
    return scenario;
}

nlohmann::json scenario_to_json(const ScenarioFile& scenario) {
    json agents = json::array();
    for (AgentId id = 0; id < scenario.net.agent_count(); ++id) {
        json agent{{"id", id}, {"neighbors", scenario.net.neighbors(id)}};
        if (static_cast<std::size_t>(id) < scenario.names.size() &&
            !scenario.names[static_cast<std::size_t>(id)].empty())
            agent["name"] = scenario.names[static_cast<std::size_t>(id)];
        if (id == scenario.net.seller()) {
            if (!scenario.net.seller_reserve().is_zero())
                agent["valuation"] = money_json(scenario.net.seller_reserve());
        } else {
            agent["valuation"] = money_json(scenario.net.valuation(id));
        }
        agents.push_back(std::move(agent));
    }
    json doc{{"schema_version", scenario.schema_version},
             {"seller", scenario.net.seller()},
             {"agents", std::move(agents)}};
    if (scenario.declared) {
        json profile = json::array();
        for (AgentId id = 0; id < scenario.net.agent_count(); ++id) {
            if (id == scenario.net.seller()) continue;
            const Action& a = scenario.declared->of(id);
            if (a.is_null()) {
                profile.push_back(json{{"id", id}, {"bid", nullptr}});
            } else {
                profile.push_back(
                    json{{"id", id}, {"bid", money_json(a.bid())}, {"diffusion_set", a.diffusion_set()}});
            }
        }
        doc["declared_profile"] = std::move(profile);
    }
    return doc;
}

ScenarioFile load_scenario(const std::string& path, int precision) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& err) {
        throw std::invalid_argument("scenario: " + std::string(err.what()));
    }
    return scenario_from_json(doc, precision);
}

void save_scenario(const ScenarioFile& scenario, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write scenario file: " + path);
    out << scenario_to_json(scenario).dump(2) << "\n";
}

nlohmann::json outcome_to_json(const ScenarioFile& scenario, MechanismKind kind, const Outcome& outcome) {
    const SocialNetwork& net = scenario.net;
    json buyers = json::array();
    for (AgentId id = 0; id < net.agent_count(); ++id) {
        if (id == net.seller()) continue;
        buyers.push_back(json{{"id", id},
                              {"name", scenario.label(id)},
                              {"payment", money_json(outcome.payments[static_cast<std::size_t>(id)])},
                              {"status", to_string(outcome.status[static_cast<std::size_t>(id)])}});
    }
    json doc{{"mechanism", to_string(kind)},
             {"winner", outcome.winner ? json(*outcome.winner) : json(nullptr)},
             {"revenue", money_json(outcome.revenue)},
             {"welfare", money_json(outcome.welfare)},
             {"buyers", std::move(buyers)}};
    if (outcome.winner) doc["winner_name"] = scenario.label(*outcome.winner);
    return doc;
}

std::string outcome_csv_header() { return "scenario,mechanism,winner,revenue,welfare,n,seed"; }

std::string outcome_csv_row(const std::string& scenario_name, MechanismKind kind, const Outcome& outcome,
                            const SocialNetwork& net, const std::string& seed) {
    std::string row = scenario_name + "," + std::string(to_string(kind)) + ",";
    row += outcome.winner ? std::to_string(*outcome.winner) : "";
    row += "," + outcome.revenue.str() + "," + outcome.welfare.str() + "," +
           std::to_string(net.agent_count()) + "," + seed;
    return row;
}

nlohmann::json report_to_json(const VerificationReport& report) {
    json examples = json::array();
    for (const auto& ce : report.counterexamples) {
        ScenarioFile scenario{1, ce.net, {}, ce.profile};
        json entry{{"scenario", scenario_to_json(scenario)},
                   {"buyer", ce.buyer},
                   {"baseline", money_json(ce.baseline_value)},
                   {"observed", money_json(ce.observed_value)},
                   {"note", ce.note}};
        if (ce.deviation) {
            if (ce.deviation->is_null()) {
                entry["deviation"] = nullptr;
            } else {
                entry["deviation"] = json{{"bid", money_json(ce.deviation->bid())},
                                          {"diffusion_set", ce.deviation->diffusion_set()}};
            }
        }
        examples.push_back(std::move(entry));
    }
    return json{{"property", report.property},
                {"mechanism", report.mechanism},
                {"instances_checked", report.instances_checked},
                {"deviations_checked", report.deviations_checked},
                {"violations", report.violations},
                {"improving", report.improving},
                {"neutral", report.neutral},
                {"decreasing", report.decreasing},
                {"partial", report.partial},
                {"passed", report.passed()},
                {"counterexamples", std::move(examples)}};
}

nlohmann::json comparison_to_json(const RevenueComparison& cmp) {
    return json{{"idm", json{{"revenue", money_json(cmp.idm_revenue)}, {"welfare", money_json(cmp.idm_welfare)}}},
                {"vcg", json{{"revenue", money_json(cmp.vcg_revenue)}, {"welfare", money_json(cmp.vcg_welfare)}}},
                {"spl", json{{"revenue", money_json(cmp.spl_revenue)}, {"welfare", money_json(cmp.spl_welfare)}}},
                {"idm_identity", money_json(cmp.idm_identity)},
                {"identity_holds", cmp.identity_holds},
                {"dominates_vcg", cmp.dominates_vcg},
                {"dominates_spl", cmp.dominates_spl},
                {"welfare_dominates_spl", cmp.welfare_dominates_spl},
                {"weakly_budget_balanced", cmp.weakly_budget_balanced}};
}

}  // namespace diffauct
