#include <doctest.h>

#include <stdexcept>

#include "diffauct/scenario.hpp"
#include "helpers.hpp"

using namespace diffauct;
using namespace diffauct::testing;
using nlohmann::json;

namespace {

const char* kDiamond = R"({
  "schema_version": 1,
  "seller": 0,
  "agents": [
    {"id": 0, "name": "s", "neighbors": [1, 2]},
    {"id": 1, "name": "A", "neighbors": [0, 3], "valuation": "1"},
    {"id": 2, "name": "B", "neighbors": [0, 3], "valuation": "2.5"},
    {"id": 3, "name": "C", "neighbors": [1, 2], "valuation": "5"}
  ],
  "declared_profile": [
    {"id": 1, "bid": "1", "diffusion_set": []},
    {"id": 2, "bid": "2.5", "diffusion_set": [3]},
    {"id": 3, "bid": null}
  ]
})";

}  // namespace

TEST_CASE("scenario json parses into the expected network and profile") {
    ScenarioFile scenario = scenario_from_json(json::parse(kDiamond));
    CHECK(scenario.net.agent_count() == 4);
    CHECK(scenario.net.seller() == 0);
    CHECK(scenario.net.valuation(2) == Money::parse("2.5"));
    CHECK(scenario.label(3) == "C");
    REQUIRE(scenario.declared.has_value());
    CHECK(scenario.declared->of(1).diffusion_set().empty());
    CHECK(scenario.declared->of(3).is_null());
}

TEST_CASE("serialize then parse is the identity on the canonical form") {
    ScenarioFile scenario = scenario_from_json(json::parse(kDiamond));
    json canonical = scenario_to_json(scenario);
    ScenarioFile reparsed = scenario_from_json(canonical);
    CHECK(reparsed.net == scenario.net);
    CHECK(reparsed.names == scenario.names);
    CHECK(reparsed.declared == scenario.declared);
    CHECK(scenario_to_json(reparsed).dump() == canonical.dump());
}

TEST_CASE("checked-in scenarios load and match the in-tree constructions") {
    ScenarioFile line5 = load_scenario(std::string(DIFFAUCT_DATA_DIR) + "/line5.json");
    CHECK(line5.net == line_graph(5));

    ScenarioFile fig2 = load_scenario(std::string(DIFFAUCT_DATA_DIR) + "/fig2.json");
    CHECK(fig2.net == fig2_network());
    CHECK(fig2.label(kI) == "I");
    CHECK(fig2.label(kL) == "L");
    CHECK(!fig2.declared.has_value());
}

TEST_CASE("schema violations are rejected with invalid_argument") {
    auto parse = [](const char* text) { return scenario_from_json(json::parse(text)); };
    // missing valuation on a buyer
    CHECK_THROWS_AS(parse(R"({"seller":0,"agents":[
        {"id":0,"neighbors":[1]},{"id":1,"neighbors":[0]}]})"),
                    std::invalid_argument);
    // non-dense ids
    CHECK_THROWS_AS(parse(R"({"seller":0,"agents":[
        {"id":0,"neighbors":[2]},{"id":2,"neighbors":[0],"valuation":"1"}]})"),
                    std::invalid_argument);
    // duplicate ids
    CHECK_THROWS_AS(parse(R"({"seller":0,"agents":[
        {"id":0,"neighbors":[1]},{"id":1,"neighbors":[0],"valuation":"1"},
        {"id":1,"neighbors":[0],"valuation":"2"}]})"),
                    std::invalid_argument);
    // declared action relaying to a non-neighbor
    CHECK_THROWS_AS(parse(R"({"seller":0,"agents":[
        {"id":0,"neighbors":[1]},{"id":1,"neighbors":[0,2],"valuation":"1"},
        {"id":2,"neighbors":[1],"valuation":"1"}],
        "declared_profile":[{"id":2,"bid":"1","diffusion_set":[0]}]})"),
                    std::invalid_argument);
    // unsupported version
    CHECK_THROWS_AS(parse(R"({"schema_version":2,"seller":0,"agents":[]})"), std::invalid_argument);
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), std::runtime_error);
}

TEST_CASE("valuation precision is enforced at load time") {
    const char* text = R"({"seller":0,"agents":[
        {"id":0,"neighbors":[1]},{"id":1,"neighbors":[0],"valuation":"1.25"}]})";
    CHECK_NOTHROW(scenario_from_json(json::parse(text), 2));
    CHECK_THROWS_AS(scenario_from_json(json::parse(text), 1), std::invalid_argument);
    // numbers are quantized rather than rejected
    const char* numeric = R"({"seller":0,"agents":[
        {"id":0,"neighbors":[1]},{"id":1,"neighbors":[0],"valuation":1.25}]})";
    CHECK(scenario_from_json(json::parse(numeric), 1).net.valuation(1) == Money::parse("1.3"));
}

TEST_CASE("outcome serialization carries names, payments and statuses") {
    ScenarioFile scenario = load_scenario(std::string(DIFFAUCT_DATA_DIR) + "/fig2.json");
    Outcome outcome = idm(scenario.net, truthful_profile(scenario.net));
    json doc = outcome_to_json(scenario, MechanismKind::IDM, outcome);
    CHECK(doc["mechanism"] == "idm");
    CHECK(doc["winner"] == kI);
    CHECK(doc["winner_name"] == "I");
    CHECK(doc["revenue"] == "10");
    CHECK(doc["welfare"] == "12");
    bool saw_reward = false;
    for (const auto& buyer : doc["buyers"])
        if (buyer["name"] == "C") {
            CHECK(buyer["payment"] == "-1");
            CHECK(buyer["status"] == "on-path");
            saw_reward = true;
        }
    CHECK(saw_reward);

    std::string row = outcome_csv_row("fig2", MechanismKind::IDM, outcome, scenario.net, "");
    CHECK(row == "fig2,idm,9,10,12,13,");
    CHECK(outcome_csv_header() == "scenario,mechanism,winner,revenue,welfare,n,seed");
}

TEST_CASE("verification reports serialize with counterexamples") {
    SocialNetwork net = line_graph(2, whole_values({1, 5}));
    VerificationReport report;
    report.property = "ic";
    report.mechanism = "demo";
    report.instances_checked = 1;
    report.deviations_checked = 3;
    Counterexample ce{net, truthful_profile(net), 1, Action(Money::whole(2), {2}), Money::whole(0),
                      Money::whole(1), "demo finding"};
    report.record(std::move(ce));
    json doc = report_to_json(report);
    CHECK(doc["violations"] == 1);
    CHECK(doc["passed"] == false);
    REQUIRE(doc["counterexamples"].size() == 1);
    CHECK(doc["counterexamples"][0]["buyer"] == 1);
    CHECK(doc["counterexamples"][0]["deviation"]["bid"] == "2");
    CHECK(doc["counterexamples"][0]["scenario"]["agents"].size() == 3);
}
