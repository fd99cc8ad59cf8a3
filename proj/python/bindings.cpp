#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "diffauct/scenario.hpp"

namespace py = pybind11;
using namespace diffauct;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Single-item auctions on social networks: local second price, network VCG and the "
              "information diffusion mechanism, plus the property verifier behind them.";

    py::class_<Money>(m, "Money")
        .def(py::init([](std::int64_t v) { return Money::whole(v); }))
        .def(py::init([](double v) { return Money::quantize(v); }))
        .def(py::init([](const std::string& s) { return Money::parse(s); }))
        .def_static("from_units", &Money::from_units)
        .def_static("parse", &Money::parse, py::arg("text"), py::arg("precision") = Money::kScaleDigits)
        .def_property_readonly("units", &Money::units)
        .def("__str__", &Money::str)
        .def("__repr__", [](Money v) { return "Money('" + v.str() + "')"; })
        .def("__float__", &Money::to_double)
        .def("__hash__", &Money::units)
        .def("__neg__", [](Money v) { return -v; })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self == py::self)
        .def(py::self != py::self)
        .def(py::self < py::self)
        .def(py::self <= py::self)
        .def(py::self > py::self)
        .def(py::self >= py::self);
    py::implicitly_convertible<py::int_, Money>();
    py::implicitly_convertible<py::float_, Money>();
    py::implicitly_convertible<py::str, Money>();

    py::class_<SocialNetwork>(m, "SocialNetwork")
        .def(py::init<AgentId, std::vector<std::vector<AgentId>>, std::vector<Money>>(),
             py::arg("seller"), py::arg("neighbors"), py::arg("valuations"))
        .def_property_readonly("agent_count", &SocialNetwork::agent_count)
        .def_property_readonly("buyer_count", &SocialNetwork::buyer_count)
        .def_property_readonly("seller", &SocialNetwork::seller)
        .def_property_readonly("seller_reserve", &SocialNetwork::seller_reserve)
        .def("neighbors", &SocialNetwork::neighbors, py::return_value_policy::copy)
        .def("valuation", &SocialNetwork::valuation)
        .def("is_buyer", &SocialNetwork::is_buyer)
        .def("has_edge", &SocialNetwork::has_edge)
        .def(py::self == py::self);

    py::class_<Action>(m, "Action")
        .def(py::init<>())
        .def(py::init<Money, std::vector<AgentId>>(), py::arg("bid"), py::arg("diffusion_set"))
        .def_static("null", [] { return Action(); })
        .def_static("bid", [](Money v, std::vector<AgentId> r) { return Action(v, std::move(r)); },
                    py::arg("bid"), py::arg("diffusion_set"))
        .def_property_readonly("is_null", &Action::is_null)
        .def_property_readonly("value", [](const Action& a) { return a.bid(); })
        .def_property_readonly("diffusion_set",
                               [](const Action& a) { return a.diffusion_set(); })
        .def(py::self == py::self)
        .def("__repr__", [](const Action& a) {
            if (a.is_null()) return std::string("Action.null()");
            std::string out = "Action(" + a.bid().str() + ", [";
            for (std::size_t k = 0; k < a.diffusion_set().size(); ++k)
                out += (k ? "," : "") + std::to_string(a.diffusion_set()[k]);
            return out + "])";
        });

    py::class_<ActionProfile>(m, "ActionProfile")
        .def(py::init<>())
        .def(py::init([](std::vector<Action> actions) {
                 ActionProfile p;
                 p.actions = std::move(actions);
                 return p;
             }),
             py::arg("actions"))
        .def_readwrite("actions", &ActionProfile::actions)
        .def("of", &ActionProfile::of, py::return_value_policy::copy)
        .def(py::self == py::self);

    m.def("truthful_profile", &truthful_profile);
    m.def("feasibility_transform", &feasibility_transform);
    m.def("is_feasible", &is_feasible);
    m.def("informed_buyers", &informed_buyers);
    m.def("quasilinear_utility", &quasilinear_utility);

    py::class_<DiffusionGraph>(m, "DiffusionGraph")
        .def_property_readonly("root", &DiffusionGraph::root)
        .def_property_readonly("agent_count", &DiffusionGraph::agent_count)
        .def_property_readonly("participants", &DiffusionGraph::participants)
        .def("participates", &DiffusionGraph::participates)
        .def("out_edges", &DiffusionGraph::out_edges, py::return_value_policy::copy);

    m.def("build_diffusion_graph", &build_diffusion_graph);
    m.def("critical_nodes_oracle", &critical_nodes_oracle);
    m.def("critical_nodes_all_oracle", &critical_nodes_all_oracle);

    py::class_<DiffusionAnalysis>(m, "DiffusionAnalysis")
        .def_property_readonly("participants", &DiffusionAnalysis::participants)
        .def_property_readonly("root", &DiffusionAnalysis::root)
        .def("participates", &DiffusionAnalysis::participates)
        .def("sequence", &DiffusionAnalysis::sequence)
        .def("critical_of", &DiffusionAnalysis::critical_of)
        .def("dependent_set", &DiffusionAnalysis::dependent_set)
        .def("in_dependent_set", &DiffusionAnalysis::in_dependent_set)
        .def("dependent_count", &DiffusionAnalysis::dependent_count);

    m.def("dominator_analysis", &dominator_analysis);
    m.def("dependent_set_without", &dependent_set_without);
    m.def("information_flow_edges", &information_flow_edges);
    m.def("to_dot", &to_dot, py::arg("graph"), py::arg("analysis"),
          py::arg("labels") = std::vector<std::string>{});
    m.def("dominator_tree_dot", &dominator_tree_dot, py::arg("analysis"),
          py::arg("labels") = std::vector<std::string>{});

    py::enum_<MechanismKind>(m, "MechanismKind")
        .value("SecondPriceLocal", MechanismKind::SecondPriceLocal)
        .value("NetworkVCG", MechanismKind::NetworkVCG)
        .value("IDM", MechanismKind::IDM);

    py::enum_<BuyerStatus>(m, "BuyerStatus")
        .value("Winner", BuyerStatus::Winner)
        .value("OnPath", BuyerStatus::OnPath)
        .value("Unlucky", BuyerStatus::Unlucky)
        .value("Normal", BuyerStatus::Normal)
        .value("NonParticipant", BuyerStatus::NonParticipant);

    py::class_<TieBreak>(m, "TieBreak")
        .def(py::init<>())
        .def_static("lowest_id", &TieBreak::lowest_id)
        .def_static("seeded", &TieBreak::seeded);

    py::class_<Outcome>(m, "Outcome")
        .def_readonly("winner", &Outcome::winner)
        .def_readonly("payments", &Outcome::payments)
        .def_readonly("revenue", &Outcome::revenue)
        .def_readonly("welfare", &Outcome::welfare)
        .def_readonly("status", &Outcome::status);

    m.def("run",
          [](MechanismKind kind, const SocialNetwork& net, const ActionProfile& p, const TieBreak& tie) {
              return run(kind, net, p, tie);
          },
          py::arg("kind"), py::arg("net"), py::arg("profile"), py::arg("tie") = TieBreak{});
    m.def("second_price_local",
          [](const SocialNetwork& net, const ActionProfile& p, const TieBreak& tie) {
              return second_price_local(net, p, tie);
          },
          py::arg("net"), py::arg("profile"), py::arg("tie") = TieBreak{});
    m.def("vcg_network",
          [](const SocialNetwork& net, const ActionProfile& p, const TieBreak& tie) {
              return vcg_network(net, p, tie);
          },
          py::arg("net"), py::arg("profile"), py::arg("tie") = TieBreak{});
    m.def("idm",
          [](const SocialNetwork& net, const ActionProfile& p, const TieBreak& tie) {
              return idm(net, p, tie);
          },
          py::arg("net"), py::arg("profile"), py::arg("tie") = TieBreak{});
    m.def("classify_buyers", &classify_buyers, py::arg("net"), py::arg("profile"), py::arg("idm_outcome"),
          py::arg("tie") = TieBreak{});
    m.def("utility", &utility);
    m.def("best_report_outside", &best_report_outside);
    m.def("mechanism_name", [](MechanismKind k) { return std::string(to_string(k)); });
    m.def("status_name", [](BuyerStatus s) { return std::string(to_string(s)); });

    py::class_<Rng>(m, "Rng").def(py::init<std::uint64_t>());
    m.def("line_graph", py::overload_cast<int>(&line_graph));
    m.def("line_graph", py::overload_cast<int, std::vector<Money>>(&line_graph));
    m.def("erdos_renyi_network", &erdos_renyi_network);
    m.def("erdos_renyi_connected_network", &erdos_renyi_connected_network);
    m.def("random_tree_network", &random_tree_network);
    m.def("integer_grid", &integer_grid);

    py::class_<DeviationSpace> dev(m, "DeviationSpace");
    py::enum_<DeviationSpace::DiffusionMode>(dev, "DiffusionMode")
        .value("AllSubsets", DeviationSpace::DiffusionMode::AllSubsets)
        .value("SampledSubsets", DeviationSpace::DiffusionMode::SampledSubsets);
    dev.def(py::init<>())
        .def_static("exhaustive", &DeviationSpace::exhaustive)
        .def_readwrite("valuation_grid", &DeviationSpace::valuation_grid)
        .def_readwrite("diffusion_mode", &DeviationSpace::diffusion_mode)
        .def_readwrite("subset_samples", &DeviationSpace::subset_samples)
        .def_readwrite("include_null", &DeviationSpace::include_null)
        .def_readwrite("add_midpoints", &DeviationSpace::add_midpoints)
        .def_readwrite("sampled_other_profiles", &DeviationSpace::sampled_other_profiles)
        .def_readwrite("seed", &DeviationSpace::seed);

    py::class_<Counterexample>(m, "Counterexample")
        .def_readonly("net", &Counterexample::net)
        .def_readonly("profile", &Counterexample::profile)
        .def_readonly("buyer", &Counterexample::buyer)
        .def_readonly("deviation", &Counterexample::deviation)
        .def_readonly("baseline_value", &Counterexample::baseline_value)
        .def_readonly("observed_value", &Counterexample::observed_value)
        .def_readonly("note", &Counterexample::note);

    py::class_<VerificationReport>(m, "VerificationReport")
        .def_readonly("property", &VerificationReport::property)
        .def_readonly("mechanism", &VerificationReport::mechanism)
        .def_readonly("instances_checked", &VerificationReport::instances_checked)
        .def_readonly("deviations_checked", &VerificationReport::deviations_checked)
        .def_readonly("violations", &VerificationReport::violations)
        .def_readonly("improving", &VerificationReport::improving)
        .def_readonly("neutral", &VerificationReport::neutral)
        .def_readonly("decreasing", &VerificationReport::decreasing)
        .def_readonly("partial", &VerificationReport::partial)
        .def_readonly("counterexamples", &VerificationReport::counterexamples)
        .def_property_readonly("passed", &VerificationReport::passed)
        .def("json", [](const VerificationReport& r) { return report_to_json(r).dump(2); });

    m.def("check_ir", &check_ir, py::call_guard<py::gil_scoped_release>());
    m.def("check_ic", &check_ic, py::call_guard<py::gil_scoped_release>());

    py::class_<ProfileSampler>(m, "ProfileSampler")
        .def(py::init([](std::vector<Money> grid, double null_probability) {
                 return ProfileSampler{std::move(grid), null_probability};
             }),
             py::arg("bid_grid"), py::arg("null_probability") = 0.15)
        .def("sample", &ProfileSampler::sample);

    m.def("check_wbb", &check_wbb, py::call_guard<py::gil_scoped_release>());
    m.def("check_wbb_random", &check_wbb_random, py::call_guard<py::gil_scoped_release>());

    py::class_<RevenueComparison>(m, "RevenueComparison")
        .def_readonly("idm_revenue", &RevenueComparison::idm_revenue)
        .def_readonly("vcg_revenue", &RevenueComparison::vcg_revenue)
        .def_readonly("spl_revenue", &RevenueComparison::spl_revenue)
        .def_readonly("idm_welfare", &RevenueComparison::idm_welfare)
        .def_readonly("vcg_welfare", &RevenueComparison::vcg_welfare)
        .def_readonly("spl_welfare", &RevenueComparison::spl_welfare)
        .def_readonly("idm_identity", &RevenueComparison::idm_identity)
        .def_readonly("identity_holds", &RevenueComparison::identity_holds)
        .def_readonly("dominates_vcg", &RevenueComparison::dominates_vcg)
        .def_readonly("dominates_spl", &RevenueComparison::dominates_spl)
        .def_readonly("welfare_dominates_spl", &RevenueComparison::welfare_dominates_spl)
        .def_readonly("weakly_budget_balanced", &RevenueComparison::weakly_budget_balanced)
        .def_property_readonly("all_hold", &RevenueComparison::all_hold);

    m.def("check_revenue_dominance", &check_revenue_dominance);
    m.def("check_dominance_random", &check_dominance_random, py::call_guard<py::gil_scoped_release>());
    m.def("check_oracle_equivalence", &check_oracle_equivalence, py::call_guard<py::gil_scoped_release>());

    m.def("connected_adjacencies", &connected_adjacencies, py::arg("n"), py::arg("seller_min_degree") = 1);
    m.def("for_each_network", &for_each_network);
    m.def("count_networks", &count_networks, py::arg("n_max"), py::arg("grid_size"),
          py::arg("seller_min_degree") = 1);

    py::class_<SweepOptions>(m, "SweepOptions")
        .def(py::init<>())
        .def_readwrite("n_max", &SweepOptions::n_max)
        .def_readwrite("grid", &SweepOptions::grid)
        .def_readwrite("seller_min_degree", &SweepOptions::seller_min_degree)
        .def_readwrite("add_midpoints", &SweepOptions::add_midpoints)
        .def_readwrite("threads", &SweepOptions::threads)
        .def_readwrite("budget_seconds", &SweepOptions::budget_seconds)
        .def_readwrite("differential_stride", &SweepOptions::differential_stride);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("networks", &SweepResult::networks)
        .def_readonly("instances", &SweepResult::instances)
        .def_readonly("deviations", &SweepResult::deviations)
        .def_readonly("partial", &SweepResult::partial)
        .def_readonly("ic_idm", &SweepResult::ic_idm)
        .def_readonly("ic_vcg", &SweepResult::ic_vcg)
        .def_readonly("ir_idm", &SweepResult::ir_idm)
        .def_readonly("ir_vcg", &SweepResult::ir_vcg)
        .def_readonly("unlucky_neutral", &SweepResult::unlucky_neutral)
        .def_readonly("dset_monotone", &SweepResult::dset_monotone)
        .def_property_readonly("all_passed", &SweepResult::all_passed);

    m.def("exhaustive_sweep", &exhaustive_sweep, py::call_guard<py::gil_scoped_release>());

    py::class_<ScenarioFile>(m, "Scenario")
        .def(py::init([](SocialNetwork net, std::vector<std::string> names,
                         std::optional<ActionProfile> declared) {
                 return ScenarioFile{1, std::move(net), std::move(names), std::move(declared)};
             }),
             py::arg("net"), py::arg("names") = std::vector<std::string>{},
             py::arg("declared") = std::nullopt)
        .def_readonly("net", &ScenarioFile::net)
        .def_readonly("names", &ScenarioFile::names)
        .def_readonly("declared", &ScenarioFile::declared)
        .def("label", &ScenarioFile::label)
        .def("json", [](const ScenarioFile& s) { return scenario_to_json(s).dump(2); });

    m.def("load_scenario", &load_scenario, py::arg("path"), py::arg("precision") = Money::kScaleDigits);
    m.def("save_scenario", &save_scenario);
    m.def("scenario_from_json", [](const std::string& text, int precision) {
              return scenario_from_json(nlohmann::json::parse(text), precision);
          },
          py::arg("text"), py::arg("precision") = Money::kScaleDigits);
    m.def("outcome_json", [](const ScenarioFile& s, MechanismKind kind, const Outcome& o) {
        return outcome_to_json(s, kind, o).dump(2);
    });
}
