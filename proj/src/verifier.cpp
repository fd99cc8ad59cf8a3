#include "diffauct/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace diffauct {

namespace {

// A buyer's relay choice only matters over her non-seller neighbors: telling
// the seller carries no information, so those variants collapse onto the
// same outcome and are enumerated once.
std::vector<AgentId> relay_candidates(const SocialNetwork& net, AgentId buyer) {
    std::vector<AgentId> out;
    for (AgentId j : net.neighbors(buyer))
        if (j != net.seller()) out.push_back(j);
    return out;
}

std::vector<std::vector<AgentId>> diffusion_choices(const SocialNetwork& net, AgentId buyer,
                                                    const DeviationSpace& space, Rng& rng) {
    std::vector<AgentId> candidates = relay_candidates(net, buyer);
    std::vector<std::vector<AgentId>> choices;
    if (space.diffusion_mode == DeviationSpace::DiffusionMode::AllSubsets) {
        const std::size_t total = std::size_t{1} << candidates.size();
        for (std::size_t mask = 0; mask < total; ++mask) {
            std::vector<AgentId> subset;
            for (std::size_t b = 0; b < candidates.size(); ++b)
                if (mask & (std::size_t{1} << b)) subset.push_back(candidates[b]);
            choices.push_back(std::move(subset));
        }
    } else {
        choices.push_back({});          // relay to nobody
        choices.push_back(candidates);  // relay to everyone
        for (int s = 0; s < space.subset_samples; ++s) {
            std::vector<AgentId> subset;
            for (AgentId j : candidates)
                if (rng.next() & 1) subset.push_back(j);
            choices.push_back(std::move(subset));
        }
    }
    return choices;
}

std::vector<Money> deviation_bids(const DeviationSpace& space, const SocialNetwork& net, AgentId buyer,
                                  const ActionProfile& rivals) {
    std::vector<Money> bids = space.valuation_grid;
    bids.push_back(net.valuation(buyer));
    for (AgentId j = 0; j < net.agent_count(); ++j) {
        if (j == net.seller() || j == buyer) continue;
        const Action& a = rivals.of(j);
        if (!a.is_null()) bids.push_back(a.bid());
    }
    std::sort(bids.begin(), bids.end());
    bids.erase(std::unique(bids.begin(), bids.end()), bids.end());
    if (space.add_midpoints && !bids.empty()) {
        std::vector<Money> extended = bids;
        for (std::size_t k = 0; k + 1 < bids.size(); ++k) {
            Money mid = midpoint(bids[k], bids[k + 1]);
            if (mid != bids[k] && mid != bids[k + 1]) extended.push_back(mid);
        }
        extended.push_back(bids.back() + Money::whole(1));
        std::sort(extended.begin(), extended.end());
        extended.erase(std::unique(extended.begin(), extended.end()), extended.end());
        bids = std::move(extended);
    }
    return bids;
}

MechanismFn mechanism_fn(MechanismKind kind) {
    return [kind](const SocialNetwork& net, const ActionProfile& profile) {
        return run(kind, net, profile);
    };
}

Money evaluate_buyer(const SocialNetwork& net, const MechanismFn& mechanism, ActionProfile intended,
                     AgentId buyer, const Action& action) {
    intended.actions[static_cast<std::size_t>(buyer)] = action;
    ActionProfile feasible = feasibility_transform(net, intended);
    if (!is_feasible(net, feasible))
        throw std::logic_error("feasibility transform produced an infeasible profile");
    Outcome out = mechanism(net, feasible);
    return utility(net, buyer, out);
}

ActionProfile truthful_intended(const SocialNetwork& net) {
    ActionProfile profile;
    profile.actions.resize(static_cast<std::size_t>(net.agent_count()));
    for (AgentId i = 0; i < net.agent_count(); ++i)
        if (i != net.seller()) profile.actions[static_cast<std::size_t>(i)] = Action(net.valuation(i), net.neighbors(i));
    return profile;
}

// Rival contexts for the Def.-style quantifier: the truthful slice first,
// then sampled intended profiles.
std::vector<ActionProfile> rival_contexts(const SocialNetwork& net, const DeviationSpace& space,
                                          Rng& rng) {
    std::vector<ActionProfile> contexts{truthful_intended(net)};
    ProfileSampler sampler;
    sampler.bid_grid = space.valuation_grid.empty() ? std::vector<Money>{Money()} : space.valuation_grid;
    for (int k = 0; k < space.sampled_other_profiles; ++k)
        contexts.push_back(sampler.sample_intended(net, rng));
    return contexts;
}

VerificationReport deviation_check(const SocialNetwork& net, const std::string& mechanism_name,
                                   const MechanismFn& mechanism, const DeviationSpace& space,
                                   bool ic_mode) {
    VerificationReport report;
    report.property = ic_mode ? "ic" : "ir";
    report.mechanism = mechanism_name;
    Rng rng(space.seed);

    for (const ActionProfile& context : rival_contexts(net, space, rng)) {
        ++report.instances_checked;
        for (AgentId buyer = 0; buyer < net.agent_count(); ++buyer) {
            if (buyer == net.seller()) continue;
            Action truthful(net.valuation(buyer), net.neighbors(buyer));
            Money u_truth = evaluate_buyer(net, mechanism, context, buyer, truthful);

            std::vector<Money> bids =
                ic_mode ? deviation_bids(space, net, buyer, context) : std::vector<Money>{net.valuation(buyer)};
            for (const auto& subset : diffusion_choices(net, buyer, space, rng)) {
                for (Money bid : bids) {
                    Action deviation(bid, subset);
                    Money u_dev = evaluate_buyer(net, mechanism, context, buyer, deviation);
                    ++report.deviations_checked;
                    if (u_dev > u_truth)
                        ++report.improving;
                    else if (u_dev == u_truth)
                        ++report.neutral;
                    else
                        ++report.decreasing;
                    bool violated = ic_mode ? u_dev > u_truth : u_dev.is_negative();
                    if (violated) {
                        Counterexample ce{net, context, buyer, deviation,
                                          ic_mode ? u_truth : Money(), u_dev,
                                          ic_mode ? "profitable deviation" : "negative truthful utility"};
                        if (ic_mode && report.counterexamples.size() < VerificationReport::kCounterexampleCap)
                            ce = minimize_counterexample(ce, mechanism, space.valuation_grid);
                        report.record(std::move(ce));
                    }
                }
            }
            if (ic_mode && space.include_null) {
                ++report.deviations_checked;
                Money u_null{};  // a null action trades nothing
                if (u_null > u_truth) {
                    ++report.improving;
                    Counterexample ce{net, context, buyer, Action(), u_truth, u_null,
                                      "staying out beats the truthful action"};
                    report.record(std::move(ce));
                } else if (u_null == u_truth) {
                    ++report.neutral;
                } else {
                    ++report.decreasing;
                }
            }
        }
    }
    return report;
}

}  // namespace

void VerificationReport::record(Counterexample ce) {
    ++violations;
    if (counterexamples.size() < kCounterexampleCap) counterexamples.push_back(std::move(ce));
}

void VerificationReport::merge(VerificationReport&& other) {
    instances_checked += other.instances_checked;
    deviations_checked += other.deviations_checked;
    violations += other.violations;
    improving += other.improving;
    neutral += other.neutral;
    decreasing += other.decreasing;
    partial = partial || other.partial;
    for (auto& ce : other.counterexamples) {
        if (counterexamples.size() >= kCounterexampleCap) break;
        counterexamples.push_back(std::move(ce));
    }
}

VerificationReport check_ir(const SocialNetwork& net, MechanismKind kind, const DeviationSpace& space) {
    return check_ir_fn(net, std::string(to_string(kind)), mechanism_fn(kind), space);
}

VerificationReport check_ic(const SocialNetwork& net, MechanismKind kind, const DeviationSpace& space) {
    return check_ic_fn(net, std::string(to_string(kind)), mechanism_fn(kind), space);
}

VerificationReport check_ic_fn(const SocialNetwork& net, const std::string& mechanism_name,
                               const MechanismFn& mechanism, const DeviationSpace& space) {
    return deviation_check(net, mechanism_name, mechanism, space, true);
}

VerificationReport check_ir_fn(const SocialNetwork& net, const std::string& mechanism_name,
                               const MechanismFn& mechanism, const DeviationSpace& space) {
    return deviation_check(net, mechanism_name, mechanism, space, false);
}

ActionProfile ProfileSampler::sample(const SocialNetwork& net, Rng& rng) const {
    return feasibility_transform(net, sample_intended(net, rng));
}

ActionProfile ProfileSampler::sample_intended(const SocialNetwork& net, Rng& rng) const {
    if (bid_grid.empty()) throw std::invalid_argument("sampler needs a bid grid");
    ActionProfile profile;
    profile.actions.resize(static_cast<std::size_t>(net.agent_count()));
    for (AgentId i = 0; i < net.agent_count(); ++i) {
        if (i == net.seller()) continue;
        if (rng.real01() < null_probability) continue;
        std::vector<AgentId> subset;
        for (AgentId j : net.neighbors(i))
            if (rng.next() & 1) subset.push_back(j);
        profile.actions[static_cast<std::size_t>(i)] = Action(rng.pick(bid_grid), std::move(subset));
    }
    return profile;
}

VerificationReport check_wbb(const SocialNetwork& net, MechanismKind kind, const ProfileSampler& sampler,
                             int trials, std::uint64_t seed) {
    VerificationReport report;
    report.property = "wbb";
    report.mechanism = std::string(to_string(kind));
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        ActionProfile profile = sampler.sample(net, rng);
        Outcome out = run(kind, net, profile);
        ++report.instances_checked;
        ++report.deviations_checked;
        if (out.revenue.is_negative()) {
            Counterexample ce{net, profile, -1, std::nullopt, Money(), out.revenue, "negative revenue"};
            report.record(std::move(ce));
        }
    }
    return report;
}

VerificationReport check_wbb_random(MechanismKind kind, int trials, int n_max,
                                    const std::vector<Money>& grid, std::uint64_t seed) {
    if (n_max < 2) throw std::invalid_argument("n_max must be at least 2");
    VerificationReport report;
    report.property = "wbb";
    report.mechanism = std::string(to_string(kind));
    Rng rng(seed);
    ProfileSampler sampler{grid};
    for (int t = 0; t < trials; ++t) {
        int n = 2 + rng.below(n_max - 1);
        SocialNetwork net = t % 2 == 0 ? random_tree_network(n, grid, rng)
                                       : erdos_renyi_connected_network(
                                             n, std::min(1.0, (std::log(n) + 1.0) / n), grid, rng);
        report.merge(check_wbb(net, kind, sampler, 1, rng.next()));
    }
    return report;
}

RevenueComparison check_revenue_dominance(const SocialNetwork& net, const ActionProfile& profile) {
    if (!is_feasible(net, profile))
        throw std::invalid_argument("revenue comparison requires a feasible profile");
    DiffusionAnalysis analysis = dominator_analysis(build_diffusion_graph(net, profile));
    Outcome o_idm = idm(net, profile, analysis);
    Outcome o_vcg = vcg_network(net, profile, analysis);
    Outcome o_spl = second_price_local(net, profile);

    RevenueComparison cmp;
    cmp.idm_revenue = o_idm.revenue;
    cmp.vcg_revenue = o_vcg.revenue;
    cmp.spl_revenue = o_spl.revenue;
    cmp.idm_welfare = o_idm.welfare;
    cmp.vcg_welfare = o_vcg.welfare;
    cmp.spl_welfare = o_spl.welfare;
    if (o_idm.winner) {
        std::vector<AgentId> chain = analysis.sequence(*o_idm.winner);
        cmp.idm_identity = best_report_outside(net, profile, analysis, chain.front());
    }
    cmp.identity_holds = cmp.idm_revenue == cmp.idm_identity;
    cmp.dominates_vcg = cmp.idm_revenue >= cmp.vcg_revenue;
    cmp.dominates_spl = cmp.idm_revenue >= cmp.spl_revenue;
    cmp.welfare_dominates_spl = cmp.idm_welfare >= cmp.spl_welfare;
    cmp.weakly_budget_balanced = !cmp.idm_revenue.is_negative();
    return cmp;
}

VerificationReport check_dominance_random(int trials, int n_max, const std::vector<Money>& grid,
                                          std::uint64_t seed) {
    if (n_max < 2) throw std::invalid_argument("n_max must be at least 2");
    VerificationReport report;
    report.property = "dominance";
    report.mechanism = "idm";
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        int n = 2 + rng.below(n_max - 1);
        SocialNetwork net = t % 2 == 0 ? random_tree_network(n, grid, rng)
                                       : erdos_renyi_connected_network(
                                             n, std::min(1.0, (std::log(n) + 1.0) / n), grid, rng);
        ActionProfile profile = truthful_profile(net);
        RevenueComparison cmp = check_revenue_dominance(net, profile);
        ++report.instances_checked;
        report.deviations_checked += 4;
        if (!cmp.all_hold()) {
            std::string note;
            if (!cmp.dominates_vcg) note += "idm revenue below vcg; ";
            if (!cmp.dominates_spl) note += "idm revenue below local second price; ";
            if (!cmp.welfare_dominates_spl) note += "idm welfare below local second price; ";
            if (!cmp.weakly_budget_balanced) note += "negative idm revenue; ";
            if (!cmp.identity_holds) note += "revenue does not telescope; ";
            Counterexample ce{net, profile, -1, std::nullopt, cmp.vcg_revenue, cmp.idm_revenue,
                              std::move(note)};
            report.record(std::move(ce));
        }
    }
    return report;
}

VerificationReport check_oracle_equivalence(int trials, int n_max, std::uint64_t seed) {
    if (n_max < 2) throw std::invalid_argument("n_max must be at least 2");
    VerificationReport report;
    report.property = "oracle-equivalence";
    report.mechanism = "dominators";
    Rng rng(seed);
    std::vector<Money> grid = integer_grid(9);
    ProfileSampler sampler{grid, 0.2};
    for (int t = 0; t < trials; ++t) {
        int n = 2 + rng.below(n_max - 1);
        SocialNetwork net = t % 2 == 0 ? random_tree_network(n, grid, rng)
                                       : erdos_renyi_connected_network(
                                             n, std::min(1.0, (std::log(n) + 1.0) / n), grid, rng);
        ActionProfile profile = sampler.sample(net, rng);
        DiffusionGraph g = build_diffusion_graph(net, profile);
        DiffusionAnalysis analysis = dominator_analysis(g);
        auto oracle = critical_nodes_all_oracle(g);
        ++report.instances_checked;
        for (AgentId j : g.participants()) {
            ++report.deviations_checked;
            std::vector<AgentId> fast = analysis.critical_of(j);
            std::sort(fast.begin(), fast.end());
            if (fast != oracle[static_cast<std::size_t>(j)]) {
                Counterexample ce{net, profile, j, std::nullopt, Money(), Money(),
                                  "critical nodes disagree with the removal oracle"};
                report.record(std::move(ce));
                continue;
            }
            // Order along the sequence must match strict dependent-set nesting.
            std::vector<AgentId> seq = analysis.sequence(j);
            for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
                if (!analysis.in_dependent_set(seq[k], seq[k + 1]) ||
                    analysis.dependent_count(seq[k]) <= analysis.dependent_count(seq[k + 1])) {
                    Counterexample ce{net, profile, j, std::nullopt, Money(), Money(),
                                      "critical sequence is not strictly nested"};
                    report.record(std::move(ce));
                    break;
                }
            }
        }
    }
    return report;
}

std::vector<std::vector<std::vector<AgentId>>> connected_adjacencies(int n, int seller_min_degree) {
    if (n < 2 || n > 8) throw std::invalid_argument("exhaustive graph enumeration supports 2..8 agents");
    std::vector<std::pair<AgentId, AgentId>> slots;
    for (AgentId a = 0; a < n; ++a)
        for (AgentId b = a + 1; b < n; ++b) slots.emplace_back(a, b);

    std::vector<std::vector<std::vector<AgentId>>> graphs;
    const std::uint32_t total = std::uint32_t{1} << slots.size();
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        std::vector<std::vector<AgentId>> adj(static_cast<std::size_t>(n));
        for (std::size_t k = 0; k < slots.size(); ++k) {
            if (mask & (std::uint32_t{1} << k)) {
                adj[static_cast<std::size_t>(slots[k].first)].push_back(slots[k].second);
                adj[static_cast<std::size_t>(slots[k].second)].push_back(slots[k].first);
            }
        }
        if (static_cast<int>(adj[0].size()) < seller_min_degree) continue;
        bool ok = true;
        for (const auto& nbrs : adj)
            if (nbrs.empty()) ok = false;
        if (!ok || !is_connected_from(adj, 0)) continue;
        graphs.push_back(std::move(adj));
    }
    return graphs;
}

void for_each_network(int n_max, const std::vector<Money>& grid, int seller_min_degree,
                      const std::function<void(const SocialNetwork&)>& fn) {
    if (grid.empty()) throw std::invalid_argument("empty valuation grid");
    for (int n = 2; n <= n_max; ++n) {
        for (const auto& adj : connected_adjacencies(n, seller_min_degree)) {
            std::vector<std::size_t> pick(static_cast<std::size_t>(n - 1), 0);
            while (true) {
                std::vector<Money> values(static_cast<std::size_t>(n));
                for (int b = 1; b < n; ++b) values[static_cast<std::size_t>(b)] = grid[pick[static_cast<std::size_t>(b - 1)]];
                fn(SocialNetwork(0, adj, values));
                std::size_t k = 0;
                while (k < pick.size()) {
                    if (++pick[k] < grid.size()) break;
                    pick[k++] = 0;
                }
                if (k == pick.size()) break;
            }
        }
    }
}

std::uint64_t count_networks(int n_max, int grid_size, int seller_min_degree) {
    if (grid_size < 1) throw std::invalid_argument("grid must be non-empty");
    std::uint64_t total = 0;
    for (int n = 2; n <= n_max; ++n) {
        std::uint64_t assignments = 1;
        for (int b = 1; b < n; ++b) assignments *= static_cast<std::uint64_t>(grid_size);
        total += connected_adjacencies(n, seller_min_degree).size() * assignments;
    }
    return total;
}

namespace {

struct Shrunk {
    SocialNetwork net;
    ActionProfile profile;
    AgentId buyer;
    Action deviation;
};

Action restrict_action(const Action& a, const std::vector<AgentId>& allowed,
                       const std::vector<AgentId>& relabel) {
    if (a.is_null()) return a;
    std::vector<AgentId> subset;
    for (AgentId j : a.diffusion_set()) {
        AgentId mapped = relabel[static_cast<std::size_t>(j)];
        if (mapped >= 0 && std::binary_search(allowed.begin(), allowed.end(), mapped))
            subset.push_back(mapped);
    }
    return Action(a.bid(), std::move(subset));
}

bool still_improving(const Shrunk& c, const MechanismFn& mechanism) {
    Action truthful(c.net.valuation(c.buyer), c.net.neighbors(c.buyer));
    Money u_truth = evaluate_buyer(c.net, mechanism, c.profile, c.buyer, truthful);
    Money u_dev = evaluate_buyer(c.net, mechanism, c.profile, c.buyer, c.deviation);
    return u_dev > u_truth;
}

std::optional<Shrunk> drop_agent(const Shrunk& c, AgentId victim) {
    const int n = c.net.agent_count();
    std::vector<AgentId> relabel(static_cast<std::size_t>(n), -1);
    AgentId next = 0;
    for (AgentId i = 0; i < n; ++i)
        if (i != victim) relabel[static_cast<std::size_t>(i)] = next++;

    std::vector<std::vector<AgentId>> adj(static_cast<std::size_t>(n - 1));
    std::vector<Money> values(static_cast<std::size_t>(n - 1));
    for (AgentId i = 0; i < n; ++i) {
        if (i == victim) continue;
        auto& nbrs = adj[static_cast<std::size_t>(relabel[static_cast<std::size_t>(i)])];
        for (AgentId j : c.net.neighbors(i))
            if (j != victim) nbrs.push_back(relabel[static_cast<std::size_t>(j)]);
        if (nbrs.empty()) return std::nullopt;
        values[static_cast<std::size_t>(relabel[static_cast<std::size_t>(i)])] =
            i == c.net.seller() ? c.net.seller_reserve() : c.net.valuation(i);
    }
    SocialNetwork net(relabel[static_cast<std::size_t>(c.net.seller())], std::move(adj), std::move(values));

    ActionProfile profile;
    profile.actions.resize(static_cast<std::size_t>(n - 1));
    for (AgentId i = 0; i < n; ++i) {
        if (i == victim || i == c.net.seller()) continue;
        AgentId mapped = relabel[static_cast<std::size_t>(i)];
        profile.actions[static_cast<std::size_t>(mapped)] =
            restrict_action(c.profile.of(i), net.neighbors(mapped), relabel);
    }
    AgentId buyer = relabel[static_cast<std::size_t>(c.buyer)];
    Action deviation = restrict_action(c.deviation, net.neighbors(buyer), relabel);
    return Shrunk{std::move(net), std::move(profile), buyer, std::move(deviation)};
}

std::optional<Shrunk> drop_edge(const Shrunk& c, AgentId a, AgentId b) {
    const int n = c.net.agent_count();
    std::vector<std::vector<AgentId>> adj(static_cast<std::size_t>(n));
    std::vector<Money> values(static_cast<std::size_t>(n));
    for (AgentId i = 0; i < n; ++i) {
        for (AgentId j : c.net.neighbors(i))
            if (!((i == a && j == b) || (i == b && j == a))) adj[static_cast<std::size_t>(i)].push_back(j);
        if (adj[static_cast<std::size_t>(i)].empty()) return std::nullopt;
        values[static_cast<std::size_t>(i)] = i == c.net.seller() ? c.net.seller_reserve() : c.net.valuation(i);
    }
    SocialNetwork net(c.net.seller(), std::move(adj), std::move(values));
    std::vector<AgentId> identity(static_cast<std::size_t>(n));
    for (AgentId i = 0; i < n; ++i) identity[static_cast<std::size_t>(i)] = i;
    ActionProfile profile;
    profile.actions.resize(static_cast<std::size_t>(n));
    for (AgentId i = 0; i < n; ++i)
        if (i != net.seller())
            profile.actions[static_cast<std::size_t>(i)] =
                restrict_action(c.profile.of(i), net.neighbors(i), identity);
    Action deviation = restrict_action(c.deviation, net.neighbors(c.buyer), identity);
    return Shrunk{std::move(net), std::move(profile), c.buyer, std::move(deviation)};
}

}  // namespace

Counterexample minimize_counterexample(const Counterexample& ce, const MechanismFn& mechanism,
                                       const std::vector<Money>& grid) {
    if (!ce.deviation || ce.buyer < 0) return ce;
    Shrunk current{ce.net, ce.profile, ce.buyer, *ce.deviation};
    if (!still_improving(current, mechanism)) return ce;

    bool changed = true;
    while (changed) {
        changed = false;
        // Agents first: each deletion removes the most structure.
        for (AgentId victim = 0; victim < current.net.agent_count(); ++victim) {
            if (victim == current.net.seller() || victim == current.buyer) continue;
            if (auto candidate = drop_agent(current, victim)) {
                if (still_improving(*candidate, mechanism)) {
                    current = std::move(*candidate);
                    changed = true;
                    break;
                }
            }
        }
        if (changed) continue;
        for (AgentId a = 0; a < current.net.agent_count() && !changed; ++a) {
            for (AgentId b : current.net.neighbors(a)) {
                if (b < a) continue;
                if (auto candidate = drop_edge(current, a, b)) {
                    if (still_improving(*candidate, mechanism)) {
                        current = std::move(*candidate);
                        changed = true;
                        break;
                    }
                }
            }
        }
        if (changed) continue;
        // Valuations last: pull each one down the grid as far as possible.
        for (AgentId i = 0; i < current.net.agent_count() && !changed; ++i) {
            if (i == current.net.seller()) continue;
            for (Money v : grid) {
                if (v >= current.net.valuation(i)) break;
                std::vector<std::vector<AgentId>> adj;
                std::vector<Money> values;
                for (AgentId k = 0; k < current.net.agent_count(); ++k) {
                    adj.push_back(current.net.neighbors(k));
                    values.push_back(k == current.net.seller() ? current.net.seller_reserve()
                                                               : current.net.valuation(k));
                }
                values[static_cast<std::size_t>(i)] = v;
                Shrunk candidate{SocialNetwork(current.net.seller(), std::move(adj), std::move(values)),
                                 current.profile, current.buyer, current.deviation};
                if (still_improving(candidate, mechanism)) {
                    current = std::move(candidate);
                    changed = true;
                    break;
                }
            }
        }
    }

    Counterexample out = ce;
    out.net = std::move(current.net);
    out.profile = std::move(current.profile);
    out.buyer = current.buyer;
    out.deviation = std::move(current.deviation);
    out.note = ce.note + " (minimized)";
    return out;
}

int default_thread_count() {
    if (const char* env = std::getenv("DIFFAUCT_THREADS")) {
        int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace diffauct
