#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>

#include "diffauct/detail/small_engine.hpp"
#include "diffauct/verifier.hpp"
#include "helpers.hpp"

using namespace diffauct;
using namespace diffauct::testing;

namespace {

// Connected labeled graphs, counted independently of the enumerator:
// subtract, from all graphs on n nodes, those whose component containing
// node 1 has k < n nodes.
std::uint64_t connected_count_oracle(int n) {
    auto choose = [](int a, int b) {
        std::uint64_t r = 1;
        for (int i = 1; i <= b; ++i) r = r * static_cast<std::uint64_t>(a - i + 1) / static_cast<std::uint64_t>(i);
        return r;
    };
    auto pow2 = [](int e) { return std::uint64_t{1} << e; };
    std::vector<std::uint64_t> c(static_cast<std::size_t>(n + 1));
    c[1] = 1;
    for (int m = 2; m <= n; ++m) {
        std::uint64_t total = pow2(m * (m - 1) / 2);
        for (int k = 1; k < m; ++k)
            total -= choose(m - 1, k - 1) * c[static_cast<std::size_t>(k)] * pow2((m - k) * (m - k - 1) / 2);
        c[static_cast<std::size_t>(m)] = total;
    }
    return c[static_cast<std::size_t>(n)];
}

Outcome first_price_local(const SocialNetwork& net, const ActionProfile& profile) {
    // Deliberately manipulable: the winner pays her own bid.
    Outcome out = second_price_local(net, profile);
    if (out.winner) {
        Money bid = profile.of(*out.winner).bid();
        out.revenue += bid - out.payments[static_cast<std::size_t>(*out.winner)];
        out.welfare = net.valuation(*out.winner);
        out.payments[static_cast<std::size_t>(*out.winner)] = bid;
    }
    return out;
}

}  // namespace

TEST_CASE("graph enumeration matches the closed-form connected count") {
    for (int n = 2; n <= 6; ++n)
        CHECK(connected_adjacencies(n).size() == connected_count_oracle(n));
    CHECK(connected_count_oracle(4) == 38);
    CHECK(connected_count_oracle(5) == 728);
}

TEST_CASE("network counting crosses graphs with valuation assignments") {
    CHECK(count_networks(2, 2) == 2);
    CHECK(count_networks(3, 2) == 2 + 16);
    CHECK(count_networks(4, 2) == 2 + 16 + 38 * 8);
    CHECK_THROWS_AS(connected_adjacencies(9), std::invalid_argument);
}

TEST_CASE("streamed networks are valid and cover both 3-agent topologies") {
    int count = 0, paths = 0, triangles = 0;
    for_each_network(3, integer_grid(1), 1, [&](const SocialNetwork& net) {
        ++count;
        CHECK(net.seller() == 0);
        if (net.agent_count() == 3) {
            int edges = 0;
            for (AgentId i = 0; i < 3; ++i) edges += static_cast<int>(net.neighbors(i).size());
            edges /= 2;
            if (edges == 2) ++paths;
            if (edges == 3) ++triangles;
        }
    });
    CHECK(count == 18);
    CHECK(paths == 3 * 4);      // three labeled paths, four valuation assignments
    CHECK(triangles == 1 * 4);
}

TEST_CASE("no profitable deviations for idm or vcg on handpicked networks") {
    DeviationSpace space = DeviationSpace::exhaustive(integer_grid(3));
    for (const SocialNetwork& net :
         {line_graph(4, whole_values({0, 2, 1, 3})),
          make_net(0, 5, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}}, whole_values({0, 1, 2, 3, 1}))}) {
        for (MechanismKind kind : {MechanismKind::IDM, MechanismKind::NetworkVCG}) {
            VerificationReport ic = check_ic(net, kind, space);
            CHECK(ic.passed());
            CHECK(ic.deviations_checked > 0);
            VerificationReport ir = check_ir(net, kind, space);
            CHECK(ir.passed());
        }
    }
}

TEST_CASE("the worked example admits no profitable deviation either") {
    DeviationSpace space = DeviationSpace::exhaustive(integer_grid(13));
    space.sampled_other_profiles = 2;
    for (MechanismKind kind : {MechanismKind::IDM, MechanismKind::NetworkVCG})
        CHECK(check_ic(fig2_network(), kind, space).passed());
}

TEST_CASE("the checker exposes a manipulable mechanism and shrinks the finding") {
    SocialNetwork net = make_net(0, 4, {{0, 1}, {0, 2}, {2, 3}}, whole_values({0, 7, 4, 2}));
    DeviationSpace space = DeviationSpace::exhaustive(integer_grid(7));
    VerificationReport report = check_ic_fn(net, "first-price-local", first_price_local, space);
    CHECK(!report.passed());
    REQUIRE(!report.counterexamples.empty());
    const Counterexample& ce = report.counterexamples.front();
    CHECK(ce.observed_value > ce.baseline_value);
    CHECK(ce.net.agent_count() == 2);  // shrunk to the seller and the manipulating buyer
    CHECK(ce.note.find("minimized") != std::string::npos);
}

TEST_CASE("dropping the relay rewards makes hiding profitable, and the checker sees it") {
    // s-A, s-B, A-C, B-C, C-D, C-E with values A=1, B=1, C=9, D=12, E=10.
    // Honest play: D wins at 10 and C is rewarded 9 for relaying. Without
    // rewards, C prefers to cut D off: E becomes the top bidder, C matches
    // the best report outside E's dependents and takes the item for 1.
    SocialNetwork net = make_net(0, 6, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}, {3, 5}},
                                 whole_values({0, 1, 1, 9, 12, 10}));
    auto no_reward_idm = [](const SocialNetwork& n, const ActionProfile& p) {
        Outcome out = idm(n, p);
        for (Money& payment : out.payments) {
            if (payment.is_negative()) {
                out.revenue -= payment;
                payment = Money();
            }
        }
        return out;
    };
    CHECK(check_ic(net, MechanismKind::IDM, DeviationSpace::exhaustive(integer_grid(12))).passed());
    VerificationReport report =
        check_ic_fn(net, "idm-without-rewards", no_reward_idm, DeviationSpace::exhaustive(integer_grid(12)));
    CHECK(!report.passed());
    REQUIRE(!report.counterexamples.empty());
    bool hiding_found = false;
    for (const auto& ce : report.counterexamples)
        if (ce.deviation && !ce.deviation->is_null() &&
            ce.deviation->diffusion_set().size() < net.neighbors(ce.buyer).size())
            hiding_found = true;
    CHECK(hiding_found);
}

TEST_CASE("the checker exposes individual-rationality violations") {
    SocialNetwork net = make_net(0, 3, {{0, 1}, {0, 2}}, whole_values({0, 3, 1}));
    auto overcharging = [](const SocialNetwork& n, const ActionProfile& p) {
        Outcome out = second_price_local(n, p);
        for (AgentId i = 1; i < n.agent_count(); ++i) {
            if (p.of(i).is_null()) continue;
            out.payments[static_cast<std::size_t>(i)] += Money::whole(1);
            out.revenue += Money::whole(1);
        }
        return out;
    };
    VerificationReport report = check_ir_fn(net, "overcharging", overcharging,
                                            DeviationSpace::exhaustive(integer_grid(3)));
    CHECK(!report.passed());
}

TEST_CASE("hiding a better-connected rival is pointless under the local auction") {
    // Buyer 1 is the cut vertex between the seller and a higher bidder.
    SocialNetwork net = line_graph(2, whole_values({1, 5}));
    VerificationReport report =
        check_ic(net, MechanismKind::SecondPriceLocal, DeviationSpace::exhaustive(integer_grid(5)));
    CHECK(report.passed());
    CHECK(report.improving == 0);
    CHECK(report.neutral > 0);  // relay choices leave every utility untouched
}

TEST_CASE("budget balance sampling: idm clean, vcg in deficit on the line") {
    SocialNetwork net = line_graph(5);
    ProfileSampler sampler{integer_grid(3)};
    VerificationReport idm_report = check_wbb(net, MechanismKind::IDM, sampler, 120, 5);
    CHECK(idm_report.passed());
    VerificationReport vcg_report = check_wbb(net, MechanismKind::NetworkVCG, sampler, 120, 5);
    CHECK(vcg_report.violations > 0);
    REQUIRE(!vcg_report.counterexamples.empty());
    CHECK(vcg_report.counterexamples.front().observed_value.is_negative());
}

TEST_CASE("random-network budget balance for idm") {
    CHECK(check_wbb_random(MechanismKind::IDM, 300, 12, integer_grid(5), 9).passed());
}

TEST_CASE("revenue dominance holds on sampled truthful instances") {
    VerificationReport report = check_dominance_random(400, 20, integer_grid(10), 7);
    CHECK(report.passed());
    CHECK(report.instances_checked == 400);
}

TEST_CASE("dominator analysis equals the oracle on sampled instances") {
    CHECK(check_oracle_equivalence(60, 60, 11).passed());
}

TEST_CASE("compact sweep engine agrees with the reference pipeline") {
    Rng rng(13);
    std::vector<Money> grid = integer_grid(4);
    ProfileSampler sampler{grid, 0.25};
    for (int t = 0; t < 250; ++t) {
        SocialNetwork net = erdos_renyi_connected_network(2 + rng.below(5), 0.45, grid, rng);
        ActionProfile p = sampler.sample(net, rng);

        detail::SmallNet snet = detail::SmallNet::from(net);
        detail::SmallProfile sp;
        for (AgentId i = 1; i < net.agent_count(); ++i) {
            const Action& a = p.of(i);
            if (a.is_null()) continue;
            sp.participating |= std::uint32_t{1} << i;
            sp.bid[i] = a.bid().units();
            for (AgentId j : a.diffusion_set()) sp.relay[i] |= std::uint32_t{1} << j;
        }
        detail::small_transform(snet, sp);
        CHECK(detail::small_to_profile(snet, sp) == p);  // p was already feasible

        detail::SmallAnalysis an;
        detail::small_analyze(snet, sp, an);
        DiffusionGraph g = build_diffusion_graph(net, p);
        DiffusionAnalysis ref = dominator_analysis(g);
        for (AgentId j : g.participants()) {
            std::uint32_t crit = 0;
            for (AgentId c : ref.critical_of(j)) crit |= std::uint32_t{1} << c;
            CHECK(an.critical[j] == crit);
        }

        detail::SmallOutcome so;
        detail::small_idm(snet, sp, an, so);
        Outcome ref_idm = idm(net, p);
        CHECK(so.winner == (ref_idm.winner ? *ref_idm.winner : -1));
        CHECK(so.revenue == ref_idm.revenue.units());
        for (AgentId i = 1; i < net.agent_count(); ++i)
            CHECK(so.payment[i] == ref_idm.payments[static_cast<std::size_t>(i)].units());
        std::uint32_t ref_unlucky = 0;
        for (AgentId i = 1; i < net.agent_count(); ++i)
            if (ref_idm.status[static_cast<std::size_t>(i)] == BuyerStatus::Unlucky)
                ref_unlucky |= std::uint32_t{1} << i;
        CHECK(so.unlucky == ref_unlucky);
        detail::small_vcg(snet, sp, an, so);
        Outcome ref_vcg = vcg_network(net, p);
        CHECK(so.winner == (ref_vcg.winner ? *ref_vcg.winner : -1));
        CHECK(so.revenue == ref_vcg.revenue.units());
        for (AgentId i = 1; i < net.agent_count(); ++i)
            CHECK(so.payment[i] == ref_vcg.payments[static_cast<std::size_t>(i)].units());
    }
}

TEST_CASE("a small exhaustive sweep comes back clean with the expected coverage") {
    SweepOptions options;
    options.n_max = 4;
    options.grid = integer_grid(2);
    options.threads = 1;
    SweepResult sweep = exhaustive_sweep(options);
    CHECK(sweep.all_passed());
    CHECK(sweep.networks == 1 + 4 + 38);
    CHECK(sweep.instances == count_networks(4, 3));
    CHECK(sweep.deviations > sweep.instances);
    CHECK(sweep.ic_idm.deviations_checked == sweep.ic_vcg.deviations_checked);
    CHECK(sweep.unlucky_neutral.deviations_checked > 0);
    CHECK(sweep.dset_monotone.deviations_checked > 0);
    CHECK(!sweep.partial);

    SweepOptions threaded = options;
    threaded.threads = 3;
    SweepResult again = exhaustive_sweep(threaded);
    CHECK(again.instances == sweep.instances);
    CHECK(again.deviations == sweep.deviations);
    CHECK(again.all_passed());
}

TEST_CASE("an impossible wall-clock budget yields a partial sweep") {
    SweepOptions options;
    options.n_max = 5;
    options.grid = integer_grid(3);
    options.threads = 1;
    options.budget_seconds = 1e-9;
    SweepResult sweep = exhaustive_sweep(options);
    CHECK(sweep.partial);
    CHECK(sweep.ic_idm.partial);
}

TEST_CASE("sampled diffusion subsets keep the checker usable on dense nodes") {
    SocialNetwork net = make_net(0, 6, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 5}},
                                 whole_values({0, 1, 2, 3, 4, 5}));
    DeviationSpace space = DeviationSpace::exhaustive(integer_grid(5));
    space.diffusion_mode = DeviationSpace::DiffusionMode::SampledSubsets;
    space.subset_samples = 6;
    space.seed = 21;
    CHECK(check_ic(net, MechanismKind::IDM, space).passed());
}
