#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "diffauct/mechanisms.hpp"
#include "diffauct/verifier.hpp"
#include "helpers.hpp"

using namespace diffauct;
using namespace diffauct::testing;

namespace {

Money pay(const Outcome& o, AgentId i) { return o.payments[static_cast<std::size_t>(i)]; }
BuyerStatus st(const Outcome& o, AgentId i) { return o.status[static_cast<std::size_t>(i)]; }

}  // namespace

TEST_CASE("local second price ignores everything beyond the seller's neighbors") {
    SocialNetwork line = line_graph(5);
    Outcome o = second_price_local(line, truthful_profile(line));
    CHECK(o.winner == 1);
    CHECK(pay(o, 1) == Money());
    CHECK(o.revenue == Money());
    CHECK(o.welfare == Money());  // buyer 1 values the item at 0

    // two seller neighbors bidding 7 and 4
    SocialNetwork pair = make_net(0, 3, {{0, 1}, {0, 2}}, whole_values({0, 7, 4}));
    Outcome p = second_price_local(pair, truthful_profile(pair));
    CHECK(p.winner == 1);
    CHECK(pay(p, 1) == Money::whole(4));
    CHECK(p.revenue == Money::whole(4));

    SocialNetwork solo = make_net(0, 2, {{0, 1}}, whole_values({0, 9}));
    Outcome s = second_price_local(solo, truthful_profile(solo));
    CHECK(s.winner == 1);
    CHECK(pay(s, 1) == Money());
}

TEST_CASE("network vcg rewards every intermediary on the line") {
    SocialNetwork net = line_graph(5);
    Outcome o = vcg_network(net, truthful_profile(net));
    CHECK(o.winner == 5);
    CHECK(pay(o, 5) == Money());
    for (AgentId i = 1; i <= 4; ++i) CHECK(pay(o, i) == Money::whole(-1));
    CHECK(o.revenue == Money::whole(-4));
    CHECK(o.welfare == Money::whole(1));
}

TEST_CASE("network vcg on two independent seller neighbors is plain second price") {
    SocialNetwork net = make_net(0, 3, {{0, 1}, {0, 2}}, whole_values({0, 7, 4}));
    Outcome o = vcg_network(net, truthful_profile(net));
    CHECK(o.winner == 1);
    CHECK(pay(o, 1) == Money::whole(4));
    CHECK(pay(o, 2) == Money());
    CHECK(o.revenue == Money::whole(4));
}

TEST_CASE("network vcg with a single buyer charges nothing") {
    SocialNetwork net = make_net(0, 2, {{0, 1}}, whole_values({0, 9}));
    Outcome o = vcg_network(net, truthful_profile(net));
    CHECK(o.winner == 1);
    CHECK(pay(o, 1) == Money());
}

TEST_CASE("idm on the worked example: winner, payment, reward, revenue") {
    SocialNetwork net = fig2_network();
    ActionProfile p = truthful_profile(net);
    Outcome o = idm(net, p);
    CHECK(o.winner == kI);
    CHECK(pay(o, kI) == Money::whole(11));
    CHECK(pay(o, kC) == Money::whole(-1));
    CHECK(o.revenue == Money::whole(10));
    CHECK(o.welfare == Money::whole(12));
    for (AgentId i = 1; i <= 12; ++i)
        if (i != kI && i != kC) CHECK(pay(o, i) == Money());

    CHECK(st(o, kI) == BuyerStatus::Winner);
    CHECK(st(o, kC) == BuyerStatus::OnPath);
    CHECK(st(o, kL) == BuyerStatus::Unlucky);
    for (AgentId i : {kA, kB, kD, kE, kF, kG, kH, kJ, kK}) CHECK(st(o, i) == BuyerStatus::Normal);

    CHECK(classify_buyers(net, p, o) == o.status);

    // utilities from the same run: winner nets 1, the rewarded relay nets 1
    CHECK(utility(net, kI, o) == Money::whole(1));
    CHECK(utility(net, kC, o) == Money::whole(1));
    CHECK(utility(net, kL, o) == Money());
    CHECK_THROWS_AS(utility(net, 0, o), std::out_of_range);
    CHECK(revenue(o) == o.revenue);
    CHECK(welfare(net, o) == o.welfare);
}

TEST_CASE("idm on the line sells to the first buyer for nothing") {
    SocialNetwork net = line_graph(5);
    Outcome o = idm(net, truthful_profile(net));
    CHECK(o.winner == 1);
    CHECK(pay(o, 1) == Money());
    CHECK(o.revenue == Money());
    CHECK(o.welfare == Money());
    for (AgentId i = 1; i <= 5; ++i) CHECK(!pay(o, i).is_negative());

    CHECK(st(o, 1) == BuyerStatus::Winner);
    for (AgentId i = 2; i <= 5; ++i) CHECK(st(o, i) == BuyerStatus::Unlucky);
}

TEST_CASE("idm with a single seller neighbor") {
    SocialNetwork net = make_net(0, 2, {{0, 1}}, whole_values({0, 9}));
    Outcome o = idm(net, truthful_profile(net));
    CHECK(o.winner == 1);
    CHECK(pay(o, 1) == Money());
    CHECK(st(o, 1) == BuyerStatus::Winner);
}

TEST_CASE("dispatch handles empty participation and single participants") {
    SocialNetwork net = line_graph(3);
    ActionProfile nobody;
    nobody.actions.resize(4);
    for (MechanismKind kind :
         {MechanismKind::SecondPriceLocal, MechanismKind::NetworkVCG, MechanismKind::IDM}) {
        Outcome o = run(kind, net, nobody);
        CHECK(!o.winner.has_value());
        CHECK(o.revenue == Money());
        CHECK(o.welfare == Money());
        for (AgentId i = 1; i <= 3; ++i) CHECK(st(o, i) == BuyerStatus::NonParticipant);
    }

    ActionProfile solo;
    solo.actions.resize(4);
    solo.actions[1] = Action(Money::whole(2), {});
    for (MechanismKind kind :
         {MechanismKind::SecondPriceLocal, MechanismKind::NetworkVCG, MechanismKind::IDM}) {
        Outcome o = run(kind, net, solo);
        CHECK(o.winner == 1);
    }

    ActionProfile infeasible = truthful_profile(net);
    infeasible.actions[1] = Action(Money(), {});
    CHECK_THROWS_AS(run(MechanismKind::IDM, net, infeasible), std::invalid_argument);
}

TEST_CASE("seeded tie-break stays within the tied set and is reproducible") {
    SocialNetwork net = make_net(0, 4, {{0, 1}, {0, 2}, {0, 3}}, whole_values({0, 5, 5, 5}));
    ActionProfile p = truthful_profile(net);
    Outcome lowest = idm(net, p);
    CHECK(lowest.winner == 1);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        Outcome a = idm(net, p, TieBreak::seeded(seed));
        Outcome b = idm(net, p, TieBreak::seeded(seed));
        CHECK(a.winner == b.winner);
        CHECK(a.winner.has_value());
        CHECK(*a.winner >= 1);
        CHECK(*a.winner <= 3);
        CHECK(a.revenue == Money::whole(5));  // whoever wins pays the other tied bid
    }
}

TEST_CASE("revenue telescopes and stays non-negative on random profiles") {
    Rng rng(3);
    std::vector<Money> grid = integer_grid(9);
    ProfileSampler sampler{grid, 0.2};
    for (int t = 0; t < 300; ++t) {
        SocialNetwork net = t % 2 == 0 ? random_tree_network(2 + rng.below(14), grid, rng)
                                       : erdos_renyi_network(2 + rng.below(14), 0.3, grid, rng);
        ActionProfile p = sampler.sample(net, rng);
        DiffusionAnalysis analysis = dominator_analysis(build_diffusion_graph(net, p));
        Outcome o = idm(net, p, analysis);
        CHECK(!o.revenue.is_negative());
        Money sum;
        for (Money x : o.payments) sum += x;
        CHECK(sum == o.revenue);
        if (o.winner) {
            std::vector<AgentId> chain = analysis.sequence(*o.winner);
            CHECK(o.revenue == best_report_outside(net, p, analysis, chain.front()));
            // payments live on the winner's critical sequence only
            for (AgentId i = 0; i < net.agent_count(); ++i) {
                if (pay(o, i) == Money()) continue;
                CHECK(std::find(chain.begin(), chain.end(), i) != chain.end());
            }
        }
    }
}

TEST_CASE("vcg allocates efficiently and charges nothing off the top bidder's sequence") {
    Rng rng(5);
    std::vector<Money> grid = integer_grid(9);
    ProfileSampler sampler{grid, 0.2};
    for (int t = 0; t < 300; ++t) {
        SocialNetwork net = erdos_renyi_network(2 + rng.below(14), 0.35, grid, rng);
        ActionProfile p = sampler.sample(net, rng);
        DiffusionAnalysis analysis = dominator_analysis(build_diffusion_graph(net, p));
        Outcome o = vcg_network(net, p, analysis);
        if (!o.winner) continue;
        for (AgentId j : analysis.participants()) CHECK(p.of(j).bid() <= p.of(*o.winner).bid());
        std::vector<AgentId> chain = analysis.sequence(*o.winner);
        for (AgentId i : analysis.participants())
            if (std::find(chain.begin(), chain.end(), i) == chain.end()) CHECK(pay(o, i) == Money());
    }
}

TEST_CASE("idm revenue dominates vcg and the local auction on truthful profiles") {
    Rng rng(11);
    std::vector<Money> grid = integer_grid(9);
    for (int t = 0; t < 300; ++t) {
        SocialNetwork net = t % 2 == 0 ? random_tree_network(2 + rng.below(19), grid, rng)
                                       : erdos_renyi_connected_network(2 + rng.below(19), 0.3, grid, rng);
        RevenueComparison cmp = check_revenue_dominance(net, truthful_profile(net));
        CHECK(cmp.all_hold());
    }
}

TEST_CASE("a buyer's payment never depends on her own bid while her role stands") {
    Rng rng(29);
    std::vector<Money> grid = integer_grid(6);
    for (int t = 0; t < 150; ++t) {
        SocialNetwork net = erdos_renyi_connected_network(2 + rng.below(6), 0.45, grid, rng);
        ActionProfile p = truthful_profile(net);
        Outcome base = idm(net, p);
        for (AgentId i = 1; i < net.agent_count(); ++i) {
            if (i == net.seller()) continue;
            for (Money bid : grid) {
                ActionProfile q = p;
                q.actions[static_cast<std::size_t>(i)] = Action(bid, net.neighbors(i));
                Outcome moved = idm(net, q);
                if (st(moved, i) == st(base, i)) CHECK(pay(moved, i) == pay(base, i));
            }
        }
    }
}

TEST_CASE("buyers off the winner's sequence stay off it when they relay less") {
    Rng rng(31);
    std::vector<Money> grid = integer_grid(6);
    for (int t = 0; t < 150; ++t) {
        SocialNetwork net = erdos_renyi_connected_network(3 + rng.below(4), 0.5, grid, rng);
        ActionProfile p = truthful_profile(net);
        DiffusionAnalysis analysis = dominator_analysis(build_diffusion_graph(net, p));
        Outcome base = idm(net, p, analysis);
        if (!base.winner) continue;
        std::vector<AgentId> base_chain = analysis.sequence(*base.winner);
        for (AgentId i = 1; i < net.agent_count(); ++i) {
            if (i == net.seller()) continue;
            if (std::find(base_chain.begin(), base_chain.end(), i) != base_chain.end()) continue;
            std::vector<AgentId> cand;
            for (AgentId j : net.neighbors(i))
                if (j != net.seller()) cand.push_back(j);
            const std::size_t total = std::size_t{1} << cand.size();
            for (std::size_t mask = 0; mask + 1 < total; ++mask) {
                std::vector<AgentId> relay;
                for (std::size_t b = 0; b < cand.size(); ++b)
                    if (mask & (std::size_t{1} << b)) relay.push_back(cand[b]);
                ActionProfile q = p;
                q.actions[static_cast<std::size_t>(i)] = Action(net.valuation(i), std::move(relay));
                ActionProfile fq = feasibility_transform(net, q);
                Outcome moved = idm(net, fq);
                if (!moved.winner) continue;
                DiffusionAnalysis an2 = dominator_analysis(build_diffusion_graph(net, fq));
                std::vector<AgentId> chain = an2.sequence(*moved.winner);
                CHECK(std::find(chain.begin(), chain.end(), i) == chain.end());
            }
        }
    }
}

TEST_CASE("mechanism names round-trip") {
    for (MechanismKind kind :
         {MechanismKind::SecondPriceLocal, MechanismKind::NetworkVCG, MechanismKind::IDM})
        CHECK(mechanism_from_string(to_string(kind)) == kind);
    CHECK(!mechanism_from_string("vickrey").has_value());
}
