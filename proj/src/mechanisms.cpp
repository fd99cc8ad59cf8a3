#include "diffauct/mechanisms.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace diffauct {

namespace {

Outcome empty_outcome(const SocialNetwork& net, const ActionProfile& profile) {
    Outcome out;
    const auto n = static_cast<std::size_t>(net.agent_count());
    out.payments.assign(n, Money());
    out.status.assign(n, BuyerStatus::NonParticipant);
    for (AgentId i = 0; i < net.agent_count(); ++i)
        if (i != net.seller() && !profile.of(i).is_null())
            out.status[static_cast<std::size_t>(i)] = BuyerStatus::Normal;
    return out;
}

// Highest bidder among `candidates` under the configured tie-break.
AgentId pick_highest(const ActionProfile& profile, const std::vector<AgentId>& candidates,
                     const TieBreak& tie) {
    Money best = profile.of(candidates.front()).bid();
    for (AgentId i : candidates) best = max(best, profile.of(i).bid());
    if (tie.mode == TieBreak::Mode::LowestId) {
        for (AgentId i : candidates)
            if (profile.of(i).bid() == best) return i;
    }
    std::vector<AgentId> tied;
    for (AgentId i : candidates)
        if (profile.of(i).bid() == best) tied.push_back(i);
    std::mt19937_64 rng(tie.seed);
    return tied[static_cast<std::size_t>(rng() % tied.size())];
}

void require_feasible(const SocialNetwork& net, const ActionProfile& profile) {
    if (!is_feasible(net, profile))
        throw std::invalid_argument("mechanisms require a feasible action profile");
}

void finish(const SocialNetwork& net, Outcome& out) {
    out.revenue = Money();
    for (Money p : out.payments) out.revenue += p;
    out.welfare = out.winner ? net.valuation(*out.winner) : Money();
}

}  // namespace

Outcome run(MechanismKind kind, const SocialNetwork& net, const ActionProfile& profile,
            const TieBreak& tie) {
    switch (kind) {
        case MechanismKind::SecondPriceLocal: return second_price_local(net, profile, tie);
        case MechanismKind::NetworkVCG: return vcg_network(net, profile, tie);
        case MechanismKind::IDM: return idm(net, profile, tie);
    }
    throw std::invalid_argument("unknown mechanism");
}

Outcome second_price_local(const SocialNetwork& net, const ActionProfile& profile, const TieBreak& tie) {
    require_feasible(net, profile);
    Outcome out = empty_outcome(net, profile);
    std::vector<AgentId> candidates;
    for (AgentId i : net.neighbors(net.seller()))
        if (!profile.of(i).is_null()) candidates.push_back(i);
    if (candidates.empty()) return out;

    AgentId winner = pick_highest(profile, candidates, tie);
    Money second = net.seller_reserve();
    for (AgentId i : candidates)
        if (i != winner) second = max(second, profile.of(i).bid());
    out.winner = winner;
    out.payments[static_cast<std::size_t>(winner)] = second;
    out.status[static_cast<std::size_t>(winner)] = BuyerStatus::Winner;
    finish(net, out);
    return out;
}

Outcome vcg_network(const SocialNetwork& net, const ActionProfile& profile, const TieBreak& tie) {
    return vcg_network(net, profile, dominator_analysis(build_diffusion_graph(net, profile)), tie);
}

Outcome vcg_network(const SocialNetwork& net, const ActionProfile& profile,
                    const DiffusionAnalysis& analysis, const TieBreak& tie) {
    Outcome out = empty_outcome(net, profile);
    const auto& participants = analysis.participants();
    if (participants.empty()) return out;

    AgentId winner = pick_highest(profile, participants, tie);
    Money top = profile.of(winner).bid();
    out.winner = winner;
    out.status[static_cast<std::size_t>(winner)] = BuyerStatus::Winner;
    for (AgentId i : participants) {
        // Welfare of the others with i absent, minus their welfare with i
        // present: i's participation can only shrink the former.
        Money without_i = best_report_outside(net, profile, analysis, i);
        Money others_now = i == winner ? Money() : top;
        out.payments[static_cast<std::size_t>(i)] = without_i - others_now;
    }
    finish(net, out);
    return out;
}

Outcome idm(const SocialNetwork& net, const ActionProfile& profile, const TieBreak& tie) {
    return idm(net, profile, dominator_analysis(build_diffusion_graph(net, profile)), tie);
}

Outcome idm(const SocialNetwork& net, const ActionProfile& profile, const DiffusionAnalysis& analysis,
            const TieBreak& tie) {
    Outcome out = empty_outcome(net, profile);
    const auto& participants = analysis.participants();
    if (participants.empty()) return out;

    AgentId top_bidder = pick_highest(profile, participants, tie);
    std::vector<AgentId> chain = analysis.sequence(top_bidder);

    // Best report once each chain member's dependents drop out.
    std::vector<Money> outside(chain.size());
    for (std::size_t t = 0; t < chain.size(); ++t)
        outside[t] = best_report_outside(net, profile, analysis, chain[t]);

    // First chain member (seller side out) whose bid is already the best
    // available once her successor's dependents are gone; the top bidder
    // herself closes the chain.
    std::size_t winner_pos = chain.size() - 1;
    for (std::size_t t = 0; t + 1 < chain.size(); ++t) {
        if (profile.of(chain[t]).bid() == outside[t + 1]) {
            winner_pos = t;
            break;
        }
    }
    AgentId winner = chain[winner_pos];

    out.winner = winner;
    for (std::size_t t = 0; t < winner_pos; ++t)
        out.payments[static_cast<std::size_t>(chain[t])] = outside[t] - outside[t + 1];
    out.payments[static_cast<std::size_t>(winner)] = outside[winner_pos];

    // Labels: the winner's critical nodes were on the relay path; everyone
    // shielded by the winner's successor (or by the top bidder when she
    // wins) had no say in the result.
    out.status[static_cast<std::size_t>(winner)] = BuyerStatus::Winner;
    for (std::size_t t = 0; t < winner_pos; ++t)
        out.status[static_cast<std::size_t>(chain[t])] = BuyerStatus::OnPath;
    if (winner_pos + 1 < chain.size()) {
        for (AgentId j : analysis.dependent_set(chain[winner_pos + 1]))
            out.status[static_cast<std::size_t>(j)] = BuyerStatus::Unlucky;
    } else {
        for (AgentId j : analysis.dependent_set(top_bidder))
            if (j != top_bidder) out.status[static_cast<std::size_t>(j)] = BuyerStatus::Unlucky;
    }
    finish(net, out);
    return out;
}

std::vector<BuyerStatus> classify_buyers(const SocialNetwork& net, const ActionProfile& profile,
                                         const Outcome& idm_outcome, const TieBreak& tie) {
    Outcome fresh = idm(net, profile, tie);
    if (fresh.winner != idm_outcome.winner)
        throw std::invalid_argument("outcome does not match an IDM run on this profile");
    return fresh.status;
}

Money best_report_outside(const SocialNetwork& net, const ActionProfile& profile,
                          const DiffusionAnalysis& analysis, AgentId i) {
    Money best = net.seller_reserve();
    for (AgentId j : analysis.participants()) {
        if (analysis.in_dependent_set(i, j)) continue;
        best = max(best, profile.of(j).bid());
    }
    return best;
}

Money max_report_among(const SocialNetwork& net, const ActionProfile& profile,
                       const std::vector<AgentId>& ids) {
    Money best = net.seller_reserve();
    for (AgentId i : ids)
        if (net.is_buyer(i) && !profile.of(i).is_null()) best = max(best, profile.of(i).bid());
    return best;
}

Money revenue(const Outcome& outcome) { return outcome.revenue; }

Money welfare(const SocialNetwork& net, const Outcome& outcome) {
    return outcome.winner ? net.valuation(*outcome.winner) : Money();
}

Money utility(const SocialNetwork& net, AgentId buyer, const Outcome& outcome) {
    if (!net.is_buyer(buyer)) throw std::out_of_range("no such buyer: " + std::to_string(buyer));
    bool allocated = outcome.winner && *outcome.winner == buyer;
    return quasilinear_utility(net, buyer, allocated, outcome.payments.at(static_cast<std::size_t>(buyer)));
}

std::string_view to_string(MechanismKind kind) {
    switch (kind) {
        case MechanismKind::SecondPriceLocal: return "spl";
        case MechanismKind::NetworkVCG: return "vcg";
        case MechanismKind::IDM: return "idm";
    }
    return "?";
}

std::string_view to_string(BuyerStatus status) {
    switch (status) {
        case BuyerStatus::Winner: return "winner";
        case BuyerStatus::OnPath: return "on-path";
        case BuyerStatus::Unlucky: return "unlucky";
        case BuyerStatus::Normal: return "normal";
        case BuyerStatus::NonParticipant: return "non-participant";
    }
    return "?";
}

std::optional<MechanismKind> mechanism_from_string(std::string_view name) {
    if (name == "spl" || name == "second-price-local") return MechanismKind::SecondPriceLocal;
    if (name == "vcg" || name == "network-vcg") return MechanismKind::NetworkVCG;
    if (name == "idm") return MechanismKind::IDM;
    return std::nullopt;
}

}  // namespace diffauct
