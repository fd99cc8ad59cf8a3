#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "diffauct/graph.hpp"
#include "diffauct/model.hpp"

namespace diffauct {

enum class MechanismKind { SecondPriceLocal, NetworkVCG, IDM };

enum class BuyerStatus { Winner, OnPath, Unlucky, Normal, NonParticipant };

// How equal highest bids are resolved. Lowest id keeps runs reproducible;
// the seeded mode draws uniformly among the tied bidders.
struct TieBreak {
    enum class Mode { LowestId, Seeded };
    Mode mode = Mode::LowestId;
    std::uint64_t seed = 0;

    static TieBreak lowest_id() { return {}; }
    static TieBreak seeded(std::uint64_t seed) { return {Mode::Seeded, seed}; }
};

// Result of one mechanism run. Payments are indexed by agent id (negative
// means the buyer is rewarded); the seller's slot stays zero. Revenue is the
// exact sum of payments; welfare is the winner's true valuation.
struct Outcome {
    std::optional<AgentId> winner;
    std::vector<Money> payments;
    Money revenue{};
    Money welfare{};
    std::vector<BuyerStatus> status;
};

// Dispatches to one of the three mechanisms below. The profile must be
// feasible (apply feasibility_transform first); std::invalid_argument
// otherwise.
Outcome run(MechanismKind kind, const SocialNetwork& net, const ActionProfile& profile,
            const TieBreak& tie = {});

// Classic second-price auction among the seller's own neighbors: diffusion
// reports are ignored, the highest bidder among them wins and pays the
// second-highest bid (the reserve when she is alone).
Outcome second_price_local(const SocialNetwork& net, const ActionProfile& profile,
                           const TieBreak& tie = {});

// Network VCG: the highest report wins, and every participant is charged the
// welfare loss her participation inflicts on everyone outside her dependent
// set. Critical nodes of the winner end up rewarded; revenue can be negative.
Outcome vcg_network(const SocialNetwork& net, const ActionProfile& profile, const TieBreak& tie = {});
Outcome vcg_network(const SocialNetwork& net, const ActionProfile& profile,
                    const DiffusionAnalysis& analysis, const TieBreak& tie = {});

// Information diffusion mechanism. Walking the highest bidder's critical
// sequence from the seller's side, the item goes to the first member whose
// bid matches the best report available once her successor's dependent set
// drops out; members before the winner are paid the resale margin their
// relaying created. Revenue telescopes to the best report outside the first
// member's dependent set and is never negative.
Outcome idm(const SocialNetwork& net, const ActionProfile& profile, const TieBreak& tie = {});
Outcome idm(const SocialNetwork& net, const ActionProfile& profile, const DiffusionAnalysis& analysis,
            const TieBreak& tie = {});

// Recomputes the per-buyer labels implied by an IDM outcome. Pass the
// tie-break the outcome was produced with; throws when the outcome cannot
// have come from an IDM run on this profile.
std::vector<BuyerStatus> classify_buyers(const SocialNetwork& net, const ActionProfile& profile,
                                         const Outcome& idm_outcome, const TieBreak& tie = {});

// Highest report among participating buyers in `ids`, floored at the
// seller's reserve (which the default networks keep at zero).
Money max_report_among(const SocialNetwork& net, const ActionProfile& profile,
                       const std::vector<AgentId>& ids);

// Highest report among participants outside i's dependent set, floored at
// the seller's reserve: the best offer the seller could still see if i and
// everyone relying on i stayed silent.
Money best_report_outside(const SocialNetwork& net, const ActionProfile& profile,
                          const DiffusionAnalysis& analysis, AgentId i);

Money revenue(const Outcome& outcome);
Money welfare(const SocialNetwork& net, const Outcome& outcome);

// Buyer's quasilinear utility at this outcome, valued at her TRUE valuation.
// Throws std::out_of_range for unknown buyers.
Money utility(const SocialNetwork& net, AgentId buyer, const Outcome& outcome);

std::string_view to_string(MechanismKind kind);
std::string_view to_string(BuyerStatus status);
std::optional<MechanismKind> mechanism_from_string(std::string_view name);

}  // namespace diffauct
