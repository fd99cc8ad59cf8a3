#pragma once

#include <vector>

#include "diffauct/money.hpp"

namespace diffauct {

using AgentId = int;

// The true state of the world: an undirected communication network, one
// seller holding the item, and one private valuation per buyer. Agents are
// indexed 0..n-1. Immutable after construction; safe to share across
// threads.
class SocialNetwork {
public:
    // `neighbors[i]` is agent i's neighbor set (order irrelevant, stored
    // sorted); `valuations[i]` is buyer i's true valuation, and the seller's
    // entry is her reserve price. Throws std::invalid_argument when the
    // relation is not symmetric/irreflexive, when any agent has no neighbor,
    // or when any valuation is negative.
    SocialNetwork(AgentId seller, std::vector<std::vector<AgentId>> neighbors,
                  std::vector<Money> valuations);

    int agent_count() const { return static_cast<int>(neighbors_.size()); }
    int buyer_count() const { return agent_count() - 1; }
    AgentId seller() const { return seller_; }
    bool is_buyer(AgentId id) const { return id >= 0 && id < agent_count() && id != seller_; }

    const std::vector<AgentId>& neighbors(AgentId id) const;
    bool has_edge(AgentId a, AgentId b) const;

    // True valuation of a buyer; throws std::out_of_range for the seller or
    // an unknown id.
    Money valuation(AgentId buyer) const;
    Money seller_reserve() const { return valuations_[seller_]; }

    bool operator==(const SocialNetwork&) const = default;

private:
    AgentId seller_;
    std::vector<std::vector<AgentId>> neighbors_;
    std::vector<Money> valuations_;
};

// A buyer's declared action: nothing at all (the buyer stays out or never
// learned of the auction), or a bid together with the set of neighbors she
// relays the auction information to.
class Action {
public:
    Action() = default;  // the null action
    Action(Money bid, std::vector<AgentId> diffusion_set);

    bool is_null() const { return null_; }
    Money bid() const;
    const std::vector<AgentId>& diffusion_set() const;

    bool operator==(const Action&) const = default;

private:
    bool null_ = true;
    Money bid_{};
    std::vector<AgentId> diffusion_{};  // sorted
};

// One action per agent, indexed by id. The seller's slot stays null (she is
// not a strategic participant).
struct ActionProfile {
    std::vector<Action> actions;

    const Action& of(AgentId id) const { return actions.at(static_cast<std::size_t>(id)); }
    bool operator==(const ActionProfile&) const = default;
};

// Checks that the profile's shape matches the network: one entry per agent,
// null seller slot, non-negative bids, diffusion sets within the buyer's
// true neighbor set. Throws std::invalid_argument otherwise.
void validate_profile(const SocialNetwork& net, const ActionProfile& profile);

// The set of buyers the auction information reaches: the seller informs all
// her neighbors, and every informed buyer with a non-null action informs her
// declared diffusion set. Indexed by agent id (seller entry false).
std::vector<bool> informed_buyers(const SocialNetwork& net, const ActionProfile& profile);

// Every buyer bids her true valuation and relays to all her neighbors;
// buyers the information cannot reach are forced to null.
ActionProfile truthful_profile(const SocialNetwork& net);

// Forces every unreachable buyer's action to null and leaves the rest
// untouched. Idempotent; the identity on feasible profiles.
ActionProfile feasibility_transform(const SocialNetwork& net, const ActionProfile& profile);

// True when every buyer holding a non-null action is reachable, i.e. the
// profile is a fixed point of feasibility_transform.
bool is_feasible(const SocialNetwork& net, const ActionProfile& profile);

// Quasilinear utility: allocation * true valuation - payment.
Money quasilinear_utility(const SocialNetwork& net, AgentId buyer, bool allocated, Money payment);

}  // namespace diffauct
