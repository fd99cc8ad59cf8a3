#include "diffauct/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace diffauct {

namespace {

void sort_unique(std::vector<AgentId>& ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

}  // namespace

SocialNetwork::SocialNetwork(AgentId seller, std::vector<std::vector<AgentId>> neighbors,
                             std::vector<Money> valuations)
    : seller_(seller), neighbors_(std::move(neighbors)), valuations_(std::move(valuations)) {
    const int n = agent_count();
    if (n < 2) throw std::invalid_argument("network needs the seller and at least one buyer");
    if (seller_ < 0 || seller_ >= n) throw std::invalid_argument("seller id out of range");
    if (static_cast<int>(valuations_.size()) != n)
        throw std::invalid_argument("one valuation per agent required");
    for (int i = 0; i < n; ++i) {
        auto& nbrs = neighbors_[static_cast<std::size_t>(i)];
        sort_unique(nbrs);
        if (nbrs.empty()) throw std::invalid_argument("agent " + std::to_string(i) + " has no neighbors");
        for (AgentId j : nbrs) {
            if (j < 0 || j >= n) throw std::invalid_argument("neighbor id out of range");
            if (j == i) throw std::invalid_argument("self-loop at agent " + std::to_string(i));
        }
        if (valuations_[static_cast<std::size_t>(i)].is_negative())
            throw std::invalid_argument("negative valuation for agent " + std::to_string(i));
    }
    for (int i = 0; i < n; ++i)
        for (AgentId j : neighbors_[static_cast<std::size_t>(i)])
            if (!std::binary_search(neighbors_[static_cast<std::size_t>(j)].begin(),
                                    neighbors_[static_cast<std::size_t>(j)].end(), i))
                throw std::invalid_argument("neighbor relation is not symmetric: " + std::to_string(i) +
                                            " lists " + std::to_string(j) + " but not vice versa");
}

const std::vector<AgentId>& SocialNetwork::neighbors(AgentId id) const {
    return neighbors_.at(static_cast<std::size_t>(id));
}

bool SocialNetwork::has_edge(AgentId a, AgentId b) const {
    const auto& nbrs = neighbors(a);
    return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

Money SocialNetwork::valuation(AgentId buyer) const {
    if (!is_buyer(buyer)) throw std::out_of_range("no such buyer: " + std::to_string(buyer));
    return valuations_[static_cast<std::size_t>(buyer)];
}

Action::Action(Money bid, std::vector<AgentId> diffusion_set)
    : null_(false), bid_(bid), diffusion_(std::move(diffusion_set)) {
    if (bid_.is_negative()) throw std::invalid_argument("bids must be non-negative");
    sort_unique(diffusion_);
}

Money Action::bid() const {
    if (null_) throw std::logic_error("null action has no bid");
    return bid_;
}

const std::vector<AgentId>& Action::diffusion_set() const {
    if (null_) throw std::logic_error("null action has no diffusion set");
    return diffusion_;
}

void validate_profile(const SocialNetwork& net, const ActionProfile& profile) {
    if (static_cast<int>(profile.actions.size()) != net.agent_count())
        throw std::invalid_argument("profile must hold one action per agent");
    if (!profile.of(net.seller()).is_null())
        throw std::invalid_argument("the seller takes no action");
    for (AgentId i = 0; i < net.agent_count(); ++i) {
        const Action& a = profile.actions[static_cast<std::size_t>(i)];
        if (a.is_null()) continue;
        const auto& allowed = net.neighbors(i);
        for (AgentId j : a.diffusion_set())
            if (!std::binary_search(allowed.begin(), allowed.end(), j))
                throw std::invalid_argument("buyer " + std::to_string(i) +
                                            " relays to a non-neighbor " + std::to_string(j));
    }
}

std::vector<bool> informed_buyers(const SocialNetwork& net, const ActionProfile& profile) {
    const int n = net.agent_count();
    std::vector<bool> informed(static_cast<std::size_t>(n), false);
    std::vector<AgentId> queue;
    queue.reserve(static_cast<std::size_t>(n));
    for (AgentId j : net.neighbors(net.seller())) {
        if (!informed[static_cast<std::size_t>(j)]) {
            informed[static_cast<std::size_t>(j)] = true;
            queue.push_back(j);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const Action& a = profile.of(queue[head]);
        if (a.is_null()) continue;  // an absent buyer relays nothing
        for (AgentId j : a.diffusion_set()) {
            if (j == net.seller()) continue;
            if (!informed[static_cast<std::size_t>(j)]) {
                informed[static_cast<std::size_t>(j)] = true;
                queue.push_back(j);
            }
        }
    }
    return informed;
}

ActionProfile truthful_profile(const SocialNetwork& net) {
    ActionProfile profile;
    profile.actions.resize(static_cast<std::size_t>(net.agent_count()));
    for (AgentId i = 0; i < net.agent_count(); ++i) {
        if (i == net.seller()) continue;
        profile.actions[static_cast<std::size_t>(i)] = Action(net.valuation(i), net.neighbors(i));
    }
    return feasibility_transform(net, profile);
}

ActionProfile feasibility_transform(const SocialNetwork& net, const ActionProfile& profile) {
    validate_profile(net, profile);
    std::vector<bool> informed = informed_buyers(net, profile);
    ActionProfile out = profile;
    for (AgentId i = 0; i < net.agent_count(); ++i)
        if (i != net.seller() && !informed[static_cast<std::size_t>(i)])
            out.actions[static_cast<std::size_t>(i)] = Action();
    return out;
}

bool is_feasible(const SocialNetwork& net, const ActionProfile& profile) {
    validate_profile(net, profile);
    std::vector<bool> informed = informed_buyers(net, profile);
    for (AgentId i = 0; i < net.agent_count(); ++i)
        if (i != net.seller() && !profile.of(i).is_null() && !informed[static_cast<std::size_t>(i)])
            return false;
    return true;
}

Money quasilinear_utility(const SocialNetwork& net, AgentId buyer, bool allocated, Money payment) {
    Money value = allocated ? net.valuation(buyer) : Money();
    return value - payment;
}

}  // namespace diffauct
