#pragma once

#include <utility>
#include <vector>

#include "diffauct/model.hpp"

namespace diffauct::testing {

// Network from an undirected edge list; valuations[i] indexed by agent id
// (seller slot = reserve).
inline SocialNetwork make_net(AgentId seller, int n, const std::vector<std::pair<AgentId, AgentId>>& edges,
                              std::vector<Money> valuations) {
    std::vector<std::vector<AgentId>> adj(static_cast<std::size_t>(n));
    for (auto [a, b] : edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    return SocialNetwork(seller, std::move(adj), std::move(valuations));
}

inline std::vector<Money> whole_values(const std::vector<std::int64_t>& values) {
    std::vector<Money> out;
    for (auto v : values) out.push_back(Money::whole(v));
    return out;
}

// The twelve-buyer worked example: seller 0; A..L are ids 1..12.
// Chain side: C relays to I (and H), I shields J and L; D shields F, G, K.
inline SocialNetwork fig2_network() {
    return make_net(0, 13,
                    {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 5}, {3, 4}, {5, 4}, {4, 6},
                     {4, 7}, {7, 11}, {3, 8}, {3, 9}, {8, 9}, {9, 10}, {9, 12}, {10, 12}},
                    whole_values({0, 1, 2, 3, 4, 5, 6, 7, 11, 12, 8, 10, 13}));
}

inline constexpr AgentId kA = 1, kB = 2, kC = 3, kD = 4, kE = 5, kF = 6, kG = 7, kH = 8, kI = 9,
                         kJ = 10, kK = 11, kL = 12;

}  // namespace diffauct::testing
