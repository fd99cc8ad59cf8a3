#pragma once

#include <cstdint>
#include <vector>

#include "diffauct/model.hpp"

namespace diffauct {

// Deterministic random source with stdlib-independent derived draws, so
// generated instances are identical across platforms for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    std::uint64_t next();
    double real01();                  // uniform in [0, 1), 53 bits
    int below(int n);                 // uniform in [0, n)
    Money pick(const std::vector<Money>& grid);

private:
    std::uint64_t state_;
};

// Seller at one end of a path of `length` buyers. Default valuations are the
// worst case for network VCG: zero everywhere except the far end, which
// values the item at 1.
SocialNetwork line_graph(int length);
SocialNetwork line_graph(int length, std::vector<Money> values);

// G(n, p) over all agents, seller = 0. Isolated agents are attached to a
// random other agent so every neighbor set is non-empty; the graph may still
// be disconnected. Buyer valuations are drawn uniformly from `grid`.
SocialNetwork erdos_renyi_network(int n, double p, const std::vector<Money>& grid, Rng& rng);

// Same, resampled until connected (a uniform spanning tree is overlaid in
// the unlikely event p is too small to connect within the retry budget).
SocialNetwork erdos_renyi_connected_network(int n, double p, const std::vector<Money>& grid, Rng& rng);

// Uniform random attachment tree on n agents, seller = 0; always connected.
SocialNetwork random_tree_network(int n, const std::vector<Money>& grid, Rng& rng);

bool is_connected_from(const std::vector<std::vector<AgentId>>& adjacency, AgentId start);

// Grid {0, 1, ..., vmax} in whole currency units.
std::vector<Money> integer_grid(int vmax);

}  // namespace diffauct
