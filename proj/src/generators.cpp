#include "diffauct/generators.hpp"

#include <stdexcept>

namespace diffauct {

namespace {

std::vector<Money> buyer_valuations(int n, AgentId seller, const std::vector<Money>& grid, Rng& rng) {
    std::vector<Money> values(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        if (i != seller) values[static_cast<std::size_t>(i)] = rng.pick(grid);
    return values;
}

void add_edge(std::vector<std::vector<AgentId>>& adj, AgentId a, AgentId b) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
}

bool has_edge(const std::vector<std::vector<AgentId>>& adj, AgentId a, AgentId b) {
    for (AgentId x : adj[static_cast<std::size_t>(a)])
        if (x == b) return true;
    return false;
}

std::vector<std::vector<AgentId>> er_adjacency(int n, double p, Rng& rng) {
    std::vector<std::vector<AgentId>> adj(static_cast<std::size_t>(n));
    for (AgentId a = 0; a < n; ++a)
        for (AgentId b = a + 1; b < n; ++b)
            if (rng.real01() < p) add_edge(adj, a, b);
    for (AgentId a = 0; a < n; ++a) {
        if (adj[static_cast<std::size_t>(a)].empty()) {
            AgentId b = static_cast<AgentId>(rng.below(n - 1));
            if (b >= a) ++b;
            add_edge(adj, a, b);
        }
    }
    return adj;
}

std::vector<std::vector<AgentId>> tree_adjacency(int n, Rng& rng) {
    std::vector<std::vector<AgentId>> adj(static_cast<std::size_t>(n));
    for (AgentId v = 1; v < n; ++v) add_edge(adj, v, static_cast<AgentId>(rng.below(v)));
    return adj;
}

}  // namespace

Rng::Rng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ULL) {}

std::uint64_t Rng::next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

int Rng::below(int n) {
    if (n <= 0) throw std::invalid_argument("Rng::below needs n > 0");
    return static_cast<int>(next() % static_cast<std::uint64_t>(n));
}

Money Rng::pick(const std::vector<Money>& grid) {
    if (grid.empty()) throw std::invalid_argument("empty valuation grid");
    return grid[static_cast<std::size_t>(below(static_cast<int>(grid.size())))];
}

SocialNetwork line_graph(int length) {
    std::vector<Money> values(static_cast<std::size_t>(length), Money());
    values.back() = Money::whole(1);
    return line_graph(length, std::move(values));
}

SocialNetwork line_graph(int length, std::vector<Money> values) {
    if (length < 1) throw std::invalid_argument("a line needs at least one buyer");
    if (static_cast<int>(values.size()) != length)
        throw std::invalid_argument("one valuation per buyer required");
    const int n = length + 1;
    std::vector<std::vector<AgentId>> adj(static_cast<std::size_t>(n));
    for (AgentId v = 1; v < n; ++v) add_edge(adj, v - 1, v);
    std::vector<Money> valuations(static_cast<std::size_t>(n));
    for (int i = 0; i < length; ++i) valuations[static_cast<std::size_t>(i + 1)] = values[static_cast<std::size_t>(i)];
    return SocialNetwork(0, std::move(adj), std::move(valuations));
}

SocialNetwork erdos_renyi_network(int n, double p, const std::vector<Money>& grid, Rng& rng) {
    if (n < 2) throw std::invalid_argument("need at least two agents");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("edge probability must be in [0, 1]");
    auto adj = er_adjacency(n, p, rng);
    auto values = buyer_valuations(n, 0, grid, rng);
    return SocialNetwork(0, std::move(adj), std::move(values));
}

SocialNetwork erdos_renyi_connected_network(int n, double p, const std::vector<Money>& grid, Rng& rng) {
    if (n < 2) throw std::invalid_argument("need at least two agents");
    for (int attempt = 0; attempt < 64; ++attempt) {
        auto adj = er_adjacency(n, p, rng);
        if (is_connected_from(adj, 0)) {
            auto values = buyer_valuations(n, 0, grid, rng);
            return SocialNetwork(0, std::move(adj), std::move(values));
        }
    }
    auto adj = er_adjacency(n, p, rng);
    for (AgentId v = 1; v < n; ++v) {
        AgentId u = static_cast<AgentId>(rng.below(v));
        if (!has_edge(adj, u, v)) add_edge(adj, u, v);
    }
    auto values = buyer_valuations(n, 0, grid, rng);
    return SocialNetwork(0, std::move(adj), std::move(values));
}

SocialNetwork random_tree_network(int n, const std::vector<Money>& grid, Rng& rng) {
    if (n < 2) throw std::invalid_argument("need at least two agents");
    auto adj = tree_adjacency(n, rng);
    auto values = buyer_valuations(n, 0, grid, rng);
    return SocialNetwork(0, std::move(adj), std::move(values));
}

std::vector<Money> integer_grid(int vmax) {
    if (vmax < 0) throw std::invalid_argument("vmax must be non-negative");
    std::vector<Money> grid;
    for (int v = 0; v <= vmax; ++v) grid.push_back(Money::whole(v));
    return grid;
}

bool is_connected_from(const std::vector<std::vector<AgentId>>& adjacency, AgentId start) {
    const auto n = adjacency.size();
    std::vector<bool> seen(n, false);
    std::vector<AgentId> queue{start};
    seen[static_cast<std::size_t>(start)] = true;
    std::size_t reached = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (AgentId j : adjacency[static_cast<std::size_t>(queue[head])]) {
            if (!seen[static_cast<std::size_t>(j)]) {
                seen[static_cast<std::size_t>(j)] = true;
                ++reached;
                queue.push_back(j);
            }
        }
    }
    return reached == n;
}

}  // namespace diffauct
