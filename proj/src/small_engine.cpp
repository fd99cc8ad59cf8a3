#include "diffauct/detail/small_engine.hpp"

#include <bit>
#include <stdexcept>

namespace diffauct::detail {

namespace {

inline std::uint32_t bit(int i) { return std::uint32_t{1} << i; }

// Highest bidder among `mask`, lowest id on ties; -1 when empty.
int small_top_bidder(const SmallProfile& p, std::uint32_t mask) {
    int best = -1;
    for (std::uint32_t m = mask; m; m &= m - 1) {
        int i = std::countr_zero(m);
        if (best == -1 || p.bid[i] > p.bid[best]) best = i;
    }
    return best;
}

std::int64_t best_outside(const SmallNet& net, const SmallProfile& p, std::uint32_t excluded) {
    std::int64_t best = net.value[net.seller];  // the reserve
    for (std::uint32_t m = p.participating & ~excluded; m; m &= m - 1) {
        int i = std::countr_zero(m);
        if (p.bid[i] > best) best = p.bid[i];
    }
    return best;
}

}  // namespace

SmallNet SmallNet::from(const SocialNetwork& net) {
    if (net.agent_count() > kSmallMax)
        throw std::invalid_argument("small engine supports up to 12 agents");
    SmallNet out;
    out.n = net.agent_count();
    out.seller = net.seller();
    out.value[out.seller] = net.seller_reserve().units();
    for (int i = 0; i < out.n; ++i) {
        for (AgentId j : net.neighbors(i)) out.adj[i] |= bit(j);
        if (i != out.seller) {
            out.value[i] = net.valuation(i).units();
            out.buyers |= bit(i);
        }
    }
    return out;
}

SmallProfile small_truthful(const SmallNet& net) {
    SmallProfile p;
    p.participating = net.buyers;
    for (std::uint32_t m = net.buyers; m; m &= m - 1) {
        int i = std::countr_zero(m);
        p.bid[i] = net.value[i];
        p.relay[i] = net.adj[i];
    }
    return p;
}

std::uint32_t small_informed(const SmallNet& net, const SmallProfile& p, std::uint32_t removed) {
    std::uint32_t informed = net.adj[net.seller] & net.buyers & ~removed;
    while (true) {
        std::uint32_t next = informed;
        for (std::uint32_t m = informed & p.participating; m; m &= m - 1) {
            int i = std::countr_zero(m);
            next |= p.relay[i] & net.buyers & ~removed;
        }
        if (next == informed) return informed;
        informed = next;
    }
}

void small_transform(const SmallNet& net, SmallProfile& p) {
    p.participating &= small_informed(net, p, 0);
}

void small_analyze(const SmallNet& net, const SmallProfile& p, SmallAnalysis& a) {
    a.participants = p.participating;
    for (std::uint32_t m = a.participants; m; m &= m - 1) a.critical[std::countr_zero(m)] = 0;
    for (std::uint32_t m = a.participants; m; m &= m - 1) {
        int x = std::countr_zero(m);
        std::uint32_t reached = small_informed(net, p, bit(x));
        for (std::uint32_t cut = a.participants & ~reached & ~bit(x); cut; cut &= cut - 1)
            a.critical[std::countr_zero(cut)] |= bit(x);
    }
    for (std::uint32_t m = a.participants; m; m &= m - 1) a.dependents[std::countr_zero(m)] = m & -m;
    for (std::uint32_t m = a.participants; m; m &= m - 1) {
        int j = std::countr_zero(m);
        for (std::uint32_t c = a.critical[j]; c; c &= c - 1) a.dependents[std::countr_zero(c)] |= bit(j);
    }
}

void small_idm(const SmallNet& net, const SmallProfile& p, const SmallAnalysis& a, SmallOutcome& out) {
    out = SmallOutcome{};
    if (!a.participants) return;
    int m = small_top_bidder(p, a.participants);

    // Critical sequence of the top bidder, ordered root side first: strict
    // dependent-set nesting makes the dependent counts strictly decreasing.
    int chain[kSmallMax];
    int k = 0;
    for (std::uint32_t c = a.critical[m] | bit(m); c; c &= c - 1) chain[k++] = std::countr_zero(c);
    for (int i = 1; i < k; ++i) {
        int v = chain[i];
        int j = i - 1;
        while (j >= 0 &&
               std::popcount(a.dependents[chain[j]]) < std::popcount(a.dependents[v])) {
            chain[j + 1] = chain[j];
            --j;
        }
        chain[j + 1] = v;
    }

    std::int64_t outside[kSmallMax];
    for (int t = 0; t < k; ++t) outside[t] = best_outside(net, p, a.dependents[chain[t]]);

    int winner_pos = k - 1;
    for (int t = 0; t + 1 < k; ++t) {
        if (p.bid[chain[t]] == outside[t + 1]) {
            winner_pos = t;
            break;
        }
    }

    out.winner = chain[winner_pos];
    for (int t = 0; t < winner_pos; ++t) {
        out.payment[chain[t]] = outside[t] - outside[t + 1];
        out.revenue += out.payment[chain[t]];
    }
    out.payment[out.winner] = outside[winner_pos];
    out.revenue += out.payment[out.winner];
    out.unlucky = winner_pos + 1 < k ? a.dependents[chain[winner_pos + 1]]
                                     : a.dependents[m] & ~bit(m);
}

void small_vcg(const SmallNet& net, const SmallProfile& p, const SmallAnalysis& a, SmallOutcome& out) {
    out = SmallOutcome{};
    if (!a.participants) return;
    int m = small_top_bidder(p, a.participants);
    std::int64_t top = p.bid[m];
    out.winner = m;
    for (std::uint32_t mask = a.participants; mask; mask &= mask - 1) {
        int i = std::countr_zero(mask);
        out.payment[i] = best_outside(net, p, a.dependents[i]) - (i == m ? 0 : top);
        out.revenue += out.payment[i];
    }
}

ActionProfile small_to_profile(const SmallNet& net, const SmallProfile& p) {
    ActionProfile profile;
    profile.actions.resize(static_cast<std::size_t>(net.n));
    for (std::uint32_t m = p.participating; m; m &= m - 1) {
        int i = std::countr_zero(m);
        std::vector<AgentId> relay;
        for (std::uint32_t r = p.relay[i]; r; r &= r - 1) relay.push_back(std::countr_zero(r));
        profile.actions[static_cast<std::size_t>(i)] = Action(Money::from_units(p.bid[i]), std::move(relay));
    }
    return profile;
}

}  // namespace diffauct::detail
