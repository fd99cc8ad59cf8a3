#pragma once

#include <cstdint>

#include "diffauct/model.hpp"

namespace diffauct::detail {

// Fixed-size engine for exhaustive sweeps over tiny instances: agent sets
// are bitmasks, amounts are raw Money units, nothing allocates. Mirrors the
// general pipeline (transform, critical analysis, mechanisms) step for step
// and is differential-tested against it during every sweep.
inline constexpr int kSmallMax = 12;

struct SmallNet {
    int n = 0;
    int seller = 0;
    std::uint32_t adj[kSmallMax]{};    // undirected neighbor masks
    std::int64_t value[kSmallMax]{};   // true valuations in units; seller slot = reserve
    std::uint32_t buyers = 0;

    static SmallNet from(const SocialNetwork& net);
};

struct SmallProfile {
    std::uint32_t participating = 0;   // buyers holding a non-null action
    std::int64_t bid[kSmallMax]{};
    std::uint32_t relay[kSmallMax]{};  // declared diffusion targets
};

SmallProfile small_truthful(const SmallNet& net);

// Buyers the information reaches; `removed` nodes neither receive nor relay.
std::uint32_t small_informed(const SmallNet& net, const SmallProfile& p, std::uint32_t removed);

// Nulls every unreachable participant, in place.
void small_transform(const SmallNet& net, SmallProfile& p);

struct SmallAnalysis {
    std::uint32_t participants = 0;
    std::uint32_t critical[kSmallMax]{};    // critical[j]: critical nodes of j
    std::uint32_t dependents[kSmallMax]{};  // dependents[i]: d_i
};

// Node-removal sweeps; the profile must already be transformed.
void small_analyze(const SmallNet& net, const SmallProfile& p, SmallAnalysis& a);

struct SmallOutcome {
    int winner = -1;
    std::int64_t payment[kSmallMax]{};
    std::int64_t revenue = 0;
    std::uint32_t unlucky = 0;  // set by small_idm
};

void small_idm(const SmallNet& net, const SmallProfile& p, const SmallAnalysis& a, SmallOutcome& out);
void small_vcg(const SmallNet& net, const SmallProfile& p, const SmallAnalysis& a, SmallOutcome& out);

inline std::int64_t small_utility(const SmallNet& net, const SmallOutcome& out, int buyer) {
    return (out.winner == buyer ? net.value[buyer] : 0) - out.payment[buyer];
}

// Bridges back to the general representation, for differential checks and
// counterexample reporting.
ActionProfile small_to_profile(const SmallNet& net, const SmallProfile& p);

}  // namespace diffauct::detail
