#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "diffauct/generators.hpp"
#include "diffauct/mechanisms.hpp"

namespace diffauct {

// Finite slice of a buyer's action space explored by the property checkers.
// The bid list presented to a buyer is the grid extended with her true
// valuation, every rival's bid, the midpoints between consecutive values and
// one value above the maximum, so every allocation boundary is crossed.
struct DeviationSpace {
    std::vector<Money> valuation_grid;

    enum class DiffusionMode { AllSubsets, SampledSubsets };
    DiffusionMode diffusion_mode = DiffusionMode::AllSubsets;
    int subset_samples = 0;  // for SampledSubsets

    bool include_null = true;
    bool add_midpoints = true;

    // Rival profiles checked besides the truthful one (drawn from
    // grid x subsets plus occasional null actions).
    int sampled_other_profiles = 0;
    std::uint64_t seed = 0;

    static DeviationSpace exhaustive(std::vector<Money> grid) {
        DeviationSpace s;
        s.valuation_grid = std::move(grid);
        return s;
    }
};

// One concrete violation. `buyer` is -1 for profile-level findings (e.g. a
// negative-revenue profile); `deviation` is set for findings produced by a
// deviation search.
struct Counterexample {
    SocialNetwork net;
    ActionProfile profile;  // intended actions the finding was evaluated against
    AgentId buyer = -1;
    std::optional<Action> deviation;
    Money baseline_value{};
    Money observed_value{};
    std::string note;
};

struct VerificationReport {
    std::string property;
    std::string mechanism;
    std::uint64_t instances_checked = 0;
    std::uint64_t deviations_checked = 0;
    std::uint64_t violations = 0;
    // Utility movement of checked deviations relative to the baseline.
    std::uint64_t improving = 0, neutral = 0, decreasing = 0;
    bool partial = false;  // a resource bound cut the run short
    std::vector<Counterexample> counterexamples;  // capped; `violations` keeps the true count

    static constexpr std::size_t kCounterexampleCap = 16;

    bool passed() const { return violations == 0; }
    void record(Counterexample ce);
    void merge(VerificationReport&& other);
};

using MechanismFn = std::function<Outcome(const SocialNetwork&, const ActionProfile&)>;

// Individual rationality on one network: truthful bid, every diffusion
// choice, rivals truthful (plus sampled rival profiles when configured);
// utility must never go negative.
VerificationReport check_ir(const SocialNetwork& net, MechanismKind kind, const DeviationSpace& space);

// Incentive compatibility on one network: every enumerated unilateral
// deviation, with the rival profile re-feasibilized after the change, must
// not beat the truthful action.
VerificationReport check_ic(const SocialNetwork& net, MechanismKind kind, const DeviationSpace& space);

// Same engine against an arbitrary mechanism; used to validate that the
// checker actually finds violations when they exist.
VerificationReport check_ic_fn(const SocialNetwork& net, const std::string& mechanism_name,
                               const MechanismFn& mechanism, const DeviationSpace& space);
VerificationReport check_ir_fn(const SocialNetwork& net, const std::string& mechanism_name,
                               const MechanismFn& mechanism, const DeviationSpace& space);

// Random action profiles: independent bids from the grid, uniform diffusion
// subsets, occasional null actions; always feasibility-transformed.
struct ProfileSampler {
    std::vector<Money> bid_grid;
    double null_probability = 0.15;

    ActionProfile sample(const SocialNetwork& net, Rng& rng) const;
    // Intended actions before the feasibility transform.
    ActionProfile sample_intended(const SocialNetwork& net, Rng& rng) const;
};

// Weak budget balance under sampled profiles. Violations are recorded either
// way; IDM is expected to show none, network VCG many.
VerificationReport check_wbb(const SocialNetwork& net, MechanismKind kind, const ProfileSampler& sampler,
                             int trials, std::uint64_t seed);

// Budget balance across sampled networks (alternating connected G(n,p) and
// random trees) and sampled profiles.
VerificationReport check_wbb_random(MechanismKind kind, int trials, int n_max,
                                    const std::vector<Money>& grid, std::uint64_t seed);

// All three mechanisms on one feasible profile.
struct RevenueComparison {
    Money idm_revenue, vcg_revenue, spl_revenue;
    Money idm_welfare, vcg_welfare, spl_welfare;
    // Best report outside the first chain member's dependent set; IDM's
    // revenue must equal it exactly.
    Money idm_identity{};
    bool identity_holds = true;
    bool dominates_vcg = true;
    bool dominates_spl = true;
    bool welfare_dominates_spl = true;
    bool weakly_budget_balanced = true;

    bool all_hold() const {
        return identity_holds && dominates_vcg && dominates_spl && welfare_dominates_spl &&
               weakly_budget_balanced;
    }
};

RevenueComparison check_revenue_dominance(const SocialNetwork& net, const ActionProfile& profile);

// Revenue dominance + budget balance + the telescoping identity on truthful
// profiles of sampled networks.
VerificationReport check_dominance_random(int trials, int n_max, const std::vector<Money>& grid,
                                          std::uint64_t seed);

// Critical-node structure from the dominator computation vs. the
// node-removal oracle, on sampled feasible profiles.
VerificationReport check_oracle_equivalence(int trials, int n_max, std::uint64_t seed);

// Every connected undirected graph on n agents (agent 0 is the seller),
// enumerated in a fixed order. n is capped at 8 to keep exhaustion sane.
std::vector<std::vector<std::vector<AgentId>>> connected_adjacencies(int n, int seller_min_degree = 1);

// Streams every (graph, valuation assignment) pair for 2..n_max agents.
void for_each_network(int n_max, const std::vector<Money>& grid, int seller_min_degree,
                      const std::function<void(const SocialNetwork&)>& fn);

std::uint64_t count_networks(int n_max, int grid_size, int seller_min_degree = 1);

// The exhaustive desk-scale property check: every connected network up to
// n_max agents, every valuation assignment from the grid, every buyer, every
// deviation. Checks IC and IR for both IDM and network VCG, zero-utility
// neutrality of unlucky buyers, and dependent-set growth under larger
// diffusion sets.
struct SweepOptions {
    int n_max = 5;
    std::vector<Money> grid;
    int seller_min_degree = 1;
    bool add_midpoints = true;
    int threads = 0;             // 0: DIFFAUCT_THREADS env or hardware count
    double budget_seconds = 0;   // 0: unbounded
    // Every differential_stride-th instance is re-evaluated through the
    // general-purpose mechanism path and compared.
    std::uint64_t differential_stride = 509;
};

struct SweepResult {
    std::uint64_t networks = 0;
    std::uint64_t instances = 0;
    std::uint64_t deviations = 0;
    bool partial = false;
    VerificationReport ic_idm, ic_vcg, ir_idm, ir_vcg, unlucky_neutral, dset_monotone;

    bool all_passed() const {
        return ic_idm.passed() && ic_vcg.passed() && ir_idm.passed() && ir_vcg.passed() &&
               unlucky_neutral.passed() && dset_monotone.passed();
    }
};

SweepResult exhaustive_sweep(const SweepOptions& options);

// Greedy shrink of a deviation finding: drop agents, then edges, then lower
// valuations toward the grid minimum, keeping the violation alive.
Counterexample minimize_counterexample(const Counterexample& ce, const MechanismFn& mechanism,
                                       const std::vector<Money>& grid);

int default_thread_count();

}  // namespace diffauct
