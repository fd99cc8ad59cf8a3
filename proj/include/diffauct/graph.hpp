#pragma once

#include <string>
#include <utility>
#include <vector>

#include "diffauct/model.hpp"

namespace diffauct {

// Directed graph of reported information diffusion, rooted at the seller.
// The seller informs all her neighbors; every participating buyer points at
// the participants in her declared diffusion set. Buyers with null actions
// do not appear at all: they relay nothing and cannot sit on any diffusion
// path.
class DiffusionGraph {
public:
    AgentId root() const { return root_; }
    int agent_count() const { return static_cast<int>(out_.size()); }

    // Reported edges out of an agent (root or participant); empty for
    // non-participants.
    const std::vector<AgentId>& out_edges(AgentId id) const {
        return out_.at(static_cast<std::size_t>(id));
    }
    const std::vector<AgentId>& participants() const { return participants_; }
    bool participates(AgentId id) const {
        return id >= 0 && id < agent_count() && is_participant_[static_cast<std::size_t>(id)];
    }

private:
    friend DiffusionGraph build_diffusion_graph(const SocialNetwork&, const ActionProfile&);

    AgentId root_ = 0;
    std::vector<std::vector<AgentId>> out_;
    std::vector<AgentId> participants_;  // sorted
    std::vector<bool> is_participant_;
};

// Rejects infeasible profiles with std::invalid_argument.
DiffusionGraph build_diffusion_graph(const SocialNetwork& net, const ActionProfile& profile);

// Critical nodes of participant j, brute force: remove each other
// participant in turn and retest whether j stays reachable from the root.
// One reachability sweep per candidate.
std::vector<AgentId> critical_nodes_oracle(const DiffusionGraph& g, AgentId j);

// All participants at once; one sweep per removed node instead of per pair.
// Result indexed by agent id (empty vectors for non-participants).
std::vector<std::vector<AgentId>> critical_nodes_all_oracle(const DiffusionGraph& g);

// Critical-node structure of a diffusion graph, computed via the dominator
// tree of the rooted digraph: a buyer i is critical for j exactly when i
// properly dominates j. Immutable; cheap to query.
class DiffusionAnalysis {
public:
    const std::vector<AgentId>& participants() const { return participants_; }
    bool participates(AgentId id) const {
        return id >= 0 && id < n_ && tin_[static_cast<std::size_t>(id)] >= 0 && id != root_;
    }
    AgentId root() const { return root_; }

    // Immediate dominator (the root for participants nobody shields).
    AgentId idom(AgentId participant) const;

    // Critical sequence C_j: j's critical nodes ordered from the root side,
    // then j itself. Consecutive entries have strictly nested dependent sets.
    std::vector<AgentId> sequence(AgentId j) const;

    // C_j without the final j.
    std::vector<AgentId> critical_of(AgentId j) const;

    // Dependent set d_i: i plus every participant whose information access
    // depends on i. Sorted ascending.
    std::vector<AgentId> dependent_set(AgentId i) const;

    // j in d_i, in O(1). Both must participate.
    bool in_dependent_set(AgentId i, AgentId j) const;

    int dependent_count(AgentId i) const;

    // Throws std::invalid_argument unless `id` participates.
    void check_participant(AgentId id) const;

private:
    friend DiffusionAnalysis dominator_analysis(const DiffusionGraph&);

    AgentId root_ = 0;
    int n_ = 0;
    std::vector<AgentId> participants_;
    std::vector<AgentId> idom_;        // by id; -1 where undefined
    std::vector<int> tin_, tout_;      // Euler intervals on the dominator tree; -1 where absent
};

DiffusionAnalysis dominator_analysis(const DiffusionGraph& g);

// All buyers outside d_i, participants and non-participants alike.
std::vector<AgentId> dependent_set_without(const SocialNetwork& net, const DiffusionAnalysis& analysis,
                                           AgentId i);

// The reported edges that can actually carry fresh information: u->v is
// dropped when v is critical for u, because every execution informs v before
// u ever could. This is the picture one draws when sketching a diffusion by
// hand; critical-node structure is identical on both edge sets.
std::vector<std::pair<AgentId, AgentId>> information_flow_edges(const DiffusionGraph& g,
                                                                const DiffusionAnalysis& analysis);

// Graphviz exports for visual inspection. `labels` (one per agent id) is
// optional; ids are used when it is empty.
std::string to_dot(const DiffusionGraph& g, const DiffusionAnalysis& analysis,
                   const std::vector<std::string>& labels = {});
std::string dominator_tree_dot(const DiffusionAnalysis& analysis,
                               const std::vector<std::string>& labels = {});

}  // namespace diffauct
