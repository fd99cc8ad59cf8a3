#include "diffauct/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace diffauct {

namespace {

std::string label_of(AgentId id, const std::vector<std::string>& labels) {
    if (id >= 0 && static_cast<std::size_t>(id) < labels.size() && !labels[static_cast<std::size_t>(id)].empty())
        return labels[static_cast<std::size_t>(id)];
    return std::to_string(id);
}

// Reachability from the root, optionally with one node removed.
void reach_from_root(const DiffusionGraph& g, AgentId removed, std::vector<bool>& seen,
                     std::vector<AgentId>& queue) {
    std::fill(seen.begin(), seen.end(), false);
    queue.clear();
    seen[static_cast<std::size_t>(g.root())] = true;
    queue.push_back(g.root());
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (AgentId j : g.out_edges(queue[head])) {
            if (j == removed || seen[static_cast<std::size_t>(j)]) continue;
            seen[static_cast<std::size_t>(j)] = true;
            queue.push_back(j);
        }
    }
}

}  // namespace

DiffusionGraph build_diffusion_graph(const SocialNetwork& net, const ActionProfile& profile) {
    if (!is_feasible(net, profile))
        throw std::invalid_argument("diffusion graph requires a feasible action profile");
    const int n = net.agent_count();
    DiffusionGraph g;
    g.root_ = net.seller();
    g.out_.resize(static_cast<std::size_t>(n));
    g.is_participant_.assign(static_cast<std::size_t>(n), false);
    for (AgentId i = 0; i < n; ++i) {
        if (i == net.seller() || profile.of(i).is_null()) continue;
        g.is_participant_[static_cast<std::size_t>(i)] = true;
        g.participants_.push_back(i);
    }
    for (AgentId j : net.neighbors(net.seller()))
        if (g.is_participant_[static_cast<std::size_t>(j)])
            g.out_[static_cast<std::size_t>(net.seller())].push_back(j);
    for (AgentId i : g.participants_)
        for (AgentId j : profile.of(i).diffusion_set())
            if (j != net.seller() && g.is_participant_[static_cast<std::size_t>(j)])
                g.out_[static_cast<std::size_t>(i)].push_back(j);
    return g;
}

std::vector<AgentId> critical_nodes_oracle(const DiffusionGraph& g, AgentId j) {
    if (!g.participates(j)) throw std::invalid_argument("critical nodes are defined for participants only");
    std::vector<bool> seen(static_cast<std::size_t>(g.agent_count()));
    std::vector<AgentId> queue;
    std::vector<AgentId> critical;
    for (AgentId i : g.participants()) {
        if (i == j) continue;
        reach_from_root(g, i, seen, queue);
        if (!seen[static_cast<std::size_t>(j)]) critical.push_back(i);
    }
    return critical;
}

std::vector<std::vector<AgentId>> critical_nodes_all_oracle(const DiffusionGraph& g) {
    std::vector<std::vector<AgentId>> critical(static_cast<std::size_t>(g.agent_count()));
    std::vector<bool> seen(static_cast<std::size_t>(g.agent_count()));
    std::vector<AgentId> queue;
    for (AgentId removed : g.participants()) {
        reach_from_root(g, removed, seen, queue);
        for (AgentId j : g.participants())
            if (j != removed && !seen[static_cast<std::size_t>(j)])
                critical[static_cast<std::size_t>(j)].push_back(removed);
    }
    return critical;
}

DiffusionAnalysis dominator_analysis(const DiffusionGraph& g) {
    const int n = g.agent_count();
    const AgentId root = g.root();

    // Reverse postorder over the rooted digraph (iterative DFS).
    std::vector<int> rpo_index(static_cast<std::size_t>(n), -1);
    std::vector<AgentId> order;  // postorder
    {
        std::vector<std::size_t> edge_pos(static_cast<std::size_t>(n), 0);
        std::vector<bool> visited(static_cast<std::size_t>(n), false);
        std::vector<AgentId> stack{root};
        visited[static_cast<std::size_t>(root)] = true;
        while (!stack.empty()) {
            AgentId v = stack.back();
            auto& pos = edge_pos[static_cast<std::size_t>(v)];
            const auto& out = g.out_edges(v);
            if (pos < out.size()) {
                AgentId w = out[pos++];
                if (!visited[static_cast<std::size_t>(w)]) {
                    visited[static_cast<std::size_t>(w)] = true;
                    stack.push_back(w);
                }
            } else {
                order.push_back(v);
                stack.pop_back();
            }
        }
    }
    std::reverse(order.begin(), order.end());  // now reverse postorder, root first
    for (std::size_t k = 0; k < order.size(); ++k)
        rpo_index[static_cast<std::size_t>(order[k])] = static_cast<int>(k);

    // Predecessor lists restricted to reachable vertices.
    std::vector<std::vector<AgentId>> preds(static_cast<std::size_t>(n));
    for (AgentId v : order)
        for (AgentId w : g.out_edges(v)) preds[static_cast<std::size_t>(w)].push_back(v);

    // Iterative dominator computation over reverse postorder.
    std::vector<AgentId> idom(static_cast<std::size_t>(n), -1);
    idom[static_cast<std::size_t>(root)] = root;
    auto intersect = [&](AgentId a, AgentId b) {
        while (a != b) {
            while (rpo_index[static_cast<std::size_t>(a)] > rpo_index[static_cast<std::size_t>(b)])
                a = idom[static_cast<std::size_t>(a)];
            while (rpo_index[static_cast<std::size_t>(b)] > rpo_index[static_cast<std::size_t>(a)])
                b = idom[static_cast<std::size_t>(b)];
        }
        return a;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (AgentId v : order) {
            if (v == root) continue;
            AgentId best = -1;
            for (AgentId p : preds[static_cast<std::size_t>(v)]) {
                if (idom[static_cast<std::size_t>(p)] == -1) continue;
                best = best == -1 ? p : intersect(p, best);
            }
            if (best != -1 && idom[static_cast<std::size_t>(v)] != best) {
                idom[static_cast<std::size_t>(v)] = best;
                changed = true;
            }
        }
    }

    // Euler intervals on the dominator tree give O(1) dependent-set tests.
    std::vector<std::vector<AgentId>> children(static_cast<std::size_t>(n));
    for (AgentId v : order)
        if (v != root) children[static_cast<std::size_t>(idom[static_cast<std::size_t>(v)])].push_back(v);

    DiffusionAnalysis analysis;
    analysis.root_ = root;
    analysis.n_ = n;
    analysis.participants_ = g.participants();
    analysis.idom_ = std::move(idom);
    analysis.tin_.assign(static_cast<std::size_t>(n), -1);
    analysis.tout_.assign(static_cast<std::size_t>(n), -1);
    {
        int clock = 0;
        std::vector<std::pair<AgentId, std::size_t>> stack{{root, 0}};
        analysis.tin_[static_cast<std::size_t>(root)] = clock++;
        while (!stack.empty()) {
            auto& [v, pos] = stack.back();
            auto& kids = children[static_cast<std::size_t>(v)];
            if (pos < kids.size()) {
                AgentId w = kids[pos++];
                analysis.tin_[static_cast<std::size_t>(w)] = clock++;
                stack.emplace_back(w, 0);
            } else {
                analysis.tout_[static_cast<std::size_t>(v)] = clock++;
                stack.pop_back();
            }
        }
    }
    return analysis;
}

void DiffusionAnalysis::check_participant(AgentId id) const {
    if (!participates(id))
        throw std::invalid_argument("agent " + std::to_string(id) + " does not participate");
}

AgentId DiffusionAnalysis::idom(AgentId participant) const {
    check_participant(participant);
    return idom_[static_cast<std::size_t>(participant)];
}

std::vector<AgentId> DiffusionAnalysis::sequence(AgentId j) const {
    check_participant(j);
    std::vector<AgentId> seq;
    for (AgentId v = j; v != root_; v = idom_[static_cast<std::size_t>(v)]) seq.push_back(v);
    std::reverse(seq.begin(), seq.end());
    return seq;
}

std::vector<AgentId> DiffusionAnalysis::critical_of(AgentId j) const {
    auto seq = sequence(j);
    seq.pop_back();
    return seq;
}

std::vector<AgentId> DiffusionAnalysis::dependent_set(AgentId i) const {
    check_participant(i);
    std::vector<AgentId> dep;
    for (AgentId j : participants_)
        if (in_dependent_set(i, j)) dep.push_back(j);
    return dep;
}

bool DiffusionAnalysis::in_dependent_set(AgentId i, AgentId j) const {
    return tin_[static_cast<std::size_t>(i)] <= tin_[static_cast<std::size_t>(j)] &&
           tout_[static_cast<std::size_t>(j)] <= tout_[static_cast<std::size_t>(i)];
}

int DiffusionAnalysis::dependent_count(AgentId i) const {
    check_participant(i);
    int count = 0;
    for (AgentId j : participants_)
        if (in_dependent_set(i, j)) ++count;
    return count;
}

std::vector<AgentId> dependent_set_without(const SocialNetwork& net, const DiffusionAnalysis& analysis,
                                           AgentId i) {
    analysis.check_participant(i);
    std::vector<AgentId> outside;
    for (AgentId j = 0; j < net.agent_count(); ++j) {
        if (j == net.seller()) continue;
        if (analysis.participates(j) && analysis.in_dependent_set(i, j)) continue;
        outside.push_back(j);
    }
    return outside;
}

std::vector<std::pair<AgentId, AgentId>> information_flow_edges(const DiffusionGraph& g,
                                                                const DiffusionAnalysis& analysis) {
    std::vector<std::pair<AgentId, AgentId>> edges;
    for (AgentId v : g.participants())
        for (AgentId w : g.out_edges(v))
            if (!analysis.in_dependent_set(w, v)) edges.emplace_back(v, w);
    for (AgentId w : g.out_edges(g.root())) edges.emplace_back(g.root(), w);
    std::sort(edges.begin(), edges.end());
    return edges;
}

std::string to_dot(const DiffusionGraph& g, const DiffusionAnalysis& analysis,
                   const std::vector<std::string>& labels) {
    std::string out = "digraph diffusion {\n  rankdir=LR;\n";
    out += "  \"" + label_of(g.root(), labels) + "\" [shape=box];\n";
    for (auto [u, v] : information_flow_edges(g, analysis))
        out += "  \"" + label_of(u, labels) + "\" -> \"" + label_of(v, labels) + "\";\n";
    out += "}\n";
    return out;
}

std::string dominator_tree_dot(const DiffusionAnalysis& analysis, const std::vector<std::string>& labels) {
    std::string out = "digraph critical_structure {\n  rankdir=TB;\n";
    out += "  \"" + label_of(analysis.root(), labels) + "\" [shape=box];\n";
    for (AgentId j : analysis.participants())
        out += "  \"" + label_of(analysis.idom(j), labels) + "\" -> \"" + label_of(j, labels) + "\";\n";
    out += "}\n";
    return out;
}

}  // namespace diffauct
