#include <atomic>
#include <bit>
#include <chrono>
#include <cstring>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "diffauct/detail/small_engine.hpp"
#include "diffauct/verifier.hpp"

namespace diffauct {

namespace {

using detail::SmallAnalysis;
using detail::SmallNet;
using detail::SmallOutcome;
using detail::SmallProfile;

inline std::uint32_t bit(int i) { return std::uint32_t{1} << i; }

std::vector<std::int64_t> sweep_bid_units(const std::vector<Money>& grid, bool add_midpoints) {
    std::vector<Money> bids = grid;
    std::sort(bids.begin(), bids.end());
    bids.erase(std::unique(bids.begin(), bids.end()), bids.end());
    if (bids.empty()) throw std::invalid_argument("empty valuation grid");
    std::vector<std::int64_t> units;
    for (Money b : bids) units.push_back(b.units());
    if (add_midpoints) {
        std::vector<std::int64_t> extended = units;
        for (std::size_t k = 0; k + 1 < units.size(); ++k) {
            std::int64_t mid = units[k] + (units[k + 1] - units[k]) / 2;
            if (mid != units[k] && mid != units[k + 1]) extended.push_back(mid);
        }
        extended.push_back(units.back() + Money::kScale);
        std::sort(extended.begin(), extended.end());
        extended.erase(std::unique(extended.begin(), extended.end()), extended.end());
        units = std::move(extended);
    }
    return units;
}

struct SweepJob {
    int n;
    const std::vector<std::vector<AgentId>>* adjacency;
    std::uint64_t base_instance;  // global ordinal of this graph's first instance
};

struct SweepShared {
    explicit SweepShared(const SweepOptions& opt) : options(opt) {}

    const SweepOptions& options;
    std::vector<std::int64_t> deviation_bids;
    std::vector<SweepJob> jobs;
    std::atomic<std::size_t> next_job{0};
    std::atomic<bool> out_of_budget{false};
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    bool budget_exceeded() {
        if (options.budget_seconds <= 0) return false;
        if (out_of_budget.load(std::memory_order_relaxed)) return true;
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        if (elapsed > options.budget_seconds) {
            out_of_budget.store(true, std::memory_order_relaxed);
            return true;
        }
        return false;
    }
};

struct SweepWorker {
    explicit SweepWorker(SweepShared& s) : shared(s) {}

    SweepShared& shared;
    SweepResult result;

    SocialNetwork materialize_net(const std::vector<std::vector<AgentId>>& adj, const SmallNet& net) const {
        std::vector<Money> values(adj.size());
        for (std::size_t i = 0; i < adj.size(); ++i) values[i] = Money::from_units(net.value[i]);
        return SocialNetwork(0, adj, std::move(values));
    }

    Counterexample minimized(Counterexample ce, MechanismKind kind) const {
        MechanismFn fn = [kind](const SocialNetwork& n, const ActionProfile& p) {
            return diffauct::run(kind, n, p);
        };
        return minimize_counterexample(ce, fn, shared.options.grid);
    }

    Counterexample make_ce(const std::vector<std::vector<AgentId>>& adj, const SmallNet& net, int buyer,
                           std::int64_t bid_units, std::uint32_t relay_mask, bool null_action,
                           std::int64_t baseline, std::int64_t observed, const char* note) const {
        SocialNetwork snet = materialize_net(adj, net);
        ActionProfile intended;
        intended.actions.resize(adj.size());
        for (int i = 1; i < net.n; ++i)
            intended.actions[static_cast<std::size_t>(i)] = Action(snet.valuation(i), snet.neighbors(i));
        Action deviation;
        if (!null_action) {
            std::vector<AgentId> relay;
            for (std::uint32_t r = relay_mask; r; r &= r - 1) relay.push_back(std::countr_zero(r));
            deviation = Action(Money::from_units(bid_units), std::move(relay));
        }
        return Counterexample{std::move(snet), std::move(intended), buyer, deviation,
                              Money::from_units(baseline), Money::from_units(observed), note};
    }

    // Compares the compact pipeline against the reference implementation.
    void differential_check(const std::vector<std::vector<AgentId>>& adj, const SmallNet& net,
                            const SmallOutcome& small_idm_out, const SmallOutcome& small_vcg_out) const {
        SocialNetwork snet = materialize_net(adj, net);
        ActionProfile profile = truthful_profile(snet);
        Outcome ref_idm = idm(snet, profile);
        Outcome ref_vcg = vcg_network(snet, profile);
        auto mismatch = [&](const Outcome& ref, const SmallOutcome& small) {
            if (ref.revenue.units() != small.revenue) return true;
            int ref_winner = ref.winner ? *ref.winner : -1;
            if (ref_winner != small.winner) return true;
            for (int i = 1; i < net.n; ++i)
                if (ref.payments[static_cast<std::size_t>(i)].units() != small.payment[i]) return true;
            return false;
        };
        if (mismatch(ref_idm, small_idm_out) || mismatch(ref_vcg, small_vcg_out))
            throw std::logic_error("sweep engine disagrees with the reference mechanisms");
    }

    void check_dset_monotonicity(const std::vector<std::vector<AgentId>>& adj, SmallNet& net) {
        // Dependent sets ignore bids, so one valuation assignment suffices.
        SmallProfile base = detail::small_truthful(net);
        SmallAnalysis analysis;
        for (int i = 1; i < net.n; ++i) {
            std::uint32_t cand = net.adj[i] & ~bit(net.seller);
            int positions[detail::kSmallMax];
            int c = 0;
            for (std::uint32_t r = cand; r; r &= r - 1) positions[c++] = std::countr_zero(r);
            std::uint32_t dsets[1u << 8];
            const std::uint32_t total = std::uint32_t{1} << c;
            for (std::uint32_t idx = 0; idx < total; ++idx) {
                std::uint32_t relay = 0;
                for (int b = 0; b < c; ++b)
                    if (idx & bit(b)) relay |= bit(positions[b]);
                SmallProfile p = base;
                p.relay[i] = relay;
                detail::small_transform(net, p);
                detail::small_analyze(net, p, analysis);
                dsets[idx] = analysis.dependents[i];
            }
            for (std::uint32_t idx = 0; idx < total; ++idx) {
                for (int b = 0; b < c; ++b) {
                    if (idx & bit(b)) continue;
                    ++result.dset_monotone.deviations_checked;
                    if (dsets[idx] & ~dsets[idx | bit(b)]) {
                        result.dset_monotone.record(make_ce(adj, net, i, net.value[i], 0, false, 0, 0,
                                                            "dependent set shrank under a larger relay set"));
                    }
                }
            }
        }
    }

    void run_graph(const SweepJob& job) {
        const auto& adj = *job.adjacency;
        const int n = job.n;
        SmallNet net;
        net.n = n;
        net.seller = 0;
        net.buyers = 0;
        for (int i = 0; i < n; ++i) {
            for (AgentId j : adj[static_cast<std::size_t>(i)]) net.adj[i] |= bit(j);
            if (i != 0) net.buyers |= bit(i);
        }
        ++result.networks;

        const auto& grid = shared.options.grid;
        for (int i = 1; i < n; ++i) net.value[i] = grid.front().units();
        check_dset_monotonicity(adj, net);

        const auto& dev_bids = shared.deviation_bids;
        std::uint32_t cand[detail::kSmallMax];
        for (int i = 1; i < n; ++i) cand[i] = net.adj[i] & ~bit(net.seller);

        std::vector<std::size_t> pick(static_cast<std::size_t>(n - 1), 0);
        std::uint64_t assignment = 0;
        while (true) {
            for (int b = 1; b < n; ++b) net.value[b] = grid[pick[static_cast<std::size_t>(b - 1)]].units();

            SmallProfile base = detail::small_truthful(net);
            detail::small_transform(net, base);
            SmallAnalysis base_an;
            detail::small_analyze(net, base, base_an);
            SmallOutcome base_idm, base_vcg;
            detail::small_idm(net, base, base_an, base_idm);
            detail::small_vcg(net, base, base_an, base_vcg);
            ++result.instances;

            if ((job.base_instance + assignment) % shared.options.differential_stride == 0)
                differential_check(adj, net, base_idm, base_vcg);

            std::int64_t truth_idm[detail::kSmallMax], truth_vcg[detail::kSmallMax];
            for (int i = 1; i < n; ++i) {
                truth_idm[i] = detail::small_utility(net, base_idm, i);
                truth_vcg[i] = detail::small_utility(net, base_vcg, i);
                ++result.ir_idm.deviations_checked;
                if (truth_idm[i] < 0)
                    result.ir_idm.record(make_ce(adj, net, i, net.value[i], net.adj[i], false, 0,
                                                 truth_idm[i], "negative truthful utility"));
                ++result.ir_vcg.deviations_checked;
                if (truth_vcg[i] < 0)
                    result.ir_vcg.record(make_ce(adj, net, i, net.value[i], net.adj[i], false, 0,
                                                 truth_vcg[i], "negative truthful utility"));
            }

            SmallProfile work;
            SmallAnalysis work_an;
            SmallOutcome dev_idm, dev_vcg;
            for (int i = 1; i < n; ++i) {
                const bool base_unlucky = (base_idm.unlucky & bit(i)) != 0;
                std::uint32_t sub = cand[i];
                while (true) {  // every submask of cand[i], descending, then 0
                    for (std::int64_t b : dev_bids) {
                        work = base;
                        work.bid[i] = b;
                        work.relay[i] = sub;
                        detail::small_transform(net, work);
                        detail::small_analyze(net, work, work_an);
                        detail::small_idm(net, work, work_an, dev_idm);
                        detail::small_vcg(net, work, work_an, dev_vcg);
                        std::int64_t u_idm = detail::small_utility(net, dev_idm, i);
                        std::int64_t u_vcg = detail::small_utility(net, dev_vcg, i);
                        ++result.deviations;

                        ++result.ic_idm.deviations_checked;
                        if (u_idm > truth_idm[i])
                            ++result.ic_idm.improving;
                        else if (u_idm == truth_idm[i])
                            ++result.ic_idm.neutral;
                        else
                            ++result.ic_idm.decreasing;
                        if (u_idm > truth_idm[i])
                            result.ic_idm.record(
                                minimized(make_ce(adj, net, i, b, sub, false, truth_idm[i], u_idm,
                                                  "profitable deviation under idm"),
                                          MechanismKind::IDM));

                        ++result.ic_vcg.deviations_checked;
                        if (u_vcg > truth_vcg[i])
                            ++result.ic_vcg.improving;
                        else if (u_vcg == truth_vcg[i])
                            ++result.ic_vcg.neutral;
                        else
                            ++result.ic_vcg.decreasing;
                        if (u_vcg > truth_vcg[i])
                            result.ic_vcg.record(
                                minimized(make_ce(adj, net, i, b, sub, false, truth_vcg[i], u_vcg,
                                                  "profitable deviation under vcg"),
                                          MechanismKind::NetworkVCG));

                        if (b == net.value[i]) {
                            ++result.ir_idm.deviations_checked;
                            if (u_idm < 0)
                                result.ir_idm.record(make_ce(adj, net, i, b, sub, false, 0, u_idm,
                                                             "negative utility at a truthful bid"));
                            ++result.ir_vcg.deviations_checked;
                            if (u_vcg < 0)
                                result.ir_vcg.record(make_ce(adj, net, i, b, sub, false, 0, u_vcg,
                                                             "negative utility at a truthful bid"));
                        }
                        if (base_unlucky) {
                            ++result.unlucky_neutral.deviations_checked;
                            if (u_idm != 0)
                                result.unlucky_neutral.record(make_ce(adj, net, i, b, sub, false, 0, u_idm,
                                                                      "unlucky buyer moved her utility"));
                        }
                    }
                    if (sub == 0) break;
                    sub = (sub - 1) & cand[i];
                }
                // The null action trades nothing: utility is exactly zero.
                ++result.deviations;
                ++result.ic_idm.deviations_checked;
                if (truth_idm[i] < 0) {
                    ++result.ic_idm.improving;
                    result.ic_idm.record(make_ce(adj, net, i, 0, 0, true, truth_idm[i], 0,
                                                 "staying out beats the truthful action under idm"));
                } else {
                    truth_idm[i] == 0 ? ++result.ic_idm.neutral : ++result.ic_idm.decreasing;
                }
                ++result.ic_vcg.deviations_checked;
                if (truth_vcg[i] < 0) {
                    ++result.ic_vcg.improving;
                    result.ic_vcg.record(make_ce(adj, net, i, 0, 0, true, truth_vcg[i], 0,
                                                 "staying out beats the truthful action under vcg"));
                } else {
                    truth_vcg[i] == 0 ? ++result.ic_vcg.neutral : ++result.ic_vcg.decreasing;
                }
                if (base_unlucky) ++result.unlucky_neutral.deviations_checked;
            }

            ++assignment;
            std::size_t k = 0;
            while (k < pick.size()) {
                if (++pick[k] < grid.size()) break;
                pick[k++] = 0;
            }
            if (k == pick.size()) break;
            if ((assignment & 0x3ff) == 0 && shared.budget_exceeded()) {
                result.partial = true;
                return;
            }
        }
    }

    void run() {
        while (true) {
            std::size_t job_index = shared.next_job.fetch_add(1);
            if (job_index >= shared.jobs.size()) return;
            if (shared.budget_exceeded()) {
                result.partial = true;
                return;
            }
            run_graph(shared.jobs[job_index]);
        }
    }
};

}  // namespace

SweepResult exhaustive_sweep(const SweepOptions& options) {
    if (options.n_max < 2 || options.n_max > 6)
        throw std::invalid_argument("exhaustive sweep supports 2..6 agents");
    if (options.grid.empty()) throw std::invalid_argument("empty valuation grid");

    SweepShared shared(options);
    shared.deviation_bids = sweep_bid_units(options.grid, options.add_midpoints);

    // Keep the per-n adjacency lists alive for the workers.
    std::vector<std::vector<std::vector<std::vector<AgentId>>>> all_graphs;
    for (int n = 2; n <= options.n_max; ++n)
        all_graphs.push_back(connected_adjacencies(n, options.seller_min_degree));
    std::uint64_t offset = 0;
    for (int n = 2; n <= options.n_max; ++n) {
        std::uint64_t assignments = 1;
        for (int b = 1; b < n; ++b) assignments *= options.grid.size();
        for (const auto& adj : all_graphs[static_cast<std::size_t>(n - 2)]) {
            shared.jobs.push_back(SweepJob{n, &adj, offset});
            offset += assignments;
        }
    }

    int threads = options.threads > 0 ? options.threads : default_thread_count();
    std::vector<SweepWorker> workers;
    workers.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) workers.emplace_back(shared);

    if (threads == 1) {
        workers[0].run();
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    workers[static_cast<std::size_t>(t)].run();
                } catch (...) {
                    errors[static_cast<std::size_t>(t)] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& err : errors)
            if (err) std::rethrow_exception(err);
    }

    SweepResult total;
    for (auto& w : workers) {
        total.networks += w.result.networks;
        total.instances += w.result.instances;
        total.deviations += w.result.deviations;
        total.partial = total.partial || w.result.partial;
        total.ic_idm.merge(std::move(w.result.ic_idm));
        total.ic_vcg.merge(std::move(w.result.ic_vcg));
        total.ir_idm.merge(std::move(w.result.ir_idm));
        total.ir_vcg.merge(std::move(w.result.ir_vcg));
        total.unlucky_neutral.merge(std::move(w.result.unlucky_neutral));
        total.dset_monotone.merge(std::move(w.result.dset_monotone));
    }
    total.ic_idm.property = "ic";
    total.ic_idm.mechanism = "idm";
    total.ic_vcg.property = "ic";
    total.ic_vcg.mechanism = "vcg";
    total.ir_idm.property = "ir";
    total.ir_idm.mechanism = "idm";
    total.ir_vcg.property = "ir";
    total.ir_vcg.mechanism = "vcg";
    total.unlucky_neutral.property = "unlucky-neutrality";
    total.unlucky_neutral.mechanism = "idm";
    total.dset_monotone.property = "d-set-monotonicity";
    total.dset_monotone.mechanism = "model";
    for (VerificationReport* r : {&total.ic_idm, &total.ic_vcg, &total.ir_idm, &total.ir_vcg,
                                  &total.unlucky_neutral, &total.dset_monotone}) {
        r->instances_checked = total.instances;
        r->partial = total.partial;
    }
    return total;
}

}  // namespace diffauct
