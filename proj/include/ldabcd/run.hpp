#pragma once

// Multi-agent orchestration.
//
// Agents advance in synchronous rounds. At the start of a round every running
// agent picks its policy in agent-id order; then each evaluates one PC against
// a snapshot of the RPC store (in parallel when enabled); finally outcomes are
// committed in agent-id order. Per-agent random streams are derived from the
// master seed, so results do not depend on thread scheduling.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "aggregation.hpp"
#include "config.hpp"
#include "dataset.hpp"
#include "dissimilarity.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "spectral.hpp"
#include "strategy.hpp"
#include "walker.hpp"

namespace ldabcd {

using AgentRng = std::mt19937_64;

inline AgentRng agent_rng(std::uint64_t master_seed, std::size_t agent_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(agent_id), 0x9e3779b9u};
    return AgentRng(seq);
}

struct AgentStats {
    std::size_t evaluations = 0;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t exploit_attempts = 0;
    std::size_t exploit_successes = 0;
    bool converged = false;

    bool operator==(const AgentStats&) const = default;
};

struct McqPoint {
    std::size_t iteration = 0;
    double mcq = 0.0;

    bool operator==(const McqPoint&) const = default;
};

struct PurityReport {
    std::vector<double> per_meta;
    double average = 0.0;

    bool operator==(const PurityReport&) const = default;
};

struct RunReport {
    std::string dataset;
    std::size_t n = 0;
    std::size_t dims = 0;
    RunConfig config;
    std::size_t theta = 0;
    std::vector<MetaCluster> global_meta_clusters;
    std::vector<McqPoint> mcq_series;
    std::vector<AgentStats> agents;
    std::optional<PurityReport> purity;
    double wall_time_seconds = 0.0;
};

// Fraction of members sharing the label of the start vertex.
inline double cluster_purity(std::span<const std::size_t> members, const std::vector<std::string>& labels,
                             std::size_t start) {
    if (members.empty()) throw ContractViolation("cluster_purity: empty cluster");
    if (start >= labels.size()) throw ContractViolation("cluster_purity: start vertex out of range");
    std::size_t same = 0;
    for (std::size_t v : members) {
        if (v >= labels.size()) throw ContractViolation("cluster_purity: member out of range");
        same += labels[v] == labels[start];
    }
    return static_cast<double>(same) / static_cast<double>(members.size());
}

inline double cluster_purity(const Cluster& c, const std::optional<std::vector<std::string>>& labels) {
    if (!labels) throw DataError("cluster purity needs class labels");
    return cluster_purity(c.members, *labels, c.start);
}

// CP of the best-CQ cluster of every meta-cluster, and their mean.
inline PurityReport meta_purity(const std::vector<MetaCluster>& metas, const std::optional<std::vector<std::string>>& labels) {
    PurityReport p;
    for (const auto& m : metas) p.per_meta.push_back(cluster_purity(m.best(), labels));
    double s = 0.0;
    for (double v : p.per_meta) s += v;
    p.average = p.per_meta.empty() ? 0.0 : s / static_cast<double>(p.per_meta.size());
    return p;
}

namespace detail {

struct EvaluationOutcome {
    Policy policy = Policy::Explorer;
    std::vector<Cluster> accepted;        // explorer: in discovery order
    std::optional<ExploitProposal> exploit;
    bool rejected = false;
    std::exception_ptr error;
};

class Agent {
public:
    Agent(std::size_t id, const RunConfig& cfg, std::size_t n, std::size_t theta)
        : id(id), rng(agent_rng(cfg.seed, id)), store(n, theta, id), tracker(cfg.tau_stop) {}

    std::size_t id;
    AgentRng rng;
    MetaClusterStore store;
    ConvergenceTracker tracker;
    Policy policy = Policy::Explorer;
    AgentStats stats;
    bool running = true;

    // Records an accepted cluster in the private meta store. Returns true when
    // the convergence rule fires.
    bool aggregate(const Cluster& c) {
        const Assignment a = store.assign(c);
        return tracker.observe(tracker.classify_accept(a, store.at(a.meta_id).average_cq()));
    }
};

struct RunContext {
    const DenseMatrix* data;
    const DissimilarityMeasure* measure;
    const RunConfig* cfg;
    SpectralOptions spectral;
};

// Samples a PC and walks its graph until a cluster is rejected, the graph is
// exhausted, or the agent converges.
inline void explore(Agent& agent, const RunContext& ctx, EvaluationOutcome& out) {
    const RunConfig& cfg = *ctx.cfg;
    const ParameterConfiguration pc = explore_next_pc(ctx.data->cols(), cfg.pc_space, agent.rng);
    WeightedGraph g = build_graph(*ctx.data, *ctx.measure, pc, cfg.walker.beta);
    std::vector<std::size_t> masked;
    for (;;) {
        try {
            drop_isolated(g);
        } catch (const GraphExhausted&) {
            return;
        }
        Cluster c;
        try {
            const ConductanceBounds bounds = conductance_bounds(g, ctx.spectral, agent.rng);
            const TransitionStructure ts = transition_structure(g);
            WalkResult walk = run_walk(g, ts, cfg.walker, agent.rng);
            if (walk.capped || walk.degenerate) {
                out.rejected = true;
                break;
            }
            c = std::move(walk.cluster);
            c.masked = masked;
            score(c, bounds, cfg.walker.quality);
        } catch (const GraphExhausted&) {
            return;
        } catch (const DegenerateBounds&) {
            out.rejected = true;
            break;
        }
        if (accept_or_reject(c, cfg.walker.tau_cq) == Decision::Reject) {
            out.rejected = true;
            break;
        }
        out.accepted.push_back(c);
        if (agent.aggregate(c)) return;
        masked.insert(masked.end(), c.members.begin(), c.members.end());
        std::sort(masked.begin(), masked.end());
        try {
            g = mask_visited(g, c.members);
        } catch (const GraphExhausted&) {
            return;
        }
    }
    if (out.rejected) agent.tracker.observe(ConvergenceEvent::Rejection);
}

inline void evaluate(Agent& agent, const RunContext& ctx, const std::vector<RpcEntry>& snapshot,
                     EvaluationOutcome& out) {
    out.policy = agent.policy;
    try {
        if (agent.policy == Policy::Exploiter) {
            ExploitContext ec{ctx.data, ctx.measure, &ctx.cfg->walker, ctx.spectral, ctx.cfg->exploit_radius};
            out.exploit = propose_exploit(snapshot, ec, agent.rng);
        } else {
            explore(agent, ctx, out);
        }
    } catch (...) {
        out.error = std::current_exception();
    }
}

}  // namespace detail

inline RunReport run(const LabeledDataset& dataset, const RunConfig& config_in,
                     const DissimilarityMeasure& measure = WeightedEuclidean{}) {
    const auto t0 = std::chrono::steady_clock::now();
    RunConfig cfg = config_in;
    cfg.validate();
    if (dataset.size() < 3) throw DataError("dataset too small: need at least 3 patterns");
    if (cfg.walker.z_stop && *cfg.walker.z_stop > dataset.size())
        throw ConfigError("walker.z_stop exceeds the number of patterns");

    LabeledDataset ds = dataset;
    if (cfg.normalize) minmax_normalize(ds);
    const std::size_t n = ds.size();
    const std::size_t theta = cfg.theta.value_or(default_theta(n));

    detail::RunContext ctx{&ds.patterns, &measure, &cfg, SpectralOptions{cfg.epsilon, cfg.power_starts, cfg.eigensolver}};
    std::vector<detail::Agent> agents;
    agents.reserve(cfg.agent_count);
    for (std::size_t i = 0; i < cfg.agent_count; ++i) agents.emplace_back(i, cfg, n, theta);

    RpcStore rpc;
    RunReport report;
    report.dataset = ds.name;
    report.n = n;
    report.dims = ds.dims();
    report.config = cfg;
    report.theta = theta;

    std::size_t iteration = 0;
    double cq_sum = 0.0;
    std::size_t cq_count = 0;
    auto still_running = [&](const detail::Agent& a) {
        return a.running && a.stats.evaluations < cfg.max_iterations && !a.tracker.stopped();
    };
    for (auto& a : agents) a.running = still_running(a);

    for (;;) {
        std::vector<std::size_t> active;
        for (auto& a : agents)
            if (a.running) active.push_back(a.id);
        if (active.empty()) break;

        if (cfg.strategy() == Strategy::ExploreExploit) {
            for (std::size_t id : active) {
                std::size_t explorers = 1;  // the choosing agent counts as an explorer
                for (std::size_t other : active)
                    if (other != id && agents[other].policy == Policy::Explorer) ++explorers;
                const double ratio = static_cast<double>(explorers) / static_cast<double>(active.size());
                agents[id].policy = choose_policy(ratio, *cfg.tau_expl, rpc);
            }
        }

        const std::vector<RpcEntry> snapshot = rpc.snapshot();
        std::vector<detail::EvaluationOutcome> outcomes(active.size());
        if (cfg.parallel && active.size() > 1) {
            std::vector<std::thread> workers;
            workers.reserve(active.size());
            for (std::size_t k = 0; k < active.size(); ++k)
                workers.emplace_back(
                    [&, k] { detail::evaluate(agents[active[k]], ctx, snapshot, outcomes[k]); });
            for (auto& w : workers) w.join();
        } else {
            for (std::size_t k = 0; k < active.size(); ++k)
                detail::evaluate(agents[active[k]], ctx, snapshot, outcomes[k]);
        }
        for (auto& o : outcomes)
            if (o.error) std::rethrow_exception(o.error);

        for (std::size_t k = 0; k < active.size(); ++k) {
            detail::Agent& agent = agents[active[k]];
            detail::EvaluationOutcome& o = outcomes[k];
            ++agent.stats.evaluations;
            ++iteration;
            if (o.policy == Policy::Exploiter) {
                ++agent.stats.exploit_attempts;
                const auto& p = *o.exploit;
                if (p.candidate && rpc.replace_if_better(p.entry_id, *p.candidate)) {
                    ++agent.stats.exploit_successes;
                    ++agent.stats.accepted;
                    cq_sum += p.candidate->cq;
                    ++cq_count;
                    agent.aggregate(*p.candidate);
                } else {
                    ++agent.stats.rejected;
                    agent.tracker.observe(ConvergenceEvent::Rejection);
                }
            } else {
                for (const auto& c : o.accepted) {
                    cq_sum += c.cq;
                    ++cq_count;
                    if (cfg.strategy() == Strategy::ExploreExploit) rpc.insert(c);
                }
                agent.stats.accepted += o.accepted.size();
                agent.stats.rejected += o.rejected ? 1 : 0;
            }
            if (cq_count > 0) report.mcq_series.push_back({iteration, cq_sum / static_cast<double>(cq_count)});
            agent.stats.converged = agent.tracker.stopped();
            agent.running = still_running(agent);
        }
    }

    std::vector<std::vector<MetaCluster>> stores;
    for (const auto& a : agents) {
        stores.push_back(a.store.metas());
        report.agents.push_back(a.stats);
    }
    report.global_meta_clusters = global_merge(stores, theta);
    if (ds.labels) report.purity = meta_purity(report.global_meta_clusters, ds.labels);
    report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

struct PuritySeedResult {
    std::uint64_t seed = 0;
    std::size_t meta_count = 0;
    PurityReport purity;
};

struct PurityProtocolResult {
    std::vector<PuritySeedResult> runs;
    double mean_average = 0.0;
    double std_average = 0.0;
};

// Runs with z_stop = z once per seed and reports the CP of the best-CQ
// cluster of every global meta-cluster.
inline PurityProtocolResult purity_protocol(const LabeledDataset& ds, RunConfig cfg, std::size_t z,
                                            const std::vector<std::uint64_t>& seeds) {
    if (!ds.labels) throw DataError("purity protocol needs class labels");
    if (seeds.empty()) throw ContractViolation("purity_protocol: no seeds");
    cfg.walker.z_stop = z;
    PurityProtocolResult out;
    for (std::uint64_t s : seeds) {
        cfg.seed = s;
        RunReport r = run(ds, cfg);
        out.runs.push_back({s, r.global_meta_clusters.size(), r.purity.value_or(PurityReport{})});
    }
    double sum = 0.0;
    for (const auto& r : out.runs) sum += r.purity.average;
    out.mean_average = sum / static_cast<double>(out.runs.size());
    double var = 0.0;
    for (const auto& r : out.runs) var += (r.purity.average - out.mean_average) * (r.purity.average - out.mean_average);
    out.std_average = std::sqrt(var / static_cast<double>(out.runs.size()));
    return out;
}

}  // namespace ldabcd
