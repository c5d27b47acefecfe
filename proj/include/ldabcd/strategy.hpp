#pragma once

// PC selection: uniform exploration, and exploitation of relevant PCs (RPCs)
// kept in a store shared by all agents. An exploiter perturbs a stored PC and
// re-scores the stored cluster on the new graph without walking.

#include <cstddef>
#include <mutex>
#include <optional>
#include <random>
#include <vector>

#include "dissimilarity.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "spectral.hpp"
#include "walker.hpp"

namespace ldabcd {

struct RpcEntry {
    std::size_t id = 0;
    Cluster cluster;  // carries the PC and its cq
};

class RpcStore {
public:
    RpcStore() = default;
    RpcStore(const RpcStore&) = delete;
    RpcStore& operator=(const RpcStore&) = delete;

    std::size_t insert(const Cluster& c) {
        std::lock_guard lock(mu_);
        const std::size_t id = entries_.size();
        entries_.push_back({id, c});
        return id;
    }

    // Replaces entry `id` iff `candidate.cq` strictly exceeds the stored cq.
    bool replace_if_better(std::size_t id, const Cluster& candidate) {
        std::lock_guard lock(mu_);
        RpcEntry& e = entries_.at(id);
        if (!(candidate.cq > e.cluster.cq)) return false;
        e.cluster = candidate;
        return true;
    }

    std::vector<RpcEntry> snapshot() const {
        std::lock_guard lock(mu_);
        return entries_;
    }

    std::optional<RpcEntry> get(std::size_t id) const {
        std::lock_guard lock(mu_);
        if (id >= entries_.size()) return std::nullopt;
        return entries_[id];
    }

    std::size_t size() const {
        std::lock_guard lock(mu_);
        return entries_.size();
    }
    bool empty() const { return size() == 0; }

private:
    mutable std::mutex mu_;
    std::vector<RpcEntry> entries_;
};

enum class Policy { Explorer, Exploiter };

inline const char* to_string(Policy p) { return p == Policy::Exploiter ? "exploiter" : "explorer"; }

inline Policy choose_policy(double explorer_ratio, double tau_expl, bool store_nonempty) {
    return store_nonempty && explorer_ratio > tau_expl ? Policy::Exploiter : Policy::Explorer;
}

inline Policy choose_policy(double explorer_ratio, double tau_expl, const RpcStore& store) {
    return choose_policy(explorer_ratio, tau_expl, !store.empty());
}

template <class Rng>
ParameterConfiguration explore_next_pc(std::size_t dims, SpaceKind kind, Rng& rng) {
    return sample_uniform(kind, dims, rng);
}

struct ExploitContext {
    const DenseMatrix* data = nullptr;
    const DissimilarityMeasure* measure = nullptr;
    const WalkerConfig* walker = nullptr;
    SpectralOptions spectral;
    double radius = 1.0;
};

// Re-scores `base` on the graph induced by pc. The graph gets the same mask
// the cluster was discovered under. Returns nothing when the cluster cannot
// be scored there (exhausted graph, inactive member, degenerate cut/bounds).
template <class Rng>
std::optional<Cluster> rescore_cluster(const Cluster& base, const ParameterConfiguration& pc,
                                       const ExploitContext& ctx, Rng& rng) {
    try {
        WeightedGraph g = build_graph(*ctx.data, *ctx.measure, pc, ctx.walker->beta);
        if (!base.masked.empty()) g = mask_visited(g, base.masked);
        drop_isolated(g);
        for (std::size_t v : base.members)
            if (!g.active[v]) return std::nullopt;
        if (base.members.size() >= g.active_count()) return std::nullopt;
        const ConductanceBounds b = conductance_bounds(g, ctx.spectral, rng);
        Cluster out = base;
        out.pc = pc;
        out.phi = subset_conductance(g, out.members);
        score(out, b, ctx.walker->quality);
        return out;
    } catch (const GraphExhausted&) {
        return std::nullopt;
    } catch (const DegenerateCut&) {
        return std::nullopt;
    } catch (const DegenerateBounds&) {
        return std::nullopt;
    }
}

struct ExploitProposal {
    std::size_t entry_id = 0;
    double incumbent_cq = 0.0;
    std::optional<Cluster> candidate;
};

// Picks a uniform random entry from a store snapshot and evaluates one
// neighbor of its PC. Does not touch the store.
template <class Rng>
ExploitProposal propose_exploit(const std::vector<RpcEntry>& entries, const ExploitContext& ctx, Rng& rng) {
    if (entries.empty()) throw ContractViolation("propose_exploit: empty RPC store");
    std::uniform_int_distribution<std::size_t> pick(0, entries.size() - 1);
    const RpcEntry& e = entries[pick(rng)];
    ExploitProposal p{e.id, e.cluster.cq, std::nullopt};
    ParameterConfiguration neighbor;
    try {
        neighbor = pc_neighbors(e.cluster.pc, ctx.radius, rng);
    } catch (const ContractViolation&) {
        return p;
    }
    p.candidate = rescore_cluster(e.cluster, neighbor, ctx, rng);
    return p;
}

// propose + atomic compare-and-replace. Returns the new entry on success.
template <class Rng>
std::optional<Cluster> exploit_step(RpcStore& store, const ExploitContext& ctx, Rng& rng) {
    ExploitProposal p = propose_exploit(store.snapshot(), ctx, rng);
    if (p.candidate && store.replace_if_better(p.entry_id, *p.candidate)) return p.candidate;
    return std::nullopt;
}

}  // namespace ldabcd
