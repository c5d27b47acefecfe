#pragma once

// Meta-clusters: prototypes that collect clusters with near-identical
// membership vectors, together with the PCs that produced them ranked by CQ.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "errors.hpp"
#include "walker.hpp"

namespace ldabcd {

using ClusterVector = std::vector<std::uint8_t>;

inline ClusterVector to_cluster_vector(std::span<const std::size_t> members, std::size_t n) {
    ClusterVector bits(n, 0);
    for (std::size_t v : members) {
        if (v >= n) throw ContractViolation("cluster member index out of range");
        bits[v] = 1;
    }
    return bits;
}

inline std::vector<std::size_t> support(const ClusterVector& bits) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) out.push_back(i);
    return out;
}

inline std::size_t hamming(const ClusterVector& a, const ClusterVector& b) {
    if (a.size() != b.size()) throw ContractViolation("hamming: length mismatch");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

inline std::size_t default_theta(std::size_t n) {
    return static_cast<std::size_t>(std::ceil(0.1 * static_cast<double>(n)));
}

struct MetaCluster {
    std::size_t id = 0;
    std::size_t agent = 0;
    ClusterVector mu;
    std::vector<std::uint32_t> counts;  // per-pattern membership counts
    std::vector<Cluster> clusters;      // sorted by cq, then cq_raw, descending

    std::size_t size() const noexcept { return clusters.size(); }

    double average_cq() const {
        if (clusters.empty()) return 0.0;
        double s = 0.0;
        for (const auto& c : clusters) s += c.cq;
        return s / static_cast<double>(clusters.size());
    }

    const Cluster& best() const { return clusters.front(); }

    // Rounded mean with ties going to 1.
    void recompute_mu() {
        const std::size_t k = clusters.size();
        mu.assign(counts.size(), 0);
        for (std::size_t i = 0; i < counts.size(); ++i) mu[i] = 2 * static_cast<std::size_t>(counts[i]) >= k ? 1 : 0;
    }

    void add(const Cluster& c) {
        for (std::size_t v : c.members) ++counts.at(v);
        auto pos = std::upper_bound(clusters.begin(), clusters.end(), c, ranks_before);
        clusters.insert(pos, c);
        recompute_mu();
    }

    void absorb(const MetaCluster& other) {
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
        for (const auto& c : other.clusters) {
            auto pos = std::upper_bound(clusters.begin(), clusters.end(), c, ranks_before);
            clusters.insert(pos, c);
        }
        recompute_mu();
    }

    static bool ranks_before(const Cluster& a, const Cluster& b) {
        if (a.cq != b.cq) return a.cq > b.cq;
        return a.cq_raw > b.cq_raw;
    }

    static MetaCluster seed(std::size_t id, std::size_t agent, const Cluster& c, std::size_t n) {
        MetaCluster m;
        m.id = id;
        m.agent = agent;
        m.counts.assign(n, 0);
        m.add(c);
        return m;
    }
};

struct Assignment {
    std::size_t meta_id = 0;
    bool created = false;
};

// Per-agent list of meta-clusters.
class MetaClusterStore {
public:
    MetaClusterStore(std::size_t n, std::size_t theta, std::size_t agent = 0) : n_(n), theta_(theta), agent_(agent) {}

    Assignment assign(const Cluster& c) {
        const ClusterVector bits = to_cluster_vector(c.members, n_);
        std::size_t best = metas_.size();
        std::size_t best_d = 0;
        for (std::size_t i = 0; i < metas_.size(); ++i) {
            const std::size_t d = hamming(metas_[i].mu, bits);
            if (best == metas_.size() || d < best_d) {
                best = i;
                best_d = d;
            }
        }
        if (best < metas_.size() && best_d <= theta_) {
            metas_[best].add(c);
            return {metas_[best].id, false};
        }
        metas_.push_back(MetaCluster::seed(metas_.size(), agent_, c, n_));
        return {metas_.back().id, true};
    }

    const MetaCluster& at(std::size_t id) const { return metas_.at(id); }
    const std::vector<MetaCluster>& metas() const noexcept { return metas_; }
    std::size_t size() const noexcept { return metas_.size(); }
    std::size_t theta() const noexcept { return theta_; }

private:
    std::size_t n_;
    std::size_t theta_;
    std::size_t agent_;
    std::vector<MetaCluster> metas_;
};

enum class ConvergenceEvent { NewMeta, ImprovedAverage, StagnantAccept, Rejection };

class ConvergenceTracker {
public:
    explicit ConvergenceTracker(std::size_t tau_stop) : tau_stop_(tau_stop) {
        if (tau_stop == 0) throw ContractViolation("tau_stop must be > 0");
    }

    // Returns true when the agent should stop.
    bool observe(ConvergenceEvent e) {
        if (e == ConvergenceEvent::NewMeta || e == ConvergenceEvent::ImprovedAverage)
            stall_ = 0;
        else
            ++stall_;
        return stopped();
    }

    // Classifies an accepted cluster against the best average CQ seen for its
    // meta-cluster, then observes the event.
    ConvergenceEvent classify_accept(const Assignment& a, double average_cq) {
        auto it = best_avg_.find(a.meta_id);
        ConvergenceEvent e;
        if (a.created || it == best_avg_.end()) {
            e = ConvergenceEvent::NewMeta;
            best_avg_[a.meta_id] = average_cq;
        } else if (average_cq > it->second) {
            e = ConvergenceEvent::ImprovedAverage;
            it->second = average_cq;
        } else {
            e = ConvergenceEvent::StagnantAccept;
        }
        return e;
    }

    bool stopped() const noexcept { return stall_ >= tau_stop_; }
    std::size_t stall_count() const noexcept { return stall_; }
    std::size_t tau_stop() const noexcept { return tau_stop_; }

private:
    std::size_t tau_stop_;
    std::size_t stall_ = 0;
    std::map<std::size_t, double> best_avg_;
};

// Greedy merge across agents. Candidates are visited in (agent, creation)
// order; each meta-cluster absorbs every later one within theta, and the scan
// restarts whenever a prototype changed.
inline std::vector<MetaCluster> global_merge(const std::vector<std::vector<MetaCluster>>& stores, std::size_t theta) {
    std::vector<MetaCluster> all;
    std::size_t n = 0;
    for (const auto& s : stores)
        for (const auto& m : s) {
            if (all.empty()) n = m.mu.size();
            else if (m.mu.size() != n) throw ContractViolation("global_merge: membership length mismatch");
            all.push_back(m);
        }

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < all.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < all.size();) {
                if (hamming(all[i].mu, all[j].mu) <= theta) {
                    all[i].absorb(all[j]);
                    all.erase(all.begin() + static_cast<std::ptrdiff_t>(j));
                    changed = true;
                    j = i + 1;
                } else {
                    ++j;
                }
            }
        }
    }
    for (std::size_t i = 0; i < all.size(); ++i) all[i].id = i;
    return all;
}

}  // namespace ldabcd
