#pragma once

// One agent's random walk on a PC-induced graph. The walk starts from the
// stationary distribution, grows the subgraph of visited vertices, and spends
// an energy budget that is refilled while the subgraph conductance falls.
// The visited set at exhaustion is the candidate cluster, scored with CQ2
// against the Cheeger bounds of the same graph.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "dissimilarity.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "spectral.hpp"

namespace ldabcd {

enum class QualityFunction { CQ2, CQ1 };

inline const char* to_string(QualityFunction q) { return q == QualityFunction::CQ1 ? "cq1" : "cq2"; }

inline QualityFunction quality_from_string(const std::string& s) {
    if (s == "cq2") return QualityFunction::CQ2;
    if (s == "cq1") return QualityFunction::CQ1;
    throw ConfigError("unknown quality '" + s + "' (expected 'cq2' or 'cq1')");
}

struct WalkerConfig {
    double e_init = 1.0;
    double tau_energy = 0.05;
    double gain = 1.0;
    std::size_t r = 3;
    double tau_cq = 0.9;
    double beta = 1.0;
    std::optional<std::size_t> z_stop;
    // Hard cap on steps per walk, as a multiple of n. Hitting it rejects.
    std::size_t step_cap_factor = 50;
    QualityFunction quality = QualityFunction::CQ2;

    void validate() const {
        if (!(e_init > 0.0)) throw ConfigError("walker.e_init must be > 0");
        if (!(tau_energy >= 0.0)) throw ConfigError("walker.tau_energy must be >= 0");
        if (!(gain >= 0.0)) throw ConfigError("walker.gain must be >= 0");
        if (r < 1) throw ConfigError("walker.r must be >= 1");
        if (!(tau_cq >= 0.0 && tau_cq <= 1.0)) throw ConfigError("walker.tau_cq must lie in [0,1]");
        if (!(beta > 0.0)) throw ConfigError("walker.beta must be > 0");
        if (z_stop && *z_stop < 2) throw ConfigError("walker.z_stop must be >= 2");
        if (step_cap_factor < 1) throw ConfigError("walker.step_cap_factor must be >= 1");
    }
};

struct Cluster {
    std::vector<std::size_t> members;  // sorted
    std::size_t start = 0;
    double phi = 0.0;
    double cq = 0.0;      // clamped to [0,1]
    double cq_raw = 0.0;  // before clamping
    ParameterConfiguration pc;
    // Vertices that were masked on the graph this cluster was found on.
    std::vector<std::size_t> masked;

    bool operator==(const Cluster&) const = default;
};

// Maintains cut(S, S') and the internal masses A(S), A(S') while vertices
// join S, in O(n) per insertion from the weight row of the new vertex.
class ConductanceTracker {
public:
    explicit ConductanceTracker(const WeightedGraph& g) : g_(&g), in_(g.size(), 0), external_(g.volume()) {}

    bool contains(std::size_t v) const { return in_[v] != 0; }
    std::size_t size() const noexcept { return order_.size(); }
    const std::vector<std::size_t>& members() const noexcept { return order_; }

    void add(std::size_t v) {
        if (in_[v]) return;
        double w_in = 0.0, w_out = 0.0;
        auto row = g_->weights.row(v);
        for (std::size_t u = 0; u < row.size(); ++u) {
            if (in_[u]) w_in += row[u];
            else if (u != v) w_out += row[u];
        }
        internal_ += 2.0 * w_in;
        external_ -= 2.0 * w_out;
        cut_ += w_out - w_in;
        in_[v] = 1;
        order_.push_back(v);
    }

    double cut() const noexcept { return cut_; }
    double internal_mass() const noexcept { return internal_; }
    double external_mass() const noexcept { return external_; }

    // Empty when the denominator vanishes.
    std::optional<double> phi() const {
        const double denom = std::min(internal_, external_mass());
        if (!(denom > 0.0)) return std::nullopt;
        return std::max(cut_, 0.0) / denom;
    }

private:
    const WeightedGraph* g_;
    std::vector<char> in_;
    std::vector<std::size_t> order_;
    double external_;
    double internal_ = 0.0;
    double cut_ = 0.0;
};

// (1/w) sum_{q<w} [phi(t-q) - phi(t-q-1)] = (phi(t) - phi(t-w)) / w with
// w = min(r, available steps). History is ordered oldest first.
inline double conductance_delta_avg(std::span<const double> history, std::size_t r) {
    if (r < 1) throw ContractViolation("conductance_delta_avg: r must be >= 1");
    if (history.size() < 2) return 0.0;
    const std::size_t w = std::min(r, history.size() - 1);
    return (history.back() - history[history.size() - 1 - w]) / static_cast<double>(w);
}

inline double update_energy(double energy, double delta_avg, double tau_energy, double gain = 1.0) {
    return energy - gain * delta_avg - tau_energy;
}

namespace detail {

template <class Rng>
std::size_t sample_categorical(std::span<const double> weights, Rng& rng) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw GraphExhausted();
    std::uniform_real_distribution<double> u(0.0, total);
    const double target = u(rng);
    double acc = 0.0;
    std::size_t last = weights.size();
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        acc += weights[i];
        last = i;
        if (target < acc) return i;
    }
    return last;
}

}  // namespace detail

template <class Rng>
std::size_t select_start_vertex(const TransitionStructure& ts, Rng& rng) {
    std::size_t positive = 0;
    for (double p : ts.stationary) positive += p > 0.0;
    if (positive < 2) throw GraphExhausted();
    return detail::sample_categorical(ts.stationary, rng);
}

template <class Rng>
std::size_t walk_step(std::size_t current, const TransitionStructure& ts, Rng& rng) {
    return detail::sample_categorical(ts.transition.row(current), rng);
}

struct WalkResult {
    Cluster cluster;
    std::size_t steps = 0;
    bool capped = false;
    bool degenerate = false;  // fewer than two members or undefined phi
};

template <class Rng>
WalkResult run_walk(const WeightedGraph& g, const TransitionStructure& ts, const WalkerConfig& cfg, Rng& rng) {
    if (g.active_count() < 2) throw GraphExhausted();
    const std::size_t n = g.size();
    const std::size_t cap = cfg.step_cap_factor * n;

    ConductanceTracker tracker(g);
    std::deque<double> history;
    std::vector<double> window;
    WalkResult out;

    std::size_t current = select_start_vertex(ts, rng);
    out.cluster.start = current;
    tracker.add(current);

    double energy = cfg.e_init;
    for (;;) {
        if (cfg.z_stop) {
            if (tracker.size() >= *cfg.z_stop) break;
        } else {
            window.assign(history.begin(), history.end());
            energy = update_energy(energy, conductance_delta_avg(window, cfg.r), cfg.tau_energy, cfg.gain);
            if (energy <= 0.0) break;
        }
        if (out.steps >= cap) {
            out.capped = true;
            break;
        }
        current = walk_step(current, ts, rng);
        ++out.steps;
        tracker.add(current);
        if (tracker.size() >= 2) {
            if (auto phi = tracker.phi()) {
                history.push_back(*phi);
                if (history.size() > cfg.r + 1) history.pop_front();
            }
        }
    }

    out.cluster.members = tracker.members();
    std::sort(out.cluster.members.begin(), out.cluster.members.end());
    out.cluster.pc = g.pc;
    const auto phi = tracker.phi();
    if (tracker.size() < 2 || !phi) {
        out.degenerate = true;
    } else {
        out.cluster.phi = *phi;
    }
    return out;
}

// CQ2 = 1 - (phi - lb) / (ub - lb), unclamped.
inline double cluster_quality_raw(double phi, const ConductanceBounds& b, QualityFunction q = QualityFunction::CQ2) {
    if (q == QualityFunction::CQ1) return 1.0 - phi;
    const double span = b.upper - b.lower;
    if (!(span > 0.0)) throw DegenerateBounds();
    return 1.0 - (phi - b.lower) / span;
}

inline double cluster_quality(double phi, const ConductanceBounds& b, QualityFunction q = QualityFunction::CQ2) {
    return std::clamp(cluster_quality_raw(phi, b, q), 0.0, 1.0);
}

inline void score(Cluster& c, const ConductanceBounds& b, QualityFunction q) {
    c.cq_raw = cluster_quality_raw(c.phi, b, q);
    c.cq = std::clamp(c.cq_raw, 0.0, 1.0);
}

enum class Decision { Accept, Reject };

inline Decision accept_or_reject(const Cluster& c, double tau_cq) {
    return c.members.size() >= 2 && c.cq >= tau_cq ? Decision::Accept : Decision::Reject;
}

}  // namespace ldabcd
