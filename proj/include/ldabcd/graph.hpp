#pragma once

// Complete weighted graph induced by one parameter configuration, plus the
// random-walk structures derived from it.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "dissimilarity.hpp"
#include "errors.hpp"
#include "matrix.hpp"

namespace ldabcd {

struct WeightedGraph {
    DenseMatrix weights;          // symmetric, zero diagonal, entries in [0,1]
    std::vector<double> degrees;  // row sums of `weights`
    std::vector<char> active;     // 0 once a vertex has been masked out
    ParameterConfiguration pc;
    double tau_exp = 0.0;

    std::size_t size() const noexcept { return degrees.size(); }
    std::size_t active_count() const noexcept {
        std::size_t c = 0;
        for (char a : active) c += a != 0;
        return c;
    }
    double volume() const noexcept {
        double v = 0.0;
        for (double d : degrees) v += d;
        return v;
    }
    std::vector<std::size_t> active_vertices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < active.size(); ++i)
            if (active[i]) out.push_back(i);
        return out;
    }
};

struct TransitionStructure {
    DenseMatrix transition;         // D^-1 A, rows of inactive vertices are zero
    std::vector<double> stationary; // degree / volume
};

namespace detail {

inline void recompute_degrees(WeightedGraph& g) {
    const std::size_t n = g.weights.rows();
    g.degrees.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (double w : g.weights.row(i)) s += w;
        g.degrees[i] = s;
    }
}

inline DenseMatrix pairwise_dissimilarities(const DenseMatrix& data, const DissimilarityMeasure& measure,
                                            const ParameterConfiguration& m) {
    const std::size_t n = data.rows();
    DenseMatrix d(n, n);
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t k = l + 1; k < n; ++k) {
            const double v = measure.evaluate(data.row(l), data.row(k), m);
            d(l, k) = v;
            d(k, l) = v;
        }
    return d;
}

inline double mean_entry(const DenseMatrix& d) {
    double s = 0.0;
    for (double v : d.data()) s += v;
    return s / static_cast<double>(d.rows() * d.cols());
}

}  // namespace detail

// beta times the mean dissimilarity over all n^2 ordered pairs (the diagonal
// contributes zeros).
inline double compute_tau_exp(const DenseMatrix& data, const DissimilarityMeasure& measure,
                              const ParameterConfiguration& m, double beta) {
    if (data.rows() == 0) throw ContractViolation("compute_tau_exp: empty dataset");
    if (!(beta > 0.0)) throw ContractViolation("compute_tau_exp: beta must be > 0");
    return beta * detail::mean_entry(detail::pairwise_dissimilarities(data, measure, m));
}

// A(l,k) = exp(-tau_exp * d(x_l, x_k; m)) off the diagonal, A(l,l) = 0.
inline WeightedGraph build_graph(const DenseMatrix& data, const DissimilarityMeasure& measure,
                                 const ParameterConfiguration& m, double beta) {
    const std::size_t n = data.rows();
    if (n < 2) throw ContractViolation("build_graph: need at least two patterns");
    if (!(beta > 0.0)) throw ContractViolation("build_graph: beta must be > 0");
    if (m.size() != data.cols()) throw ContractViolation("build_graph: PC dimensionality mismatch");

    WeightedGraph g;
    g.pc = m;
    g.weights = detail::pairwise_dissimilarities(data, measure, m);
    g.tau_exp = beta * detail::mean_entry(g.weights);
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t k = 0; k < n; ++k)
            g.weights(l, k) = l == k ? 0.0 : std::exp(-g.tau_exp * g.weights(l, k));
    g.active.assign(n, 1);
    detail::recompute_degrees(g);
    return g;
}

// Vertices that are active but carry no weight (their kernel row underflowed
// or all their neighbors were masked).
inline std::vector<std::size_t> isolated_vertices(const WeightedGraph& g) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.active[i] && g.degrees[i] <= 0.0) out.push_back(i);
    return out;
}

inline TransitionStructure transition_structure(const WeightedGraph& g) {
    const std::size_t n = g.size();
    TransitionStructure ts;
    ts.transition = DenseMatrix(n, n);
    ts.stationary.assign(n, 0.0);
    double volume = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!g.active[i]) continue;
        if (!(g.degrees[i] > 0.0)) throw ZeroDegreeVertex(i);
        volume += g.degrees[i];
    }
    if (g.active_count() < 2) throw GraphExhausted();
    for (std::size_t i = 0; i < n; ++i) {
        if (!g.active[i]) continue;
        const double inv = 1.0 / g.degrees[i];
        auto src = g.weights.row(i);
        auto dst = ts.transition.row(i);
        for (std::size_t k = 0; k < n; ++k) dst[k] = src[k] * inv;
        ts.stationary[i] = g.degrees[i] / volume;
    }
    return ts;
}

// Zero the rows and columns of `visited` and recompute degrees. Throws
// GraphExhausted when fewer than two active vertices would remain.
inline WeightedGraph mask_visited(const WeightedGraph& g, std::span<const std::size_t> visited) {
    WeightedGraph out = g;
    const std::size_t n = g.size();
    for (std::size_t v : visited) {
        if (v >= n) throw ContractViolation("mask_visited: vertex index out of range");
        out.active[v] = 0;
        for (std::size_t k = 0; k < n; ++k) {
            out.weights(v, k) = 0.0;
            out.weights(k, v) = 0.0;
        }
    }
    detail::recompute_degrees(out);
    if (out.active_count() < 2) throw GraphExhausted();
    return out;
}

// Deactivates active vertices that carry no weight, in place. Throws
// GraphExhausted when fewer than two active vertices remain.
inline void drop_isolated(WeightedGraph& g) {
    for (std::size_t v : isolated_vertices(g)) g.active[v] = 0;
    if (g.active_count() < 2) throw GraphExhausted();
}

}  // namespace ldabcd
