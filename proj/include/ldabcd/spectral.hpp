#pragma once

// Subset conductance and spectral bounds on the graph conductance.
//
// The conductance of a cut follows the internal-mass convention
//
//     phi(S) = sum_{u in S, v notin S} A(u,v) / min(A(S), A(S'))
//     A(S)   = sum_{u,v in S} A(u,v)      (ordered pairs)
//
// which differs from the usual volume-normalized definition: the denominator
// excludes the boundary edges. The graph conductance is bracketed with the
// Cheeger inequality 1 - l2 <= Phi(G) <= sqrt(8 (1 - l2)), where l2 is the
// second eigenvalue of N = D^-1/2 A D^-1/2, estimated with the power method
// on the PSD shift N + I. A dense symmetric eigensolver can stand in for the
// power method when exact bounds are wanted.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "graph.hpp"
#include "matrix.hpp"

namespace ldabcd {

struct ConductanceBounds {
    double lower = 0.0;
    double upper = 0.0;
    double lambda2 = 0.0;
    double epsilon = 0.0;
};

enum class EigenSolver { Power, Dense };

inline const char* to_string(EigenSolver s) { return s == EigenSolver::Dense ? "dense" : "power"; }

inline EigenSolver eigen_solver_from_string(const std::string& s) {
    if (s == "power") return EigenSolver::Power;
    if (s == "dense") return EigenSolver::Dense;
    throw ConfigError("unknown eigensolver '" + s + "' (expected 'power' or 'dense')");
}

struct SpectralOptions {
    double epsilon = 1e-3;
    // Independent random starts per eigenpair; the largest Rayleigh quotient
    // wins.
    std::size_t starts = 3;
    EigenSolver solver = EigenSolver::Power;
};

struct TopEigenpair {
    std::vector<double> vector;  // unit norm
    double value = 0.0;
};

inline std::vector<char> membership(std::size_t n, std::span<const std::size_t> subset) {
    std::vector<char> in(n, 0);
    for (std::size_t v : subset) {
        if (v >= n) throw ContractViolation("subset vertex index out of range");
        if (in[v]) throw ContractViolation("subset contains duplicate vertices");
        in[v] = 1;
    }
    return in;
}

inline double subset_conductance(const WeightedGraph& g, std::span<const std::size_t> subset) {
    const std::size_t n = g.size();
    if (subset.empty() || subset.size() >= n)
        throw ContractViolation("subset_conductance: subset must be a nonempty proper subset");
    const auto in = membership(n, subset);
    double cut = 0.0, inside = 0.0, outside = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
        auto row = g.weights.row(u);
        for (std::size_t v = 0; v < n; ++v) {
            if (in[u] != in[v]) cut += row[v];
            else if (in[u]) inside += row[v];
            else outside += row[v];
        }
    }
    // both crossing directions were summed, in an order that does not depend
    // on which side is S, so phi(S) == phi(S') bit for bit
    cut *= 0.5;
    const double denom = std::min(inside, outside);
    if (!(denom > 0.0)) throw DegenerateCut();
    return cut / denom;
}

// t = ceil(eps^-1 ln(n / eps)).
inline std::size_t power_iterations(std::size_t n, double epsilon) {
    if (!(epsilon > 0.0)) throw ContractViolation("power method: epsilon must be > 0");
    const double t = std::ceil(std::log(static_cast<double>(n) / epsilon) / epsilon);
    return std::max<std::size_t>(1, static_cast<std::size_t>(t));
}

namespace detail {

// Random signs with magnitudes jittered in [0.75, 1.25]. Pure +-1 vectors hit
// structured eigenvectors exactly, e.g. (1,-1) for [[2,1],[1,2]].
template <class Rng>
std::vector<double> random_sign_vector(std::size_t n, Rng& rng) {
    std::bernoulli_distribution coin(0.5);
    std::uniform_real_distribution<double> mag(0.75, 1.25);
    std::vector<double> x(n);
    for (auto& v : x) {
        const double m = mag(rng);
        v = coin(rng) ? m : -m;
    }
    return x;
}

inline void remove_component(std::span<double> x, std::span<const double> v) {
    const double c = dot(v, x);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * v[i];
}

// Returns false when the iterate collapsed to zero.
inline bool normalize(std::span<double> x) {
    const double nrm = norm2(x);
    if (!(nrm > 0.0)) return false;
    for (auto& v : x) v /= nrm;
    return true;
}

}  // namespace detail

// Power iteration on a symmetric PSD matrix from a random sign start.
template <class Rng>
TopEigenpair power_method_top(const DenseMatrix& m, double epsilon, Rng& rng) {
    const std::size_t n = m.rows();
    if (n == 0 || m.cols() != n) throw ContractViolation("power_method_top: square non-empty matrix required");
    const std::size_t t = power_iterations(n, epsilon);
    std::vector<double> x = detail::random_sign_vector(n, rng);
    std::vector<double> y(n);
    detail::normalize(x);
    for (std::size_t i = 0; i < t; ++i) {
        multiply(m, x, y);
        if (!detail::normalize(y)) return {std::move(x), 0.0};
        x.swap(y);
    }
    const double value = rayleigh_quotient(m, x);
    return {std::move(x), value};
}

// Power iteration deflated against v1 at every step. Returns the Rayleigh
// quotient minus one, i.e. the second eigenvalue of N when m = N + I.
template <class Rng>
double power_method_second(const DenseMatrix& m, std::span<const double> v1, double epsilon, Rng& rng) {
    const std::size_t n = m.rows();
    if (n < 2 || m.cols() != n) throw ContractViolation("power_method_second: square matrix with n >= 2 required");
    if (v1.size() != n) throw ContractViolation("power_method_second: eigenvector size mismatch");
    const std::size_t t = power_iterations(n, epsilon);
    std::vector<double> x = detail::random_sign_vector(n, rng);
    std::vector<double> y(n);
    detail::remove_component(x, v1);
    if (!detail::normalize(x)) return -1.0;
    for (std::size_t i = 0; i < t; ++i) {
        multiply(m, x, y);
        if (!detail::normalize(y)) return -1.0;
        detail::remove_component(y, v1);
        if (!detail::normalize(y)) return -1.0;
        x.swap(y);
    }
    return rayleigh_quotient(m, x) - 1.0;
}

// N + I restricted to the active vertices, in active-vertex order.
inline DenseMatrix shifted_normalized_adjacency(const WeightedGraph& g) {
    const auto act = g.active_vertices();
    const std::size_t k = act.size();
    std::vector<double> inv_sqrt(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double d = g.degrees[act[i]];
        if (!(d > 0.0)) throw ZeroDegreeVertex(act[i]);
        inv_sqrt[i] = 1.0 / std::sqrt(d);
    }
    DenseMatrix nbar(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        auto src = g.weights.row(act[i]);
        auto dst = nbar.row(i);
        for (std::size_t j = 0; j < k; ++j) dst[j] = src[act[j]] * inv_sqrt[i] * inv_sqrt[j];
        dst[i] += 1.0;
    }
    return nbar;
}

inline ConductanceBounds bounds_from_lambda2(double lambda2, double epsilon) {
    lambda2 = std::clamp(lambda2, -1.0, 1.0);
    const double gap = 1.0 - lambda2;
    return {gap, std::sqrt(8.0 * gap), lambda2, epsilon};
}

// Second-largest eigenvalue of N, from a full decomposition of N + I.
inline double dense_lambda2(const DenseMatrix& nbar) {
    const auto k = static_cast<Eigen::Index>(nbar.rows());
    if (k < 2) throw ContractViolation("dense_lambda2: need at least two vertices");
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(nbar.data().data(), k, k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("dense eigensolver did not converge");
    return es.eigenvalues()(k - 2) - 1.0;
}

template <class Rng>
ConductanceBounds conductance_bounds(const WeightedGraph& g, const SpectralOptions& opts, Rng& rng) {
    if (g.active_count() < 2) throw GraphExhausted();
    const DenseMatrix nbar = shifted_normalized_adjacency(g);
    if (opts.solver == EigenSolver::Dense) return bounds_from_lambda2(dense_lambda2(nbar), 0.0);
    const std::size_t starts = std::max<std::size_t>(1, opts.starts);

    TopEigenpair top = power_method_top(nbar, opts.epsilon, rng);
    for (std::size_t s = 1; s < starts; ++s) {
        TopEigenpair cand = power_method_top(nbar, opts.epsilon, rng);
        if (cand.value > top.value) top = std::move(cand);
    }
    double lambda2 = power_method_second(nbar, top.vector, opts.epsilon, rng);
    for (std::size_t s = 1; s < starts; ++s)
        lambda2 = std::max(lambda2, power_method_second(nbar, top.vector, opts.epsilon, rng));
    return bounds_from_lambda2(lambda2, opts.epsilon);
}

template <class Rng>
ConductanceBounds conductance_bounds(const WeightedGraph& g, double epsilon, Rng& rng) {
    return conductance_bounds(g, SpectralOptions{epsilon, SpectralOptions{}.starts}, rng);
}

}  // namespace ldabcd
