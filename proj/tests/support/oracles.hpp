#pragma once

// Independent reference implementations for tests. Nothing here calls into
// the library's numerics: eigenvalues come from cyclic Jacobi rotations and
// graph conductance from exhaustive enumeration.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

// All eigenvalues of a symmetric matrix, ascending.
inline std::vector<double> jacobi_eigenvalues(Matrix a, double tol = 1e-13, int max_sweeps = 100) {
    const std::size_t n = a.size();
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < tol * tol) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

// Uniformly random orthogonal matrix via Gram-Schmidt on Gaussian columns.
template <class Rng>
Matrix random_orthogonal(std::size_t n, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix q(n, std::vector<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> v(n);
        for (;;) {
            for (auto& x : v) x = g(rng);
            for (std::size_t k = 0; k < j; ++k) {
                double d = 0.0;
                for (std::size_t i = 0; i < n; ++i) d += q[i][k] * v[i];
                for (std::size_t i = 0; i < n; ++i) v[i] -= d * q[i][k];
            }
            double nrm = 0.0;
            for (double x : v) nrm += x * x;
            nrm = std::sqrt(nrm);
            if (nrm > 1e-8) {
                for (std::size_t i = 0; i < n; ++i) q[i][j] = v[i] / nrm;
                break;
            }
        }
    }
    return q;
}

// Q diag(eigs) Q^T.
template <class Rng>
Matrix with_spectrum(const std::vector<double>& eigs, Rng& rng) {
    const std::size_t n = eigs.size();
    const Matrix q = random_orthogonal(n, rng);
    Matrix m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += q[i][k] * eigs[k] * q[j][k];
            m[i][j] = s;
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) m[i][j] = m[j][i] = 0.5 * (m[i][j] + m[j][i]);
    return m;
}

// D^-1/2 A D^-1/2 for a weight matrix with positive row sums.
inline Matrix normalized_adjacency(const Matrix& w) {
    const std::size_t n = w.size();
    std::vector<double> d(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (double x : w[i]) d[i] += x;
    Matrix out(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i][j] = w[i][j] / std::sqrt(d[i] * d[j]);
    return out;
}

inline double second_eigenvalue(const Matrix& w) {
    const auto ev = jacobi_eigenvalues(normalized_adjacency(w));
    return ev[ev.size() - 2];
}

// cut / min(internal mass S, internal mass S'), ordered pairs, recomputed
// from scratch. NaN when the denominator vanishes.
inline double conductance(const Matrix& w, const std::vector<char>& in) {
    double cut = 0.0, a = 0.0, b = 0.0;
    const std::size_t n = w.size();
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            if (in[u] && in[v]) a += w[u][v];
            else if (!in[u] && !in[v]) b += w[u][v];
            else if (in[u]) cut += w[u][v];
        }
    const double den = std::min(a, b);
    return den > 0.0 ? cut / den : std::numeric_limits<double>::quiet_NaN();
}

// Minimum conductance over all nonempty proper subsets with a nonzero
// denominator.
inline double brute_force_graph_conductance(const Matrix& w) {
    const std::size_t n = w.size();
    if (n > 16) throw std::invalid_argument("brute_force_graph_conductance: n > 16");
    if (n < 2) throw std::invalid_argument("brute_force_graph_conductance: n < 2");
    double best = std::numeric_limits<double>::infinity();
    std::vector<char> in(n);
    // vertex n-1 stays outside: S and S' give the same value
    for (unsigned long mask = 1; mask < (1ul << (n - 1)); ++mask) {
        for (std::size_t i = 0; i < n; ++i) in[i] = (mask >> i) & 1ul;
        const double phi = conductance(w, in);
        if (!std::isnan(phi)) best = std::min(best, phi);
    }
    return best;
}

}  // namespace oracle
