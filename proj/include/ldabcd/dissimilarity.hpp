#pragma once

// Parametric dissimilarity measures and the parameter-configuration (PC)
// space they are searched over. A PC is a weight vector in [0,1]^D, or in
// {0,1}^D when the search is restricted to feature subsets.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace ldabcd {

using Pattern = std::span<const double>;

enum class SpaceKind { RealUnitCube, Boolean };

inline const char* to_string(SpaceKind k) { return k == SpaceKind::Boolean ? "boolean" : "real"; }

inline SpaceKind space_kind_from_string(const std::string& s) {
    if (s == "boolean") return SpaceKind::Boolean;
    if (s == "real") return SpaceKind::RealUnitCube;
    throw ConfigError("unknown pc_space '" + s + "' (expected 'real' or 'boolean')");
}

struct ParameterConfiguration {
    std::vector<double> weights;
    SpaceKind kind = SpaceKind::RealUnitCube;

    ParameterConfiguration() = default;
    ParameterConfiguration(std::vector<double> w, SpaceKind k) : weights(std::move(w)), kind(k) {
        for (double x : weights) {
            if (!(x >= 0.0 && x <= 1.0)) throw ContractViolation("PC weight outside [0,1]");
            if (kind == SpaceKind::Boolean && x != 0.0 && x != 1.0)
                throw ContractViolation("boolean PC weight must be 0 or 1");
        }
    }

    static ParameterConfiguration ones(std::size_t d, SpaceKind k = SpaceKind::RealUnitCube) {
        return {std::vector<double>(d, 1.0), k};
    }

    std::size_t size() const noexcept { return weights.size(); }
    bool all_zero() const noexcept {
        return std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; });
    }

    bool operator==(const ParameterConfiguration&) const = default;
};

// Dissimilarity d(a, b; m). Implementations must be symmetric, non-negative
// and vanish on identical patterns.
class DissimilarityMeasure {
public:
    virtual ~DissimilarityMeasure() = default;
    virtual std::string name() const = 0;
    virtual double evaluate(Pattern a, Pattern b, const ParameterConfiguration& m) const = 0;
};

// d(a,b;m) = sqrt(sum_k m_k (a_k - b_k)^2). A zero weight drops the feature,
// so Boolean PCs give the plain Euclidean distance on a feature subset.
class WeightedEuclidean final : public DissimilarityMeasure {
public:
    std::string name() const override { return "weighted_euclidean"; }

    double evaluate(Pattern a, Pattern b, const ParameterConfiguration& m) const override {
        if (a.size() != b.size() || a.size() != m.size())
            throw ContractViolation("weighted euclidean: dimensionality mismatch");
        double s = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) {
            const double diff = a[k] - b[k];
            s += m.weights[k] * diff * diff;
        }
        return std::sqrt(s);
    }
};

template <class Rng>
ParameterConfiguration sample_uniform(SpaceKind kind, std::size_t dims, Rng& rng) {
    if (dims == 0) throw ContractViolation("sample_uniform: D must be >= 1");
    std::vector<double> w(dims);
    if (kind == SpaceKind::Boolean) {
        std::bernoulli_distribution bit(0.5);
        do {
            for (auto& x : w) x = bit(rng) ? 1.0 : 0.0;
        } while (std::all_of(w.begin(), w.end(), [](double x) { return x == 0.0; }));
    } else {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        do {
            for (auto& x : w) x = u(rng);
        } while (std::all_of(w.begin(), w.end(), [](double x) { return x == 0.0; }));
    }
    return {std::move(w), kind};
}

// Hamming count for Boolean PCs, Euclidean norm of the difference otherwise.
inline double pc_distance(const ParameterConfiguration& a, const ParameterConfiguration& b) {
    if (a.size() != b.size() || a.kind != b.kind)
        throw ContractViolation("pc_distance: incompatible parameter configurations");
    if (a.kind == SpaceKind::Boolean) {
        std::size_t diff = 0;
        for (std::size_t i = 0; i < a.size(); ++i) diff += a.weights[i] != b.weights[i];
        return static_cast<double>(diff);
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.weights[i] - b.weights[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// Random PC near m: a Boolean neighbor flips between 1 and floor(radius)
// bits; a real neighbor adds U[-radius, radius] noise per component, clipped
// to the cube and pulled back onto the radius ball when it lands outside.
// The result is never m itself and never the all-zero vector.
template <class Rng>
ParameterConfiguration pc_neighbors(const ParameterConfiguration& m, double radius, Rng& rng) {
    const std::size_t d = m.size();
    if (d == 0) throw ContractViolation("pc_neighbors: empty configuration");
    if (m.kind == SpaceKind::Boolean) {
        if (radius < 1.0) throw ContractViolation("pc_neighbors: boolean radius must be >= 1");
        // Only neighbor of a single-bit vector in D=1 is the zero vector.
        if (d == 1) throw ContractViolation("pc_neighbors: no non-zero boolean neighbor for D=1");
        const std::size_t max_flips = std::min<std::size_t>(static_cast<std::size_t>(radius), d);
        std::uniform_int_distribution<std::size_t> flips_dist(1, max_flips);
        std::vector<std::size_t> idx(d);
        for (;;) {
            const std::size_t flips = flips_dist(rng);
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            // partial Fisher-Yates for the first `flips` positions
            for (std::size_t i = 0; i < flips; ++i) {
                std::uniform_int_distribution<std::size_t> pick(i, d - 1);
                std::swap(idx[i], idx[pick(rng)]);
            }
            auto w = m.weights;
            for (std::size_t i = 0; i < flips; ++i) w[idx[i]] = 1.0 - w[idx[i]];
            if (std::all_of(w.begin(), w.end(), [](double x) { return x == 0.0; })) continue;
            return {std::move(w), SpaceKind::Boolean};
        }
    }
    if (!(radius > 0.0)) throw ContractViolation("pc_neighbors: real radius must be > 0");
    std::uniform_real_distribution<double> noise(-radius, radius);
    for (;;) {
        std::vector<double> w(d);
        double dist2 = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            w[i] = std::clamp(m.weights[i] + noise(rng), 0.0, 1.0);
            dist2 += (w[i] - m.weights[i]) * (w[i] - m.weights[i]);
        }
        const double dist = std::sqrt(dist2);
        if (dist == 0.0) continue;
        if (dist > radius) {
            const double shrink = radius / dist;
            for (std::size_t i = 0; i < d; ++i) w[i] = std::clamp(m.weights[i] + shrink * (w[i] - m.weights[i]), 0.0, 1.0);
        }
        if (std::all_of(w.begin(), w.end(), [](double x) { return x == 0.0; })) continue;
        ParameterConfiguration out{std::move(w), SpaceKind::RealUnitCube};
        if (out == m) continue;
        return out;
    }
}

}  // namespace ldabcd
