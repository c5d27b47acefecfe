#pragma once

// Synthetic benchmark generators with ground-truth labels c1, c2, ...
//
//   noisy4d    four clusters in [0,1]^4; cluster k is Gaussian on three
//              components and uniform on component k.
//   paired4d   four clusters in [0,1]^4 built from eight paired Gaussians:
//              c1, c2 carry signal on components 1-2, c3, c4 on 3-4, and the
//              remaining two components are noise kept away from the means.
//   highdim30d ten spherical Gaussian clusters in 30 dimensions.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "errors.hpp"

namespace ldabcd {

struct NoisyGaussian4dParams {
    std::size_t per_cluster = 75;
    double sigma = 0.03;
    double min_separation = 0.25;  // on every Gaussian component two clusters share
    double center_lo = 0.1;
    double center_hi = 0.9;
    std::size_t max_retries = 100000;
};

struct PairedGaussian4dParams {
    std::size_t per_cluster = 75;
    double sigma = 0.005;
    double min_separation = 0.2;  // between the two means sharing a component
    double noise_radius = 0.1;
    double mean_lo = 0.1;
    double mean_hi = 0.9;
    std::size_t max_retries = 100000;
};

struct HighDim30dParams {
    std::size_t clusters = 10;
    std::size_t per_cluster = 50;
    std::size_t dims = 30;
    double sigma = 0.1;
    double min_separation_sigmas = 6.0;
    double center_lo = 0.0;
    double center_hi = 1.0;
    std::size_t max_retries = 100000;
};

inline std::string cluster_label(std::size_t k) { return "c" + std::to_string(k + 1); }

template <class Rng>
LabeledDataset gen_noisy_gaussian_4d(Rng& rng, const NoisyGaussian4dParams& p = {}) {
    constexpr std::size_t K = 4, D = 4;
    std::uniform_real_distribution<double> centre(p.center_lo, p.center_hi);
    // Component d is Gaussian for every cluster except cluster d, so the
    // separation constraint factors per component.
    std::array<std::array<double, D>, K> mean{};
    for (std::size_t d = 0; d < D; ++d) {
        std::size_t tries = 0;
        for (;;) {
            if (++tries > p.max_retries) throw DataError("noisy4d: could not place cluster centers");
            for (std::size_t k = 0; k < K; ++k) mean[k][d] = k == d ? 0.0 : centre(rng);
            bool ok = true;
            for (std::size_t a = 0; a < K && ok; ++a)
                for (std::size_t b = a + 1; b < K && ok; ++b)
                    if (a != d && b != d) ok = std::abs(mean[a][d] - mean[b][d]) >= p.min_separation;
            if (ok) break;
        }
    }

    LabeledDataset ds;
    ds.name = "noisy4d";
    ds.patterns = DenseMatrix(K * p.per_cluster, D);
    ds.labels.emplace();
    std::normal_distribution<double> noise(0.0, p.sigma);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t row = 0;
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t i = 0; i < p.per_cluster; ++i, ++row) {
            for (std::size_t d = 0; d < D; ++d)
                ds.patterns(row, d) = d == k ? unit(rng) : std::clamp(mean[k][d] + noise(rng), 0.0, 1.0);
            ds.labels->push_back(cluster_label(k));
        }
    return ds;
}

// Signal components per cluster, zero-based.
inline std::array<std::size_t, 2> paired4d_signal_components(std::size_t k) {
    return k < 2 ? std::array<std::size_t, 2>{0, 1} : std::array<std::size_t, 2>{2, 3};
}

template <class Rng>
LabeledDataset gen_paired_gaussian_4d(Rng& rng, const PairedGaussian4dParams& p = {}) {
    constexpr std::size_t K = 4, D = 4;
    // means[d] holds the two Gaussian means living on component d; the first
    // belongs to the lower-numbered cluster of the pair.
    std::array<std::array<double, 2>, D> means{};
    std::uniform_real_distribution<double> place(p.mean_lo, p.mean_hi);
    for (std::size_t d = 0; d < D; ++d) {
        std::size_t tries = 0;
        do {
            if (++tries > p.max_retries) throw DataError("paired4d: could not place Gaussian means");
            means[d] = {place(rng), place(rng)};
        } while (std::abs(means[d][0] - means[d][1]) < p.min_separation);
    }

    auto noise_value = [&](std::size_t d) {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (std::size_t tries = 0; tries < p.max_retries; ++tries) {
            const double v = unit(rng);
            if (std::abs(v - means[d][0]) >= p.noise_radius && std::abs(v - means[d][1]) >= p.noise_radius) return v;
        }
        throw DataError("paired4d: noise domain is empty");
    };

    LabeledDataset ds;
    ds.name = "paired4d";
    ds.patterns = DenseMatrix(K * p.per_cluster, D);
    ds.labels.emplace();
    std::normal_distribution<double> g(0.0, p.sigma);
    std::size_t row = 0;
    for (std::size_t k = 0; k < K; ++k) {
        const auto sig = paired4d_signal_components(k);
        const std::size_t slot = k % 2;
        for (std::size_t i = 0; i < p.per_cluster; ++i, ++row) {
            for (std::size_t d = 0; d < D; ++d) {
                const bool signal = d == sig[0] || d == sig[1];
                ds.patterns(row, d) = signal ? std::clamp(means[d][slot] + g(rng), 0.0, 1.0) : noise_value(d);
            }
            ds.labels->push_back(cluster_label(k));
        }
    }
    return ds;
}

template <class Rng>
LabeledDataset gen_highdim_30d(Rng& rng, const HighDim30dParams& p = {}) {
    const std::size_t K = p.clusters, D = p.dims;
    std::uniform_real_distribution<double> place(p.center_lo, p.center_hi);
    std::vector<std::vector<double>> centers(K, std::vector<double>(D));
    std::size_t tries = 0;
    for (;;) {
        if (++tries > p.max_retries) throw DataError("highdim30d: could not place cluster centers");
        for (auto& c : centers)
            for (auto& v : c) v = place(rng);
        bool ok = true;
        for (std::size_t a = 0; a < K && ok; ++a)
            for (std::size_t b = a + 1; b < K && ok; ++b) {
                double s = 0.0;
                for (std::size_t d = 0; d < D; ++d) s += (centers[a][d] - centers[b][d]) * (centers[a][d] - centers[b][d]);
                ok = std::sqrt(s) >= p.min_separation_sigmas * p.sigma;
            }
        if (ok) break;
    }

    LabeledDataset ds;
    ds.name = "highdim30d";
    ds.patterns = DenseMatrix(K * p.per_cluster, D);
    ds.labels.emplace();
    std::normal_distribution<double> g(0.0, p.sigma);
    std::size_t row = 0;
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t i = 0; i < p.per_cluster; ++i, ++row) {
            for (std::size_t d = 0; d < D; ++d) ds.patterns(row, d) = centers[k][d] + g(rng);
            ds.labels->push_back(cluster_label(k));
        }
    return ds;
}

}  // namespace ldabcd
