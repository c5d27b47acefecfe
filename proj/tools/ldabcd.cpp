// Command-line front end.
//
//   ldabcd run    --data <csv> [--labels <col>] --config <json> --out <dir> [--strategy ...]
//   ldabcd gen    --which {noisy4d|paired4d|highdim30d} --seed <int> --out <csv>
//   ldabcd purity --data <csv> --labels <col> --z <int> --config <json> [--seeds 0,1,2]
//
// Exit codes: 0 success, 2 configuration error, 3 data error, 1 otherwise.

#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ldabcd/ldabcd.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kDataError = 3;

void apply_strategy(ldabcd::RunConfig& cfg, const std::string& strategy) {
    if (strategy.empty()) return;
    if (strategy == "uniform") {
        cfg.tau_expl.reset();
    } else if (strategy == "explore-exploit") {
        if (!cfg.tau_expl) cfg.tau_expl = 0.75;
    } else {
        throw ldabcd::ConfigError("unknown strategy '" + strategy + "'");
    }
}

std::optional<std::string> opt(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-agent random-walk clustering with dissimilarity-parameter search"};
    app.require_subcommand(1);

    std::string data, labels, config, out, strategy, which;
    std::uint64_t seed = 0;
    std::size_t z = 0;
    std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};

    auto* run_cmd = app.add_subcommand("run", "cluster a CSV dataset and write report.json and mcq.csv");
    run_cmd->add_option("--data", data, "input CSV")->required();
    run_cmd->add_option("--labels", labels, "label column (name or zero-based index)");
    run_cmd->add_option("--config", config, "JSON run configuration")->required();
    run_cmd->add_option("--out", out, "output directory")->required();
    run_cmd->add_option("--strategy", strategy, "uniform | explore-exploit")
        ->check(CLI::IsMember({"uniform", "explore-exploit"}));

    auto* gen_cmd = app.add_subcommand("gen", "write a synthetic benchmark dataset");
    gen_cmd->add_option("--which", which, "noisy4d | paired4d | highdim30d")
        ->required()
        ->check(CLI::IsMember({"noisy4d", "paired4d", "highdim30d"}));
    gen_cmd->add_option("--seed", seed, "random seed");
    gen_cmd->add_option("--out", out, "output CSV")->required();

    auto* purity_cmd = app.add_subcommand("purity", "cluster purity of the best-CQ cluster per meta-cluster");
    purity_cmd->add_option("--data", data, "input CSV")->required();
    purity_cmd->add_option("--labels", labels, "label column")->required();
    purity_cmd->add_option("--z", z, "distinct vertices per walk")->required();
    purity_cmd->add_option("--config", config, "JSON run configuration")->required();
    purity_cmd->add_option("--seeds", seeds, "seeds to average over")->delimiter(',');
    purity_cmd->add_option("--strategy", strategy, "uniform | explore-exploit")
        ->check(CLI::IsMember({"uniform", "explore-exploit"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kConfigError;
    }

    try {
        if (*gen_cmd) {
            std::mt19937_64 rng(seed);
            ldabcd::LabeledDataset ds;
            if (which == "noisy4d") ds = ldabcd::gen_noisy_gaussian_4d(rng);
            else if (which == "paired4d") ds = ldabcd::gen_paired_gaussian_4d(rng);
            else ds = ldabcd::gen_highdim_30d(rng);
            ldabcd::save_csv(ds, out);
            std::cout << "wrote " << ds.size() << " patterns (" << ds.dims() << " features) to " << out << '\n';
            return 0;
        }

        ldabcd::RunConfig cfg = ldabcd::load_run_config(config);
        apply_strategy(cfg, strategy);
        const ldabcd::LabeledDataset ds = ldabcd::load_csv(data, opt(labels));

        if (*run_cmd) {
            const ldabcd::RunReport report = ldabcd::run(ds, cfg);
            ldabcd::emit_report(report, out);
            std::cout << report.global_meta_clusters.size() << " meta-clusters, " << report.mcq_series.size()
                      << " MCQ points, " << report.wall_time_seconds << " s\n";
            if (report.purity) std::cout << "average CP " << report.purity->average << '\n';
            return 0;
        }

        const auto res = ldabcd::purity_protocol(ds, cfg, z, seeds);
        for (const auto& r : res.runs) {
            std::cout << "seed " << r.seed << ": " << r.meta_count << " meta-clusters, CP";
            for (double p : r.purity.per_meta) std::cout << ' ' << p;
            std::cout << ", average " << r.purity.average << '\n';
        }
        std::cout << "average CP " << res.mean_average << " +- " << res.std_average << '\n';
        return 0;
    } catch (const ldabcd::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const ldabcd::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
