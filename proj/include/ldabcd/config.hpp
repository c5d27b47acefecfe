#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <type_traits>

#include <json.hpp>

#include "dissimilarity.hpp"
#include "errors.hpp"
#include "walker.hpp"

namespace ldabcd {

enum class Strategy { Uniform, ExploreExploit };

inline const char* to_string(Strategy s) { return s == Strategy::ExploreExploit ? "explore-exploit" : "uniform"; }

struct RunConfig {
    std::size_t agent_count = 1;
    WalkerConfig walker;
    std::optional<std::size_t> theta;  // defaults to ceil(0.1 n)
    std::size_t tau_stop = 10;
    std::optional<double> tau_expl;    // set: explore-exploit, unset: uniform
    double epsilon = 1e-3;
    std::size_t power_starts = 3;
    EigenSolver eigensolver = EigenSolver::Power;
    std::uint64_t seed = 0;
    SpaceKind pc_space = SpaceKind::RealUnitCube;
    std::size_t max_iterations = 100;  // PC evaluations per agent
    double exploit_radius = 1.0;
    bool normalize = false;            // min-max scale features before the run
    bool parallel = true;              // one thread per agent and round

    Strategy strategy() const noexcept { return tau_expl ? Strategy::ExploreExploit : Strategy::Uniform; }

    void validate() const {
        if (agent_count < 1) throw ConfigError("agent_count must be >= 1");
        walker.validate();
        if (tau_stop < 1) throw ConfigError("tau_stop must be >= 1");
        if (tau_expl && !(*tau_expl > 0.0 && *tau_expl <= 1.0)) throw ConfigError("tau_expl must lie in (0,1]");
        if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0,1)");
        if (power_starts < 1) throw ConfigError("power_starts must be >= 1");
        if (!(exploit_radius > 0.0)) throw ConfigError("exploit_radius must be > 0");
        if (pc_space == SpaceKind::Boolean && exploit_radius < 1.0)
            throw ConfigError("exploit_radius must be >= 1 for boolean PCs");
    }

    bool operator==(const RunConfig& o) const {
        const auto& a = walker;
        const auto& b = o.walker;
        return agent_count == o.agent_count && a.e_init == b.e_init && a.tau_energy == b.tau_energy &&
               a.gain == b.gain && a.r == b.r && a.tau_cq == b.tau_cq && a.beta == b.beta && a.z_stop == b.z_stop &&
               a.step_cap_factor == b.step_cap_factor && a.quality == b.quality && theta == o.theta &&
               tau_stop == o.tau_stop && tau_expl == o.tau_expl && epsilon == o.epsilon &&
               power_starts == o.power_starts && eigensolver == o.eigensolver && seed == o.seed && pc_space == o.pc_space &&
               max_iterations == o.max_iterations && exploit_radius == o.exploit_radius && normalize == o.normalize &&
               parallel == o.parallel;
    }
};

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& j, const std::set<std::string>& known, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <class T>
void read(const nlohmann::json& j, const char* key, T& out, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) return;
    try {
        if constexpr (std::is_same_v<T, std::size_t> || std::is_same_v<T, std::uint64_t>) {
            if (!it->is_number_unsigned()) throw ConfigError("");
            out = it->get<T>();
        } else if constexpr (std::is_same_v<T, double>) {
            if (!it->is_number()) throw ConfigError("");
            out = it->get<double>();
        } else if constexpr (std::is_same_v<T, bool>) {
            if (!it->is_boolean()) throw ConfigError("");
            out = it->get<bool>();
        } else {
            out = it->get<T>();
        }
    } catch (const std::exception&) {
        throw ConfigError("invalid value for '" + std::string(key) + "' in " + where);
    }
}

template <class T>
void read_optional(const nlohmann::json& j, const char* key, std::optional<T>& out, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        out.reset();
        return;
    }
    T v{};
    read(j, key, v, where);
    out = v;
}

inline void read_string(const nlohmann::json& j, const char* key, std::string& out, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_string()) throw ConfigError("invalid value for '" + std::string(key) + "' in " + where);
    out = it->get<std::string>();
}

}  // namespace detail

inline WalkerConfig walker_config_from_json(const nlohmann::json& j) {
    const std::string where = "walker";
    detail::reject_unknown_keys(
        j, {"e_init", "tau_energy", "gain", "r", "tau_cq", "beta", "z_stop", "step_cap_factor", "quality"}, where);
    WalkerConfig w;
    detail::read(j, "e_init", w.e_init, where);
    detail::read(j, "tau_energy", w.tau_energy, where);
    detail::read(j, "gain", w.gain, where);
    detail::read(j, "r", w.r, where);
    detail::read(j, "tau_cq", w.tau_cq, where);
    detail::read(j, "beta", w.beta, where);
    detail::read_optional(j, "z_stop", w.z_stop, where);
    detail::read(j, "step_cap_factor", w.step_cap_factor, where);
    std::string q = to_string(w.quality);
    detail::read_string(j, "quality", q, where);
    w.quality = quality_from_string(q);
    return w;
}

inline nlohmann::json to_json(const WalkerConfig& w) {
    nlohmann::json j{{"e_init", w.e_init},     {"tau_energy", w.tau_energy},
                     {"gain", w.gain},         {"r", w.r},
                     {"tau_cq", w.tau_cq},     {"beta", w.beta},
                     {"z_stop", nullptr},      {"step_cap_factor", w.step_cap_factor},
                     {"quality", to_string(w.quality)}};
    if (w.z_stop) j["z_stop"] = *w.z_stop;
    return j;
}

inline RunConfig run_config_from_json(const nlohmann::json& j) {
    const std::string where = "config";
    detail::reject_unknown_keys(j,
                                {"agent_count", "walker", "theta", "tau_stop", "tau_expl", "epsilon", "power_starts",
                                 "eigensolver", "seed", "pc_space", "max_iterations", "exploit_radius", "normalize", "parallel"},
                                where);
    RunConfig c;
    detail::read(j, "agent_count", c.agent_count, where);
    if (auto it = j.find("walker"); it != j.end()) c.walker = walker_config_from_json(*it);
    detail::read_optional(j, "theta", c.theta, where);
    detail::read(j, "tau_stop", c.tau_stop, where);
    detail::read_optional(j, "tau_expl", c.tau_expl, where);
    detail::read(j, "epsilon", c.epsilon, where);
    detail::read(j, "power_starts", c.power_starts, where);
    std::string solver = to_string(c.eigensolver);
    detail::read_string(j, "eigensolver", solver, where);
    c.eigensolver = eigen_solver_from_string(solver);
    detail::read(j, "seed", c.seed, where);
    std::string space = to_string(c.pc_space);
    detail::read_string(j, "pc_space", space, where);
    c.pc_space = space_kind_from_string(space);
    detail::read(j, "max_iterations", c.max_iterations, where);
    detail::read(j, "exploit_radius", c.exploit_radius, where);
    detail::read(j, "normalize", c.normalize, where);
    detail::read(j, "parallel", c.parallel, where);
    c.validate();
    return c;
}

inline nlohmann::json to_json(const RunConfig& c) {
    nlohmann::json j{{"agent_count", c.agent_count},
                     {"walker", to_json(c.walker)},
                     {"theta", nullptr},
                     {"tau_stop", c.tau_stop},
                     {"tau_expl", nullptr},
                     {"epsilon", c.epsilon},
                     {"power_starts", c.power_starts},
                     {"eigensolver", to_string(c.eigensolver)},
                     {"seed", c.seed},
                     {"pc_space", to_string(c.pc_space)},
                     {"max_iterations", c.max_iterations},
                     {"exploit_radius", c.exploit_radius},
                     {"normalize", c.normalize},
                     {"parallel", c.parallel}};
    if (c.theta) j["theta"] = *c.theta;
    if (c.tau_expl) j["tau_expl"] = *c.tau_expl;
    return j;
}

inline RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return run_config_from_json(j);
}

}  // namespace ldabcd
