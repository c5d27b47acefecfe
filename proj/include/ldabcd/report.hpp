#pragma once

// report.json and mcq.csv emission, plus JSON parsing back into a RunReport.

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "aggregation.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "run.hpp"

namespace ldabcd {

inline nlohmann::json to_json(const Cluster& c) {
    return {{"members", c.members}, {"start", c.start},   {"phi", c.phi},      {"cq", c.cq},
            {"cq_raw", c.cq_raw},   {"pc", c.pc.weights}, {"masked", c.masked}};
}

inline Cluster cluster_from_json(const nlohmann::json& j, SpaceKind kind) {
    Cluster c;
    c.members = j.at("members").get<std::vector<std::size_t>>();
    c.start = j.at("start").get<std::size_t>();
    c.phi = j.at("phi").get<double>();
    c.cq = j.at("cq").get<double>();
    c.cq_raw = j.at("cq_raw").get<double>();
    c.pc = ParameterConfiguration(j.at("pc").get<std::vector<double>>(), kind);
    c.masked = j.at("masked").get<std::vector<std::size_t>>();
    return c;
}

inline nlohmann::json to_json(const MetaCluster& m) {
    nlohmann::json clusters = nlohmann::json::array();
    for (const auto& c : m.clusters) clusters.push_back(to_json(c));
    return {{"id", m.id},
            {"agent", m.agent},
            {"mu", support(m.mu)},
            {"average_cq", m.average_cq()},
            {"clusters", clusters}};
}

inline MetaCluster meta_cluster_from_json(const nlohmann::json& j, std::size_t n, SpaceKind kind) {
    MetaCluster m;
    m.id = j.at("id").get<std::size_t>();
    m.agent = j.at("agent").get<std::size_t>();
    m.counts.assign(n, 0);
    for (const auto& cj : j.at("clusters")) {
        Cluster c = cluster_from_json(cj, kind);
        for (std::size_t v : c.members) ++m.counts.at(v);
        m.clusters.push_back(std::move(c));
    }
    m.recompute_mu();
    if (support(m.mu) != j.at("mu").get<std::vector<std::size_t>>())
        throw DataError("report: stored mu does not match its clusters");
    return m;
}

inline nlohmann::json to_json(const AgentStats& s) {
    return {{"evaluations", s.evaluations},           {"accepted", s.accepted},
            {"rejected", s.rejected},                 {"exploit_attempts", s.exploit_attempts},
            {"exploit_successes", s.exploit_successes}, {"converged", s.converged}};
}

inline nlohmann::json to_json(const RunReport& r) {
    nlohmann::json metas = nlohmann::json::array();
    for (const auto& m : r.global_meta_clusters) metas.push_back(to_json(m));
    nlohmann::json series = nlohmann::json::array();
    for (const auto& p : r.mcq_series) series.push_back({p.iteration, p.mcq});
    nlohmann::json agents = nlohmann::json::array();
    for (const auto& a : r.agents) agents.push_back(to_json(a));
    nlohmann::json j{{"dataset", r.dataset},
                     {"n", r.n},
                     {"dims", r.dims},
                     {"strategy", to_string(r.config.strategy())},
                     {"config", to_json(r.config)},
                     {"theta", r.theta},
                     {"global_meta_clusters", metas},
                     {"mcq_series", series},
                     {"agents", agents},
                     {"purity", nullptr},
                     {"wall_time_seconds", r.wall_time_seconds}};
    if (r.purity) j["purity"] = {{"per_meta", r.purity->per_meta}, {"average", r.purity->average}};
    return j;
}

inline RunReport run_report_from_json(const nlohmann::json& j) {
    RunReport r;
    try {
        r.dataset = j.at("dataset").get<std::string>();
        r.n = j.at("n").get<std::size_t>();
        r.dims = j.at("dims").get<std::size_t>();
        r.config = run_config_from_json(j.at("config"));
        r.theta = j.at("theta").get<std::size_t>();
        for (const auto& mj : j.at("global_meta_clusters"))
            r.global_meta_clusters.push_back(meta_cluster_from_json(mj, r.n, r.config.pc_space));
        for (const auto& p : j.at("mcq_series")) r.mcq_series.push_back({p.at(0).get<std::size_t>(), p.at(1).get<double>()});
        for (const auto& a : j.at("agents")) {
            AgentStats s;
            s.evaluations = a.at("evaluations").get<std::size_t>();
            s.accepted = a.at("accepted").get<std::size_t>();
            s.rejected = a.at("rejected").get<std::size_t>();
            s.exploit_attempts = a.at("exploit_attempts").get<std::size_t>();
            s.exploit_successes = a.at("exploit_successes").get<std::size_t>();
            s.converged = a.at("converged").get<bool>();
            r.agents.push_back(s);
        }
        if (!j.at("purity").is_null()) {
            PurityReport p;
            p.per_meta = j.at("purity").at("per_meta").get<std::vector<double>>();
            p.average = j.at("purity").at("average").get<double>();
            r.purity = p;
        }
        r.wall_time_seconds = j.at("wall_time_seconds").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed report: ") + e.what());
    }
    return r;
}

inline bool operator==(const MetaCluster& a, const MetaCluster& b) {
    return a.id == b.id && a.agent == b.agent && a.mu == b.mu && a.counts == b.counts && a.clusters == b.clusters;
}

inline bool operator==(const RunReport& a, const RunReport& b) {
    return a.dataset == b.dataset && a.n == b.n && a.dims == b.dims && a.config == b.config && a.theta == b.theta &&
           a.global_meta_clusters == b.global_meta_clusters && a.mcq_series == b.mcq_series && a.agents == b.agents &&
           a.purity == b.purity && a.wall_time_seconds == b.wall_time_seconds;
}

// JSON text with wall time zeroed, for reproducibility comparisons.
inline std::string canonical_report(const RunReport& r) {
    nlohmann::json j = to_json(r);
    j["wall_time_seconds"] = 0.0;
    return j.dump(2);
}

inline void write_mcq_csv(const RunReport& r, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    out.precision(17);
    out << "iteration,mcq\n";
    for (const auto& p : r.mcq_series) out << p.iteration << ',' << p.mcq << '\n';
    if (!out) throw DataError("failed writing '" + path.string() + "'");
}

// Writes report.json and mcq.csv into `dir`, creating it if needed.
inline void emit_report(const RunReport& r, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw DataError("cannot create output directory '" + dir.string() + "': " + ec.message());
    std::ofstream out(dir / "report.json");
    if (!out) throw DataError("cannot write '" + (dir / "report.json").string() + "'");
    out << to_json(r).dump(2) << '\n';
    if (!out) throw DataError("failed writing report.json");
    write_mcq_csv(r, dir / "mcq.csv");
}

inline RunReport read_report(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError("report '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return run_report_from_json(j);
}

}  // namespace ldabcd
