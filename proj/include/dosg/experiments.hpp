#pragma once

#include "dosg/potential.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace dosg {

// Runtime configuration for one experiment: defaults per experiment id,
// overridable from a JSON config file. Runs are reproducible from
// (config, seed); the canonical config hash is embedded in all outputs.
struct ExperimentConfig {
    std::string id;
    std::uint64_t seed = 1;
    int threads = 1;
    std::string out_dir = "out";
    nlohmann::json params; // merged defaults + file overrides

    static ExperimentConfig make(const std::string& id,
                                 const std::optional<std::string>& config_path,
                                 std::uint64_t seed, int threads,
                                 const std::string& out_dir);

    double get_num(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::vector<double> get_vec(const std::string& key,
                                std::vector<double> fallback) const;
    std::vector<int> get_ivec(const std::string& key,
                              std::vector<int> fallback) const;

    std::string canonical_json() const;
    std::string config_hash() const;

    // Single-site measure from params (atom list or CDF breakpoints).
    std::optional<SingleSiteMeasure> measure_param(const std::string& key) const;
};

// One output row. `asserted` rows contribute to the suite exit code;
// reported rows carry pass=true unconditionally.
struct ResultRow {
    std::string experiment;
    std::string item;
    double measured = 0.0;
    double bound = 0.0;
    double slack = 0.0;
    bool pass = true;
    bool asserted = true;
    std::string note;
};

struct ExperimentResult {
    std::string id;
    std::vector<ResultRow> rows;
    bool pass_all = true;
    double runtime_seconds = 0.0;
};

const std::vector<std::string>& experiment_ids();

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Writes <id>.csv (fixed column order) and <id>.json (config hash, seed,
// rows). Timing goes to a separate timing.log, which is the only
// non-deterministic output file.
void write_outputs(const ExperimentConfig& cfg, const ExperimentResult& result);

} // namespace dosg
