#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "lastmile/analytics.hpp"
#include "lastmile/demand.hpp"
#include "lastmile/engine.hpp"
#include "lastmile/policy.hpp"
#include "lastmile/synthetic.hpp"

namespace lastmile {

inline constexpr std::uint64_t kDefaultSeed = 2019;

struct ScenarioConfig {
    std::string scenario_id = "scenario";
    SystemType system = SystemType::RobotOnly;
    int robots = 0;
    int drones = 0;
    double demand_growth_percent = 0.0;
    int base_demand = kBaseDemand;
    Seconds window = kStudyWindow;
    std::uint64_t seed = kDefaultSeed;
    std::string network = "synthetic";  // file path or "synthetic"
    std::string demand_file;            // optional fixed demand set
    int replications = 1;
};

/// Throws ConfigError naming the violated rule. The network overload also
/// checks that hybrid scenarios have a depot.
void validate(const ScenarioConfig& config);
void validate(const ScenarioConfig& config, const Network& net);

/// Config documents: a single scenario object, an array of them, or an
/// object with a "scenarios" array whose sibling keys are shared defaults.
/// Keys match ScenarioConfig field names; unknown keys are rejected.
std::vector<ScenarioConfig> load_config(const nlohmann::ordered_json& doc);
std::vector<ScenarioConfig> load_config_file(const std::filesystem::path& path);
nlohmann::ordered_json to_json(const ScenarioConfig& config);

/// The 18-row scenario table expanded to runs: robot fleets 25..150 and
/// drone fleets 5..30 at growth 0/10/20 %, and six hybrid fleets at +20 %,
/// 42 configurations in all, sharing `master_seed`.
std::vector<ScenarioConfig> paper_matrix(std::uint64_t master_seed = kDefaultSeed, int replications = 1);

/// Seed of replication r: derive_seed(seed, {REPL, r}). It drives vehicle
/// placement; demand uses derive_seed(replication seed, {DEMD, growth x 1000}),
/// so every fleet size in a sweep sees the same orders and placement stream.
std::uint64_t replication_seed(std::uint64_t seed, int replication);
std::uint64_t demand_seed(std::uint64_t replication_seed, double growth_percent);

struct MatrixOptions {
    unsigned jobs = 1;
    SyntheticNetworkSpec synthetic;
    RunOptions run;
    std::optional<std::filesystem::path> out_dir;  // per-run files go under here
    bool emit_logs = true;
    bool emit_itineraries = false;
    bool emit_paths = false;
    bool keep_results = false;
};

struct RunRecord {
    ScenarioConfig config;
    int replication = 0;
    std::uint64_t seed = 0;
    int n_orders = 0;
    std::optional<WaitSummary> summary;
    std::string error;  // set when the run aborted
    std::optional<SimResult> result;

    bool ok() const { return error.empty(); }
};

/// Runs every (config, replication) pair, `jobs` at a time. Invalid configs
/// or unloadable inputs throw before anything runs; a run that aborts is
/// returned with its error set. Records are ordered by scenario id, then
/// replication, independent of completion order.
std::vector<RunRecord> run_matrix(const std::vector<ScenarioConfig>& configs, const MatrixOptions& options = {});

// scenario_id,replication,seed,system,robots,drones,demand,n_orders,mean_wait_min,
// median,min,max,q1,q3,losA,losB,losC,losD,losF,system_los,status
std::string metrics_csv(std::span<const RunRecord> records);

// system,demand,robots,drones,fleet_size,mean_wait_min,replications,plateau
// Means are averaged over successful replications; hybrid sweeps vary drones
// at fixed robots.
std::string fleet_sweep_csv(std::span<const RunRecord> records);

// scenario_id,replication,los,count,share
std::string los_histogram_csv(std::span<const RunRecord> records);

// scenario_id,replication,system,min,q1,median,q3,max,mean
std::string five_number_csv(std::span<const RunRecord> records);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace lastmile
