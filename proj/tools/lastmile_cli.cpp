// lastmile: run delivery scenarios, generate inputs, audit and print logs.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "lastmile/analytics.hpp"
#include "lastmile/demand.hpp"
#include "lastmile/engine.hpp"
#include "lastmile/itinerary.hpp"
#include "lastmile/netgraph.hpp"
#include "lastmile/scenario.hpp"
#include "lastmile/synthetic.hpp"

using namespace lastmile;

namespace {

struct RunArgs {
    std::string config;
    std::string preset;
    std::vector<std::string> scenarios;
    std::string network = "synthetic";
    std::uint64_t network_seed = 1;
    std::string demand;
    std::uint64_t seed = kDefaultSeed;
    std::string out_dir = "out";
    int replications = 1;
    bool itineraries = false;
    bool paths = false;
    bool no_logs = false;
    unsigned jobs = 1;
    std::string system = "robot";
    int robots = 0;
    int drones = 0;
    double growth = 0.0;
    int base_demand = kBaseDemand;
    Seconds window = kStudyWindow;
    std::string id = "scenario";
};

struct NetworkArgs {
    SyntheticNetworkSpec spec;
    bool no_depot = false;
    std::string out;
};

struct DemandArgs {
    std::string network = "synthetic";
    std::uint64_t network_seed = 1;
    int orders = kBaseDemand;
    double growth = 0.0;
    Seconds window = kStudyWindow;
    std::uint64_t seed = kDefaultSeed;
    std::string out;
};

struct LogArgs {
    std::string log;
    std::string network;
    std::uint64_t network_seed = 1;
    std::optional<int> vehicle;
};

void emit(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") std::cout << text;
    else write_text(out, text);
}

Network open_network(const std::string& name, std::uint64_t seed) {
    if (name == "synthetic") {
        SyntheticNetworkSpec spec;
        spec.seed = seed;
        return load_network(generate_synthetic_network(spec));
    }
    return load_network_file(name);
}

SimResult read_log(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(fmt::format("cannot open log '{}'", path));
    return result_from_log(EventLog::from_jsonl(in));
}

int do_run(const RunArgs& a, bool network_given, bool replications_given, bool seed_given) {
    std::vector<ScenarioConfig> configs;
    if (!a.preset.empty()) {
        if (a.preset != "paper-matrix") throw ConfigError(fmt::format("unknown preset '{}'", a.preset));
        configs = paper_matrix(a.seed, a.replications);
    } else if (!a.config.empty()) {
        configs = load_config_file(a.config);
    } else {
        ScenarioConfig c;
        c.scenario_id = a.id;
        c.system = parse_system(a.system);
        c.robots = a.robots;
        c.drones = a.drones;
        c.demand_growth_percent = a.growth;
        c.base_demand = a.base_demand;
        c.window = a.window;
        c.seed = a.seed;
        c.demand_file = a.demand;
        configs.push_back(c);
    }
    if (!a.scenarios.empty()) {
        std::erase_if(configs, [&](const ScenarioConfig& c) {
            return std::find(a.scenarios.begin(), a.scenarios.end(), c.scenario_id) == a.scenarios.end();
        });
        if (configs.empty()) throw ConfigError("--scenario matched no scenario ids");
    }
    for (auto& c : configs) {
        if (network_given || a.preset.size() || a.config.empty()) c.network = a.network;
        if (replications_given) c.replications = a.replications;
        if (seed_given) c.seed = a.seed;
        if (!a.demand.empty()) c.demand_file = a.demand;
    }

    MatrixOptions options;
    options.jobs = a.jobs;
    options.synthetic.seed = a.network_seed;
    options.out_dir = a.out_dir;
    options.emit_logs = !a.no_logs;
    options.emit_itineraries = a.itineraries;
    options.emit_paths = a.paths;

    const auto records = run_matrix(configs, options);
    const std::filesystem::path dir = a.out_dir;
    write_text(dir / "metrics.csv", metrics_csv(records));
    write_text(dir / "fleet_sweep.csv", fleet_sweep_csv(records));
    write_text(dir / "los_histogram.csv", los_histogram_csv(records));
    write_text(dir / "five_number.csv", five_number_csv(records));

    int failed = 0;
    for (const auto& r : records) {
        if (r.summary) {
            fmt::print("{:<28} r{}  orders={:<4} mean={:.1f} min  LOS {}\n", r.config.scenario_id, r.replication,
                       r.n_orders, r.summary->mean, to_string(r.summary->system_los));
        } else {
            ++failed;
            fmt::print("{:<28} r{}  FAILED: {}\n", r.config.scenario_id, r.replication, r.error);
        }
    }
    fmt::print("{} runs, {} failed; outputs in {}\n", records.size(), failed, dir.string());
    return failed ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Last-mile food delivery simulator (robots, drones, hybrid)"};
    app.require_subcommand(1);

    RunArgs ra;
    auto* run_cmd = app.add_subcommand("run", "Run scenarios and write metrics, plots and logs");
    run_cmd->add_option("--config", ra.config, "Scenario config JSON")->check(CLI::ExistingFile);
    run_cmd->add_option("--preset", ra.preset, "Built-in scenario set: paper-matrix");
    run_cmd->add_option("--scenario", ra.scenarios, "Run only these scenario ids (repeatable)");
    auto* net_opt = run_cmd->add_option("--network", ra.network, "Network JSON, or 'synthetic'");
    run_cmd->add_option("--network-seed", ra.network_seed, "Seed of the synthetic network");
    run_cmd->add_option("--demand", ra.demand, "Fixed demand JSON instead of generated orders");
    auto* seed_opt = run_cmd->add_option("--seed", ra.seed, "Master seed");
    run_cmd->add_option("--out-dir", ra.out_dir, "Output directory")->capture_default_str();
    auto* rep_opt = run_cmd->add_option("--replications", ra.replications, "Replications per scenario");
    run_cmd->add_flag("--emit-itineraries", ra.itineraries, "Write per-order itinerary CSVs");
    run_cmd->add_flag("--emit-paths", ra.paths, "Write robot road paths");
    run_cmd->add_flag("--no-logs", ra.no_logs, "Skip event logs");
    run_cmd->add_option("--jobs,-j", ra.jobs, "Parallel runs");
    run_cmd->add_option("--system", ra.system, "robot | drone | hybrid");
    run_cmd->add_option("--robots", ra.robots);
    run_cmd->add_option("--drones", ra.drones);
    run_cmd->add_option("--growth", ra.growth, "Demand growth in percent");
    run_cmd->add_option("--base-demand", ra.base_demand);
    run_cmd->add_option("--window", ra.window, "Order window in seconds");
    run_cmd->add_option("--id", ra.id, "Scenario id for a single inline scenario");
    run_cmd->get_option("--config")->excludes("--preset");

    NetworkArgs na;
    auto* net_cmd = app.add_subcommand("generate-network", "Write a synthetic street network");
    net_cmd->add_option("--seed", na.spec.seed);
    net_cmd->add_option("--nodes", na.spec.target_nodes)->capture_default_str();
    net_cmd->add_option("--links", na.spec.target_links)->capture_default_str();
    net_cmd->add_option("--area", na.spec.area_km2, "Square kilometres")->capture_default_str();
    net_cmd->add_option("--restaurant-fraction", na.spec.restaurant_fraction)->capture_default_str();
    net_cmd->add_option("--cluster-radius", na.spec.cluster_radius_fraction)->capture_default_str();
    net_cmd->add_option("--jitter", na.spec.jitter_fraction)->capture_default_str();
    net_cmd->add_flag("--no-depot", na.no_depot);
    net_cmd->add_option("-o,--out", na.out, "Output file (default stdout)");

    DemandArgs da;
    auto* dem_cmd = app.add_subcommand("generate-demand", "Write a seeded demand set");
    dem_cmd->add_option("--network", da.network)->capture_default_str();
    dem_cmd->add_option("--network-seed", da.network_seed);
    dem_cmd->add_option("--orders", da.orders, "Base order count")->capture_default_str();
    dem_cmd->add_option("--growth", da.growth, "Demand growth in percent");
    dem_cmd->add_option("--window", da.window)->capture_default_str();
    dem_cmd->add_option("--seed", da.seed);
    dem_cmd->add_option("-o,--out", da.out, "Output file (default stdout)");

    LogArgs aa;
    auto* audit_cmd = app.add_subcommand("audit", "Replay-check an event log");
    audit_cmd->add_option("log", aa.log)->required()->check(CLI::ExistingFile);
    audit_cmd->add_option("--network", aa.network, "Also recompute distances on this network");
    audit_cmd->add_option("--network-seed", aa.network_seed);

    LogArgs ia;
    auto* itin_cmd = app.add_subcommand("itinerary", "Print the itinerary table of an event log");
    itin_cmd->add_option("log", ia.log)->required()->check(CLI::ExistingFile);
    itin_cmd->add_option("--vehicle", ia.vehicle);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) return do_run(ra, net_opt->count() > 0, rep_opt->count() > 0, seed_opt->count() > 0);
        if (*net_cmd) {
            na.spec.place_depot = !na.no_depot;
            emit(na.out, generate_synthetic_network(na.spec).dump(2) + "\n");
        } else if (*dem_cmd) {
            const auto net = open_network(da.network, da.network_seed);
            const auto orders = generate_demand(net, scale_demand(da.orders, da.growth), da.window, da.seed);
            emit(da.out, to_document(orders).dump(2) + "\n");
        } else if (*audit_cmd) {
            const auto result = read_log(aa.log);
            std::optional<Network> net;
            if (!aa.network.empty()) net = open_network(aa.network, aa.network_seed);
            const auto problems = replay_audit(result, net ? &*net : nullptr);
            for (const auto& p : problems) fmt::print("{}\n", p);
            fmt::print("replay_check: {}\n", problems.empty() ? "true" : "false");
            return problems.empty() ? 0 : 1;
        } else if (*itin_cmd) {
            const auto result = read_log(ia.log);
            std::cout << emit_itinerary(result, ia.vehicle);
        }
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 2;
    }
    return 0;
}
