#include "lastmile/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <cctype>
#include <thread>
#include <tuple>

#include <fmt/format.h>

#include "lastmile/itinerary.hpp"
#include "lastmile/rng.hpp"

namespace lastmile {

using nlohmann::ordered_json;

void validate(const ScenarioConfig& c) {
    auto fail = [&](const std::string& rule) {
        throw ConfigError(fmt::format("scenario '{}': {}", c.scenario_id, rule));
    };
    if (c.scenario_id.empty()) throw ConfigError("scenario_id must not be empty");
    if (c.robots < 0 || c.drones < 0) fail("fleet sizes must be non-negative");
    switch (c.system) {
    case SystemType::RobotOnly:
        if (c.robots < 1) fail("a robot system needs at least one robot");
        if (c.drones != 0) fail("a robot system cannot have drones");
        break;
    case SystemType::DroneOnly:
        if (c.drones < 1) fail("a drone system needs at least one drone");
        if (c.robots != 0) fail("a drone system cannot have robots");
        break;
    case SystemType::Hybrid:
        if (c.robots < 1 || c.drones < 1) fail("a hybrid system needs at least one robot and one drone");
        break;
    }
    if (!std::isfinite(c.demand_growth_percent) || c.demand_growth_percent < 0.0)
        fail("demand_growth_percent must be finite and non-negative");
    if (c.base_demand < 1) fail("base_demand must be at least 1");
    if (c.window < 1) fail("window must be at least 1 second");
    if (c.replications < 1) fail("replications must be at least 1");
    if (c.network.empty()) fail("network must name a file or \"synthetic\"");
}

void validate(const ScenarioConfig& c, const Network& net) {
    validate(c);
    if (c.system == SystemType::Hybrid && !net.depot())
        throw ConfigError(fmt::format("scenario '{}': a hybrid system needs a depot node in the network", c.scenario_id));
    if (c.demand_file.empty() &&
        (net.nodes_of_kind(NodeKind::Restaurant).empty() || net.nodes_of_kind(NodeKind::Home).empty()))
        throw ConfigError(fmt::format("scenario '{}': generating demand needs restaurant and home nodes",
                                      c.scenario_id));
}

namespace {

void apply_key(ScenarioConfig& c, const std::string& key, const ordered_json& value) {
    try {
        if (key == "scenario_id") c.scenario_id = value.get<std::string>();
        else if (key == "system") c.system = parse_system(value.get<std::string>());
        else if (key == "robots") c.robots = value.get<int>();
        else if (key == "drones") c.drones = value.get<int>();
        else if (key == "demand_growth_percent") c.demand_growth_percent = value.get<double>();
        else if (key == "base_demand") c.base_demand = value.get<int>();
        else if (key == "window") c.window = value.get<Seconds>();
        else if (key == "seed") c.seed = value.get<std::uint64_t>();
        else if (key == "network") c.network = value.get<std::string>();
        else if (key == "demand_file") c.demand_file = value.get<std::string>();
        else if (key == "replications") c.replications = value.get<int>();
        else throw ConfigError(fmt::format("unknown config key '{}'", key));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(fmt::format("config key '{}': {}", key, e.what()));
    }
}

ScenarioConfig parse_one(const ordered_json& doc, ScenarioConfig base) {
    if (!doc.is_object()) throw ConfigError("each scenario must be a JSON object");
    for (const auto& [key, value] : doc.items()) apply_key(base, key, value);
    validate(base);
    return base;
}

}  // namespace

std::vector<ScenarioConfig> load_config(const ordered_json& doc) {
    std::vector<ScenarioConfig> out;
    if (doc.is_array()) {
        for (const auto& item : doc) out.push_back(parse_one(item, {}));
    } else if (doc.is_object() && doc.contains("scenarios")) {
        ScenarioConfig defaults;
        for (const auto& [key, value] : doc.items())
            if (key != "scenarios") apply_key(defaults, key, value);
        if (!doc["scenarios"].is_array()) throw ConfigError("'scenarios' must be an array");
        for (const auto& item : doc["scenarios"]) out.push_back(parse_one(item, defaults));
    } else {
        out.push_back(parse_one(doc, {}));
    }
    if (out.empty()) throw ConfigError("config lists no scenarios");
    return out;
}

std::vector<ScenarioConfig> load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
    ordered_json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(fmt::format("config '{}': {}", path.string(), e.what()));
    }
    return load_config(doc);
}

ordered_json to_json(const ScenarioConfig& c) {
    ordered_json doc{{"scenario_id", c.scenario_id},
                     {"system", std::string(to_string(c.system))},
                     {"robots", c.robots},
                     {"drones", c.drones},
                     {"demand_growth_percent", c.demand_growth_percent},
                     {"base_demand", c.base_demand},
                     {"window", c.window},
                     {"seed", c.seed},
                     {"network", c.network},
                     {"replications", c.replications}};
    if (!c.demand_file.empty()) doc["demand_file"] = c.demand_file;
    return doc;
}

std::vector<ScenarioConfig> paper_matrix(std::uint64_t master_seed, int replications) {
    std::vector<ScenarioConfig> out;
    int row = 0;
    auto add = [&](SystemType system, int robots, int drones, double growth) {
        ScenarioConfig c;
        const int fleet = system == SystemType::Hybrid ? 0 : (system == SystemType::RobotOnly ? robots : drones);
        c.scenario_id = system == SystemType::Hybrid
                            ? fmt::format("s{:02}-hybrid{}x{}-g{:g}", row, robots, drones, growth)
                            : fmt::format("s{:02}-{}{}-g{:g}", row, to_string(system), fleet, growth);
        c.system = system;
        c.robots = robots;
        c.drones = drones;
        c.demand_growth_percent = growth;
        c.seed = master_seed;
        c.replications = replications;
        out.push_back(std::move(c));
    };
    for (int robots : {25, 50, 75, 100, 125, 150}) {
        ++row;
        for (double g : {0.0, 10.0, 20.0}) add(SystemType::RobotOnly, robots, 0, g);
    }
    for (int drones : {5, 10, 15, 20, 25, 30}) {
        ++row;
        for (double g : {0.0, 10.0, 20.0}) add(SystemType::DroneOnly, 0, drones, g);
    }
    for (auto [robots, drones] : {std::pair{25, 10}, {25, 15}, {25, 20}, {30, 10}, {30, 15}, {30, 20}}) {
        ++row;
        add(SystemType::Hybrid, robots, drones, 20.0);
    }
    return out;
}

std::uint64_t replication_seed(std::uint64_t seed, int replication) {
    return derive_seed(seed, {stream::kReplication, static_cast<std::uint64_t>(replication)});
}

std::uint64_t demand_seed(std::uint64_t rep_seed, double growth_percent) {
    const auto tag = static_cast<std::uint64_t>(std::llround(growth_percent * 1000.0));
    return derive_seed(rep_seed, {stream::kDemand, tag});
}

namespace {

std::string file_stem(const RunRecord& r) {
    std::string id = r.config.scenario_id;
    for (auto& ch : id)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_' && ch != '.') ch = '_';
    return fmt::format("{}_r{}", id, r.replication);
}

using DemandKey = std::tuple<std::string, std::string, double, int, Seconds, std::uint64_t>;

struct Task {
    std::size_t record;
    std::shared_ptr<const Network> net;
    std::shared_ptr<const std::vector<Order>> orders;
};

void execute(RunRecord& rec, const Task& task, const MatrixOptions& options) {
    const auto& c = rec.config;
    FleetSpec fleet{c.robots, c.drones, {}, {}};
    try {
        auto result = run(*task.net, *task.orders, DispatchPolicy::for_system(c.system), fleet, rec.seed, options.run);
        rec.summary = summarize(result);
        if (options.out_dir) {
            const auto stem = file_stem(rec);
            if (options.emit_logs) write_text(*options.out_dir / "logs" / (stem + ".jsonl"), result.log.to_jsonl());
            if (options.emit_itineraries)
                write_text(*options.out_dir / "itineraries" / (stem + ".csv"), emit_itinerary(result));
            if (options.emit_paths) write_text(*options.out_dir / "paths" / (stem + ".txt"), emit_paths(result));
        }
        if (options.keep_results) rec.result = std::move(result);
    } catch (const SimulationAborted& e) {
        rec.error = e.what();
    }
}

}  // namespace

std::vector<RunRecord> run_matrix(const std::vector<ScenarioConfig>& configs, const MatrixOptions& options) {
    std::map<std::string, std::shared_ptr<const Network>> networks;
    std::map<DemandKey, std::shared_ptr<const std::vector<Order>>> demands;
    std::vector<RunRecord> records;
    std::vector<Task> tasks;

    for (const auto& c : configs) {
        validate(c);
        auto& net = networks[c.network];
        if (!net) {
            net = std::make_shared<const Network>(c.network == "synthetic"
                                                      ? load_network(generate_synthetic_network(options.synthetic))
                                                      : load_network_file(c.network));
        }
        validate(c, *net);
        for (int rep = 0; rep < c.replications; ++rep) {
            RunRecord rec;
            rec.config = c;
            rec.replication = rep;
            rec.seed = replication_seed(c.seed, rep);
            DemandKey key{c.network, c.demand_file, c.demand_growth_percent, c.base_demand, c.window, rec.seed};
            auto& orders = demands[key];
            if (!orders) {
                orders = std::make_shared<const std::vector<Order>>(
                    c.demand_file.empty()
                        ? generate_demand(*net, scale_demand(c.base_demand, c.demand_growth_percent), c.window,
                                          demand_seed(rec.seed, c.demand_growth_percent))
                        : load_demand_file(c.demand_file, *net, c.window));
            }
            rec.n_orders = static_cast<int>(orders->size());
            tasks.push_back({records.size(), net, orders});
            records.push_back(std::move(rec));
        }
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) execute(records[tasks[i].record], tasks[i], options);
    };
    const auto jobs = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(tasks.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    std::stable_sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        return std::tie(a.config.scenario_id, a.replication) < std::tie(b.config.scenario_id, b.replication);
    });
    return records;
}

namespace {

std::string csv_quote(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char ch : text) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

std::string metrics_csv(std::span<const RunRecord> records) {
    std::string out =
        "scenario_id,replication,seed,system,robots,drones,demand,n_orders,mean_wait_min,median,min,max,q1,q3,"
        "losA,losB,losC,losD,losF,system_los,status\n";
    for (const auto& r : records) {
        const auto& c = r.config;
        out += fmt::format("{},{},{},{},{},{},{:g},{},", csv_quote(c.scenario_id), r.replication, r.seed,
                           to_string(c.system), c.robots, c.drones, c.demand_growth_percent, r.n_orders);
        if (r.summary) {
            const auto& s = *r.summary;
            out += fmt::format("{:.1f},{:.2f},{:.2f},{:.2f},{:.2f},{:.2f},{},{},{},{},{},{},ok\n", s.mean, s.median,
                               s.min, s.max, s.q1, s.q3, s.los_histogram[0], s.los_histogram[1], s.los_histogram[2],
                               s.los_histogram[3], s.los_histogram[4], to_string(s.system_los));
        } else {
            out += fmt::format(",,,,,,,,,,,,{}\n", csv_quote("failed: " + r.error));
        }
    }
    return out;
}

std::string fleet_sweep_csv(std::span<const RunRecord> records) {
    // (system, demand, fixed robots for hybrid) -> fleet size -> (sum of means, count)
    using Group = std::tuple<SystemType, double, int>;
    std::map<Group, std::map<int, std::pair<double, int>>> groups;
    for (const auto& r : records) {
        if (!r.summary) continue;
        const auto& c = r.config;
        const int fixed = c.system == SystemType::Hybrid ? c.robots : 0;
        const int size = c.system == SystemType::RobotOnly ? c.robots : c.drones;
        auto& cell = groups[{c.system, c.demand_growth_percent, fixed}][size];
        cell.first += r.summary->exact_mean();
        cell.second += 1;
    }
    std::string out = "system,demand,robots,drones,fleet_size,mean_wait_min,replications,plateau\n";
    for (const auto& [group, sizes] : groups) {
        const auto& [system, growth, fixed] = group;
        std::map<int, double> means;
        for (const auto& [size, cell] : sizes) means[size] = cell.first / cell.second;
        const int plateau = means.size() >= 2 ? fleet_sweep_summary(means).plateau_fleet : 0;
        for (const auto& [size, cell] : sizes) {
            const int robots = system == SystemType::RobotOnly ? size : fixed;
            const int drones = system == SystemType::RobotOnly ? 0 : size;
            out += fmt::format("{},{:g},{},{},{},{:.3f},{},{}\n", to_string(system), growth, robots, drones, size,
                               means[size], cell.second, plateau == size ? 1 : 0);
        }
    }
    return out;
}

std::string los_histogram_csv(std::span<const RunRecord> records) {
    std::string out = "scenario_id,replication,los,count,share\n";
    for (const auto& r : records) {
        if (!r.summary) continue;
        for (auto los : kLosCategories) {
            const auto count = r.summary->count(los);
            out += fmt::format("{},{},{},{},{:.4f}\n", csv_quote(r.config.scenario_id), r.replication, to_string(los),
                               count, r.summary->n ? static_cast<double>(count) / r.summary->n : 0.0);
        }
    }
    return out;
}

std::string five_number_csv(std::span<const RunRecord> records) {
    std::string out = "scenario_id,replication,system,min,q1,median,q3,max,mean\n";
    for (const auto& r : records) {
        if (!r.summary) continue;
        const auto& s = *r.summary;
        out += fmt::format("{},{},{},{:.2f},{:.2f},{:.2f},{:.2f},{:.2f},{:.1f}\n", csv_quote(r.config.scenario_id),
                           r.replication, to_string(r.config.system), s.min, s.q1, s.median, s.q3, s.max, s.mean);
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
    out << text;
}

}  // namespace lastmile
