// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance          all criteria
//   acceptance N        criterion N only (ctest runs each separately)

#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>

#include <fmt/format.h>

#include "lastmile/analytics.hpp"
#include "lastmile/scenario.hpp"
#include "support.hpp"

using namespace lastmile;

namespace {

constexpr double kSweepNoise = 0.05;         // adjacent robot means may rise by at most 5%
constexpr int kDronePlateauLimit = 20;       // drone sweep must plateau at or below this fleet
constexpr double kMatrixSecondsLimit = 60.0;
constexpr int kSweepReplications = 5;
constexpr double kSweepGrowth = 20.0;        // 408 orders
constexpr int kOracleGraphs = 100;

struct Outcome {
    bool pass;
    std::string detail;
};

struct MatrixRun {
    std::vector<RunRecord> records;
    double seconds;
};

const MatrixRun& matrix_run() {
    static const MatrixRun run = [] {
        MatrixOptions options;
        options.keep_results = true;
        const auto start = std::chrono::steady_clock::now();
        auto records = run_matrix(paper_matrix(), options);
        const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
        return MatrixRun{std::move(records), took.count()};
    }();
    return run;
}

const Network& synthetic() {
    static const Network net = load_network(generate_synthetic_network({}));
    return net;
}

// Fleet size -> mean wait (minutes) averaged over replications at +20%.
struct Sweeps {
    std::map<int, double> robot;
    std::map<int, double> drone;
    double hybrid = 0.0;
    int failed = 0;
};

const Sweeps& sweeps() {
    static const Sweeps s = [] {
        std::vector<ScenarioConfig> configs;
        auto add = [&](SystemType system, int robots, int drones) {
            ScenarioConfig c;
            c.scenario_id = fmt::format("{}-{}-{}", to_string(system), robots, drones);
            c.system = system;
            c.robots = robots;
            c.drones = drones;
            c.demand_growth_percent = kSweepGrowth;
            c.replications = kSweepReplications;
            configs.push_back(c);
        };
        for (int r : {25, 50, 75, 100, 125, 150}) add(SystemType::RobotOnly, r, 0);
        for (int d : {5, 10, 15, 20, 25, 30}) add(SystemType::DroneOnly, 0, d);
        add(SystemType::Hybrid, 25, 15);
        MatrixOptions options;
        options.jobs = 4;
        Sweeps out;
        std::map<std::tuple<SystemType, int, int>, std::pair<double, int>> acc;
        for (const auto& r : run_matrix(configs, options)) {
            if (!r.summary) {
                ++out.failed;
                continue;
            }
            auto& cell = acc[{r.config.system, r.config.robots, r.config.drones}];
            cell.first += r.summary->exact_mean();
            cell.second += 1;
        }
        for (const auto& [key, cell] : acc) {
            const auto& [system, robots, drones] = key;
            const double mean = cell.first / cell.second;
            if (system == SystemType::RobotOnly) out.robot[robots] = mean;
            else if (system == SystemType::DroneOnly) out.drone[drones] = mean;
            else out.hybrid = mean;
        }
        return out;
    }();
    return s;
}

std::string join_means(const std::map<int, double>& means) {
    std::string out;
    for (const auto& [fleet, mean] : means) out += fmt::format("{}{}:{:.2f}", out.empty() ? "" : " ", fleet, mean);
    return out;
}

Outcome itinerary_arithmetic() {
    std::size_t checked = 0;
    std::string bad;
    for (const auto& rec : matrix_run().records) {
        if (!rec.result) return {false, fmt::format("{} did not finish", rec.config.scenario_id)};
        const auto& r = *rec.result;
        for (const auto& [id, o] : r.per_order) {
            ++checked;
            const bool hybrid = r.policy.system == SystemType::Hybrid;
            bool ok = o.dropoff && o.wait_time && *o.wait_time == *o.dropoff - o.order.request_time;
            if (ok && !hybrid) ok = *o.pickup >= o.order.request_time + kPrepGate;
            if (ok && hybrid) {
                ok = *o.drone_pickup >= *o.depot_arrival;
                if (o.order.home != *r.depot) ok = ok && *o.dropoff > *o.drone_pickup;
            }
            if (!ok && bad.empty()) bad = fmt::format("{} order {}", rec.config.scenario_id, id);
        }
    }
    if (!bad.empty()) return {false, "violated at " + bad};
    return {true, fmt::format("{} orders over {} runs", checked, matrix_run().records.size())};
}

Outcome hand_traces() {
    auto line = testing::line_network({{0, NodeKind::Home}, {45, NodeKind::Restaurant}, {135, NodeKind::Home}});
    auto s = run(line, std::vector<Order>{{1, 10, 2, 3}}, DispatchPolicy::for_system(SystemType::RobotOnly),
                 {1, 0, {1}, {}}, 0);
    const auto& a = s.per_order.at(1);

    std::vector<Node> nodes{{1, 0, 0, NodeKind::Depot}, {2, 90, 0, NodeKind::Restaurant},
                            {3, -5000.0 / 9.0, 0, NodeKind::Home}};
    Network hub(nodes, {{1, 2}, {1, 3}});
    auto h = run(hub, std::vector<Order>{{1, 0, 2, 3}}, DispatchPolicy::for_system(SystemType::Hybrid), {1, 1, {}, {}},
                 0);
    const auto& b = h.per_order.at(1);

    const bool pass = a.assigned == 730 && a.pickup == 740 && a.dropoff == 760 && a.wait_time == 750 &&
                      b.pickup == 20 && b.depot_arrival == 40 && b.drone_pickup == 40 && b.dropoff == 90 &&
                      b.wait_time == 90 && replay_check(s, &line) && replay_check(h, &hub);
    return {pass, fmt::format("standalone {}/{}/{}/{}, hybrid rP={} rD={} dP={} dD={} W={}", a.assigned.value_or(-1),
                              a.pickup.value_or(-1), a.dropoff.value_or(-1), a.wait_time.value_or(-1),
                              b.pickup.value_or(-1), b.depot_arrival.value_or(-1), b.drone_pickup.value_or(-1),
                              b.dropoff.value_or(-1), b.wait_time.value_or(-1))};
}

Outcome dijkstra_oracle() {
    std::size_t pairs = 0;
    for (std::uint64_t seed = 1; seed <= kOracleGraphs; ++seed) {
        const int n = 2 + static_cast<int>(seed % 7);
        auto net = testing::random_connected(seed, n);
        for (const auto& a : net.nodes()) {
            const auto tree = dijkstra(net, a.id);
            for (const auto& b : net.nodes()) {
                ++pairs;
                if (tree.dist[net.index_of(b.id)] != testing::brute_force_distance(net, a.id, b.id))
                    return {false, fmt::format("graph seed {} pair {}->{}", seed, a.id, b.id)};
            }
        }
    }
    return {true, fmt::format("{} graphs, {} pairs, exact", kOracleGraphs, pairs)};
}

Outcome determinism() {
    const auto& first = matrix_run();
    MatrixOptions options;
    options.keep_results = true;
    options.jobs = 4;
    const auto second = run_matrix(paper_matrix(), options);
    const bool csv_same = metrics_csv(first.records) == metrics_csv(second);
    bool logs_same = first.records.size() == second.size();
    for (std::size_t i = 0; logs_same && i < second.size(); ++i)
        logs_same = first.records[i].result->log.to_jsonl() == second[i].result->log.to_jsonl();
    const bool fast = first.seconds < kMatrixSecondsLimit;
    return {csv_same && logs_same && fast,
            fmt::format("metrics CSV {}, event logs {}, matrix took {:.2f} s (limit {:.0f} s)",
                        csv_same ? "identical" : "DIFFER", logs_same ? "identical" : "DIFFER", first.seconds,
                        kMatrixSecondsLimit)};
}

Outcome replay() {
    std::size_t logs = 0;
    for (const auto& rec : matrix_run().records) {
        ++logs;
        const auto& r = *rec.result;
        if (!replay_check(r, &synthetic()))
            return {false, fmt::format("{}: {}", rec.config.scenario_id, replay_audit(r, &synthetic()).front())};
        const auto rebuilt = result_from_log(EventLog::from_jsonl(r.log.to_jsonl()));
        if (!replay_check(rebuilt, &synthetic()))
            return {false, fmt::format("{} after JSON round trip", rec.config.scenario_id)};
    }
    return {true, fmt::format("{} logs audited, also after a JSON round trip", logs)};
}

Outcome plateau() {
    const auto& s = sweeps();
    bool robot_ok = s.failed == 0 && s.robot.size() == 6;
    for (auto it = s.robot.begin(); robot_ok && std::next(it) != s.robot.end(); ++it)
        robot_ok = std::next(it)->second <= it->second * (1.0 + kSweepNoise);
    const int drone_plateau = fleet_sweep_summary(s.drone).plateau_fleet;
    const bool drone_ok = s.failed == 0 && drone_plateau <= kDronePlateauLimit;
    return {robot_ok && drone_ok,
            fmt::format("robot [{}] {}; drone [{}] plateau at {} (limit {}) {}", join_means(s.robot),
                        robot_ok ? "ok" : "NOT nonincreasing", join_means(s.drone), drone_plateau,
                        kDronePlateauLimit, drone_ok ? "ok" : "too late")};
}

Outcome hybrid_superiority() {
    const auto& s = sweeps();
    double best_robot = INFINITY, best_drone = INFINITY;
    for (const auto& [_, m] : s.robot) best_robot = std::min(best_robot, m);
    for (const auto& [_, m] : s.drone) best_drone = std::min(best_drone, m);
    const bool pass = s.failed == 0 && s.hybrid < best_robot && s.hybrid < best_drone;
    return {pass, fmt::format("hybrid 25x15 {:.2f} min vs best robot {:.2f}, best drone {:.2f}", s.hybrid, best_robot,
                              best_drone)};
}

Outcome los_probes() {
    const std::vector<std::pair<double, LosCategory>> probes{{60, LosCategory::A},   {1200, LosCategory::A},
                                                             {1260, LosCategory::B}, {1800, LosCategory::B},
                                                             {2400, LosCategory::C}, {3000, LosCategory::D},
                                                             {3001, LosCategory::F}};
    std::string got;
    bool pass = true;
    for (const auto& [seconds, expected] : probes) {
        const auto los = los_of(seconds);
        pass = pass && los == expected;
        got += fmt::format("{}{:g}->{}", got.empty() ? "" : " ", seconds, to_string(los));
    }
    return {pass, got};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"itinerary arithmetic", itinerary_arithmetic},
        {"hand traces", hand_traces},
        {"dijkstra oracle", dijkstra_oracle},
        {"determinism", determinism},
        {"replay audit", replay},
        {"fleet-size plateau", plateau},
        {"hybrid superiority", hybrid_superiority},
        {"LOS probes", los_probes},
    };
    std::optional<std::size_t> only;
    if (argc > 1) only = std::strtoul(argv[1], nullptr, 10);

    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only && *only != i + 1) continue;
        Outcome outcome{false, ""};
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, fmt::format("exception: {}", e.what())};
        }
        all = all && outcome.pass;
        fmt::print("criterion {} {}: {}  {}\n", i + 1, criteria[i].first, outcome.pass ? "PASS" : "FAIL",
                   outcome.detail);
    }
    return all ? 0 : 1;
}
