#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lastmile/demand.hpp"
#include "lastmile/event_log.hpp"
#include "lastmile/fleet.hpp"
#include "lastmile/netgraph.hpp"
#include "lastmile/policy.hpp"

namespace lastmile {

/// Fleet composition. Robots get ids 1..robots and drones the ids after them.
/// Standalone vehicles start at nodes drawn uniformly from all nodes unless
/// explicit start nodes are supplied; hybrid vehicles always start at the depot.
struct FleetSpec {
    int robots = 0;
    int drones = 0;
    std::vector<NodeId> robot_starts;  // empty, or exactly `robots` entries
    std::vector<NodeId> drone_starts;  // empty, or exactly `drones` entries
};

struct RunOptions {
    Seconds horizon = 86'400;
};

// Lifecycle timestamps of one order. Standalone runs fill `pickup` (P_t);
// hybrid runs fill `pickup` (rP_t), `depot_arrival` (rD_t) and
// `drone_pickup` (dP_t). `dropoff` is D_t or dD_t.
struct OrderRecord {
    Order order;
    std::optional<Seconds> assigned;
    std::optional<Seconds> pickup;
    std::optional<Seconds> depot_arrival;
    std::optional<Seconds> drone_pickup;
    std::optional<Seconds> dropoff;
    std::optional<VehicleId> vehicle;  // delivering vehicle (robot in hybrid)
    std::optional<VehicleId> drone;    // hybrid only
    std::optional<Seconds> wait_time;
};

struct CompletedLeg {
    VehicleId vehicle = 0;
    std::optional<OrderId> order;
    Leg leg;
};

struct SimResult {
    DispatchPolicy policy;
    std::optional<NodeId> depot;
    EventLog log;
    std::map<OrderId, OrderRecord> per_order;
    Seconds termination_time = 0;
    std::vector<CompletedLeg> legs;  // in completion order
};

/// Runs one scenario to completion. Per tick: finish legs arriving now, place
/// orders requested now, call the dispatcher, repeat finish/dispatch while
/// zero-length legs keep freeing vehicles, then advance the clock by one
/// second. Ends at the tick of the last drop-off.
///
/// Throws SimulationAborted past `options.horizon` with orders undelivered.
SimResult run(const Network& net, std::span<const Order> orders, const DispatchPolicy& policy,
              const FleetSpec& fleet, std::uint64_t seed, const RunOptions& options = {});

/// Rebuilds per-order records and the termination time from a log.
SimResult result_from_log(EventLog log);

/// Self-audit of a completed result. Returns one message per violated rule:
/// record ordering and per-order lifecycle, wait arithmetic, FIFO,
/// greedy-nearest against the idle snapshots, capacity 1, preparation gate,
/// hybrid depot discipline, kinematic consistency of every leg, and order
/// conservation. With a network, snapshot distances are recomputed too.
std::vector<std::string> replay_audit(const SimResult& result, const Network* net = nullptr);

bool replay_check(const SimResult& result, const Network* net = nullptr);

}  // namespace lastmile
