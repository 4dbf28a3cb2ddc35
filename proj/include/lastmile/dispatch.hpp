#pragma once

#include <span>
#include <vector>

#include "lastmile/demand.hpp"
#include "lastmile/event_log.hpp"
#include "lastmile/fleet.hpp"
#include "lastmile/netgraph.hpp"
#include "lastmile/policy.hpp"

namespace lastmile {

struct Assignment {
    Order order;
    VehicleId vehicle = 0;
    Seconds time = 0;
    QueueKind queue = QueueKind::Standalone;
    std::vector<IdleEntry> idle_snapshot;
};

struct HybridQueues {
    RequestTable robot_table;  // keyed by request time
    RequestTable drone_table;  // keyed by depot arrival time
};

/// One dispatcher update for the robot-only or drone-only system.
///
/// While an order past its preparation gate and an Idle vehicle both exist,
/// the front eligible order goes to the Idle vehicle nearest its restaurant
/// (lowest vehicle id on ties). Chosen vehicles leave Idle for ToPickup with
/// the order attached; creating legs is up to the caller.
std::vector<Assignment> tick_standalone(const DispatchPolicy& policy, RoadRouter& router,
                                        RequestTable& table, std::span<Vehicle> vehicles, Seconds now);

/// One dispatcher update for the hybrid hub-and-spoke system.
///
/// Phase 1 hands front robot-table orders to robots Idle at the depot (they
/// leave for ToPickup). Phase 2 hands front drone-table orders to drones Idle
/// at the depot; the meal is loaded on the spot, so drones leave for
/// ToDropoff directly.
std::vector<Assignment> tick_hybrid(const DispatchPolicy& policy, RoadRouter& router, HybridQueues& queues,
                                    std::span<Vehicle> robots, std::span<Vehicle> drones, NodeId depot,
                                    Seconds now);

/// FIFO audit: within each queue, orders are assigned in the order they
/// joined it. Queue position is (request time, id) for the standalone and
/// robot tables and (depot arrival time, id) for the drone table.
bool assignment_order_check(const EventLog& log);

}  // namespace lastmile
