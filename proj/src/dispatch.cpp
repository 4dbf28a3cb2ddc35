#include "lastmile/dispatch.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <unordered_map>

#include <fmt/format.h>

namespace lastmile {

std::string_view to_string(SystemType system) {
    switch (system) {
        case SystemType::RobotOnly: return "robot";
        case SystemType::DroneOnly: return "drone";
        case SystemType::Hybrid: return "hybrid";
    }
    return "robot";
}

SystemType parse_system(std::string_view text) {
    if (text == "robot") return SystemType::RobotOnly;
    if (text == "drone") return SystemType::DroneOnly;
    if (text == "hybrid") return SystemType::Hybrid;
    throw ConfigError(fmt::format("unknown system '{}' (expected robot, drone or hybrid)", text));
}

std::string_view to_string(QueueKind queue) {
    switch (queue) {
        case QueueKind::Standalone: return "standalone";
        case QueueKind::Robot: return "robot";
        case QueueKind::Drone: return "drone";
    }
    return "standalone";
}

QueueKind parse_queue_kind(std::string_view text) {
    if (text == "standalone") return QueueKind::Standalone;
    if (text == "robot") return QueueKind::Robot;
    if (text == "drone") return QueueKind::Drone;
    throw Error(fmt::format("unknown queue '{}'", text));
}

namespace {

// Nearest Idle vehicle to `target`, lowest id on ties; nullptr if none.
Vehicle* nearest_idle(RoadRouter& router, std::span<Vehicle> vehicles, NodeId target,
                      std::vector<IdleEntry>& snapshot) {
    snapshot.clear();
    Vehicle* best = nullptr;
    double best_distance = 0.0;
    for (auto& v : vehicles) {
        if (!v.idle()) continue;
        const double d = vehicle_distance_to(router, v, target);
        snapshot.push_back({v.id, v.location, d});
        if (!best || d < best_distance || (d == best_distance && v.id < best->id)) {
            best = &v;
            best_distance = d;
        }
    }
    return best;
}

Vehicle* first_idle_at(std::span<Vehicle> vehicles, NodeId depot) {
    Vehicle* best = nullptr;
    for (auto& v : vehicles)
        if (v.idle() && v.location == depot && (!best || v.id < best->id)) best = &v;
    return best;
}

void take(Vehicle& v, OrderId order, VehicleState next) {
    v.state = next;
    v.assignment = order;
}

}  // namespace

std::vector<Assignment> tick_standalone(const DispatchPolicy& policy, RoadRouter& router,
                                        RequestTable& table, std::span<Vehicle> vehicles, Seconds now) {
    std::vector<Assignment> out;
    if (policy.system == SystemType::Hybrid)
        throw Error("tick_standalone called with the hybrid policy");
    std::vector<IdleEntry> snapshot;
    while (std::any_of(vehicles.begin(), vehicles.end(), [](const Vehicle& v) { return v.idle(); })) {
        const auto order = table.pop_next_eligible(now, policy.prep_gate);
        if (!order) break;
        Vehicle* v = nearest_idle(router, vehicles, order->restaurant, snapshot);
        take(*v, order->id, VehicleState::ToPickup);
        out.push_back({*order, v->id, now, QueueKind::Standalone, snapshot});
    }
    return out;
}

std::vector<Assignment> tick_hybrid(const DispatchPolicy& policy, RoadRouter& router, HybridQueues& queues,
                                    std::span<Vehicle> robots, std::span<Vehicle> drones, NodeId depot,
                                    Seconds now) {
    if (policy.system != SystemType::Hybrid) throw Error("tick_hybrid requires the hybrid policy");
    std::vector<Assignment> out;

    auto depot_snapshot = [&](std::span<Vehicle> fleet, NodeId target) {
        std::vector<IdleEntry> snapshot;
        for (const auto& v : fleet)
            if (v.idle() && v.location == depot)
                snapshot.push_back({v.id, v.location, vehicle_distance_to(router, v, target)});
        return snapshot;
    };

    while (!queues.robot_table.empty()) {
        Vehicle* robot = first_idle_at(robots, depot);
        if (!robot) break;
        const auto order = queues.robot_table.pop_next_eligible(now, policy.prep_gate);
        if (!order) break;
        auto snapshot = depot_snapshot(robots, order->restaurant);
        take(*robot, order->id, VehicleState::ToPickup);
        out.push_back({*order, robot->id, now, QueueKind::Robot, std::move(snapshot)});
    }

    while (!queues.drone_table.empty()) {
        Vehicle* drone = first_idle_at(drones, depot);
        if (!drone) break;
        const auto order = queues.drone_table.pop_next_eligible(now, 0);
        if (!order) break;
        // Pickup point is the depot itself.
        auto snapshot = depot_snapshot(drones, depot);
        take(*drone, order->id, VehicleState::ToDropoff);
        out.push_back({*order, drone->id, now, QueueKind::Drone, std::move(snapshot)});
    }
    return out;
}

bool assignment_order_check(const EventLog& log) {
    std::unordered_map<OrderId, Seconds> requested;
    std::unordered_map<OrderId, Seconds> at_depot;
    // queue -> (position key) -> (assignment time, record index)
    using Key = std::pair<Seconds, OrderId>;
    std::map<QueueKind, std::vector<std::pair<Key, std::pair<Seconds, std::size_t>>>> queues;

    const auto& records = log.records();
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (const auto* e = std::get_if<OrderPlaced>(&records[i])) {
            requested[e->order] = e->t;
        } else if (const auto* e = std::get_if<DepotArrival>(&records[i])) {
            at_depot[e->order] = e->t;
        } else if (const auto* e = std::get_if<Assigned>(&records[i])) {
            const auto& source = e->queue == QueueKind::Drone ? at_depot : requested;
            const auto it = source.find(e->order);
            if (it == source.end()) return false;  // assigned before it joined the queue
            queues[e->queue].push_back({{it->second, e->order}, {e->t, i}});
        }
    }
    for (auto& [queue, entries] : queues) {
        std::sort(entries.begin(), entries.end());
        for (std::size_t k = 1; k < entries.size(); ++k)
            if (entries[k].second < entries[k - 1].second) return false;
    }
    return true;
}

}  // namespace lastmile
