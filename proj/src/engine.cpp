#include "lastmile/engine.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

#include <fmt/format.h>

#include "lastmile/dispatch.hpp"
#include "lastmile/rng.hpp"

namespace lastmile {

namespace {

Vehicle make_vehicle(VehicleId id, VehicleMode mode, NodeId location) {
    Vehicle v;
    v.id = id;
    v.mode = mode;
    v.location = location;
    return v;
}

class Simulation {
public:
    Simulation(const Network& net, std::span<const Order> orders, const DispatchPolicy& policy,
               const FleetSpec& fleet, std::uint64_t seed, const RunOptions& options)
        : net_(net), router_(net), orders_(orders), policy_(policy), options_(options) {
        validate(fleet);
        depot_ = net.depot();
        result_.policy = policy;
        result_.depot = hybrid() ? depot_ : std::nullopt;
        for (const auto& o : orders_) by_id_.emplace(o.id, o);
        place_fleet(fleet, seed);
    }

    SimResult run() {
        const auto n = orders_.size();
        std::size_t next = 0;
        for (Seconds now = 0; n > 0; ++now) {
            if (now > options_.horizon) abort(now, n);
            complete_due(now);
            while (next < n && orders_[next].request_time <= now) place(orders_[next++]);
            for (;;) {
                apply(dispatch(now), now);
                if (!complete_due(now)) break;
            }
            if (delivered_ == n) {
                result_.termination_time = now;
                break;
            }
        }
        auto built = result_from_log(result_.log);
        result_.per_order = std::move(built.per_order);
        return std::move(result_);
    }

private:
    bool hybrid() const { return policy_.system == SystemType::Hybrid; }

    void validate(const FleetSpec& fleet) const {
        if (fleet.robots < 0 || fleet.drones < 0) throw ConfigError("fleet sizes must be non-negative");
        switch (policy_.system) {
            case SystemType::RobotOnly:
                if (fleet.drones != 0) throw ConfigError("robot-only system cannot include drones");
                break;
            case SystemType::DroneOnly:
                if (fleet.robots != 0) throw ConfigError("drone-only system cannot include robots");
                break;
            case SystemType::Hybrid:
                if (!net_.depot()) throw ConfigError("hybrid system requires a network with a depot");
                break;
        }
        if (!fleet.robot_starts.empty() && fleet.robot_starts.size() != static_cast<std::size_t>(fleet.robots))
            throw ConfigError("robot_starts must list one node per robot");
        if (!fleet.drone_starts.empty() && fleet.drone_starts.size() != static_cast<std::size_t>(fleet.drones))
            throw ConfigError("drone_starts must list one node per drone");
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            const auto& o = orders_[i];
            if (o.request_time < 0) throw ConfigError(fmt::format("order {} has a negative request time", o.id));
            if (i > 0 && o.request_time < orders_[i - 1].request_time)
                throw ConfigError(fmt::format("orders must be sorted by request time (order {})", o.id));
            net_.index_of(o.restaurant);
            net_.index_of(o.home);
        }
    }

    void place_fleet(const FleetSpec& fleet, std::uint64_t seed) {
        Rng rng(derive_seed(seed, {stream::kPlacement}));
        const auto& nodes = net_.nodes();
        auto start_of = [&](const std::vector<NodeId>& explicit_starts, int i) {
            if (hybrid()) return *depot_;
            if (!explicit_starts.empty()) {
                net_.index_of(explicit_starts[static_cast<std::size_t>(i)]);
                return explicit_starts[static_cast<std::size_t>(i)];
            }
            return nodes[rng.uniform_below(nodes.size())].id;
        };
        VehicleId id = 1;
        for (int i = 0; i < fleet.robots; ++i)
            vehicles_.push_back(make_vehicle(id++, VehicleMode::Robot, start_of(fleet.robot_starts, i)));
        robot_count_ = vehicles_.size();
        for (int i = 0; i < fleet.drones; ++i)
            vehicles_.push_back(make_vehicle(id++, VehicleMode::Drone, start_of(fleet.drone_starts, i)));

        result_.log.append(RunStarted{0, policy_.system, policy_.prep_gate, result_.depot});
        for (const auto& v : vehicles_) result_.log.append(VehicleIdle{0, v.id, v.mode, v.location, {}});
    }

    Vehicle& vehicle(VehicleId id) { return vehicles_[static_cast<std::size_t>(id - 1)]; }
    const Order& order(OrderId id) const { return by_id_.at(id); }

    void place(const Order& o) {
        result_.log.append(OrderPlaced{o.request_time, o.id, o.restaurant, o.home});
        if (hybrid())
            hybrid_.robot_table.push(o, o.request_time);
        else
            table_.push(o, o.request_time);
    }

    std::vector<Assignment> dispatch(Seconds now) {
        std::span<Vehicle> all(vehicles_);
        if (!hybrid()) return tick_standalone(policy_, router_, table_, all, now);
        return tick_hybrid(policy_, router_, hybrid_, all.first(robot_count_), all.subspan(robot_count_),
                           *depot_, now);
    }

    void apply(const std::vector<Assignment>& assignments, Seconds now) {
        for (const auto& a : assignments) {
            result_.log.append(Assigned{a.time, a.order.id, a.vehicle, a.queue, a.idle_snapshot});
            auto& v = vehicle(a.vehicle);
            if (a.queue == QueueKind::Drone) {
                result_.log.append(PickedUp{now, a.order.id, v.id, *depot_, {*depot_, now, 0.0}});
                start_leg(v, *depot_, a.order.home, now);
            } else {
                start_leg(v, v.location, a.order.restaurant, now);
            }
        }
    }

    void start_leg(Vehicle& v, NodeId origin, NodeId destination, Seconds now) {
        if (v.mode == VehicleMode::Robot) {
            auto path = router_.path(origin, destination);
            const double distance = path.total_length;
            v.leg = dispatch_leg(v, origin, destination, distance, now, std::move(path));
        } else {
            const double distance = straight_line_distance(net_.node(origin), net_.node(destination));
            v.leg = dispatch_leg(v, origin, destination, distance, now);
        }
        v.busy_until = v.leg->arrive;
    }

    bool complete_due(Seconds now) {
        bool any = false;
        for (auto& v : vehicles_) {
            while (!v.idle() && v.busy_until == now) {
                finish_leg(v, now);
                any = true;
            }
            assert(v.idle() || v.busy_until > now);
        }
        return any;
    }

    void become_idle(Vehicle& v, NodeId node, Seconds now, std::optional<LegInfo> leg) {
        v.state = VehicleState::Idle;
        v.assignment.reset();
        v.location = node;
        result_.log.append(VehicleIdle{now, v.id, v.mode, node, leg});
    }

    void finish_leg(Vehicle& v, Seconds now) {
        const Leg leg = *v.leg;
        v.leg.reset();
        v.location = leg.destination;
        result_.legs.push_back({v.id, v.assignment, leg});
        const LegInfo info{leg.origin, leg.depart, leg.distance};

        switch (v.state) {
            case VehicleState::ToPickup: {
                const auto& o = order(*v.assignment);
                result_.log.append(PickedUp{now, o.id, v.id, leg.destination, info});
                v.state = VehicleState::ToDropoff;
                start_leg(v, leg.destination, hybrid() ? *depot_ : o.home, now);
                break;
            }
            case VehicleState::ToDropoff: {
                const auto& o = order(*v.assignment);
                if (hybrid() && v.mode == VehicleMode::Robot) {
                    result_.log.append(DepotArrival{now, o.id, v.id, leg.destination, info});
                    hybrid_.drone_table.push(o, now);
                    become_idle(v, leg.destination, now, std::nullopt);
                    break;
                }
                result_.log.append(DroppedOff{now, o.id, v.id, leg.destination, info});
                ++delivered_;
                if (hybrid()) {
                    v.assignment.reset();
                    v.state = VehicleState::ReturningToDepot;
                    start_leg(v, leg.destination, *depot_, now);
                } else {
                    become_idle(v, leg.destination, now, std::nullopt);
                }
                break;
            }
            case VehicleState::ReturningToDepot:
                become_idle(v, leg.destination, now, info);
                break;
            case VehicleState::Idle:
                assert(false && "idle vehicle has no leg to finish");
                break;
        }
    }

    [[noreturn]] void abort(Seconds now, std::size_t n) const {
        const auto idle = std::count_if(vehicles_.begin(), vehicles_.end(), [](const Vehicle& v) { return v.idle(); });
        throw SimulationAborted(fmt::format(
            "horizon {} s passed at t={} with {} of {} orders undelivered ({} vehicles, {} idle); "
            "check fleet sizes and network reachability",
            options_.horizon, now, n - delivered_, n, vehicles_.size(), idle));
    }

    const Network& net_;
    RoadRouter router_;
    std::span<const Order> orders_;
    DispatchPolicy policy_;
    RunOptions options_;
    std::optional<NodeId> depot_;
    std::unordered_map<OrderId, Order> by_id_;

    std::vector<Vehicle> vehicles_;
    std::size_t robot_count_ = 0;
    RequestTable table_;
    HybridQueues hybrid_;
    std::size_t delivered_ = 0;
    SimResult result_;
};

}  // namespace

SimResult run(const Network& net, std::span<const Order> orders, const DispatchPolicy& policy,
              const FleetSpec& fleet, std::uint64_t seed, const RunOptions& options) {
    return Simulation(net, orders, policy, fleet, seed, options).run();
}

SimResult result_from_log(EventLog log) {
    SimResult result;
    for (const auto& event : log.records()) {
        if (const auto* e = std::get_if<RunStarted>(&event)) {
            result.policy = {e->system, e->prep_gate, 1};
            result.depot = e->depot;
        } else if (const auto* e = std::get_if<OrderPlaced>(&event)) {
            result.per_order[e->order].order = {e->order, e->t, e->restaurant, e->home};
        } else if (const auto* e = std::get_if<Assigned>(&event)) {
            auto& rec = result.per_order[e->order];
            if (e->queue == QueueKind::Drone) {
                rec.drone = e->vehicle;
            } else {
                rec.assigned = e->t;
                rec.vehicle = e->vehicle;
            }
        } else if (const auto* e = std::get_if<PickedUp>(&event)) {
            auto& rec = result.per_order[e->order];
            if (rec.drone && *rec.drone == e->vehicle)
                rec.drone_pickup = e->t;
            else
                rec.pickup = e->t;
        } else if (const auto* e = std::get_if<DepotArrival>(&event)) {
            result.per_order[e->order].depot_arrival = e->t;
        } else if (const auto* e = std::get_if<DroppedOff>(&event)) {
            auto& rec = result.per_order[e->order];
            rec.dropoff = e->t;
            rec.wait_time = e->t - rec.order.request_time;
            result.termination_time = std::max(result.termination_time, e->t);
        }
    }
    result.log = std::move(log);
    return result;
}

}  // namespace lastmile
