#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "lastmile/dispatch.hpp"
#include "lastmile/engine.hpp"

namespace lastmile {

namespace {

enum class Stage { Placed, Assigned, PickedUp, AtDepot, DroneAssigned, DronePickedUp, Delivered };

struct OrderTrack {
    Order order;
    Stage stage = Stage::Placed;
    VehicleId vehicle = 0;
    Seconds stage_time = 0;
    NodeId stage_node = 0;
};

struct VehicleTrack {
    VehicleMode mode = VehicleMode::Robot;
    bool idle = true;
    NodeId node = 0;
    std::optional<OrderId> order;
    Seconds since = 0;
    bool expect_idle = false;  // arrival recorded, VehicleIdle must follow
    bool returning = false;    // hybrid drone flying back empty
};

class Auditor {
public:
    Auditor(const SimResult& result, const Network* net) : result_(result), net_(net) {
        if (net_) router_.emplace(*net_);
    }

    std::vector<std::string> run() {
        const auto& records = result_.log.records();
        if (records.empty() || !std::holds_alternative<RunStarted>(records.front())) {
            fail("log does not start with a run_started record");
            return problems_;
        }
        const auto& header = std::get<RunStarted>(records.front());
        system_ = header.system;
        gate_ = header.prep_gate;
        depot_ = header.depot;
        if (system_ == SystemType::Hybrid && !depot_) fail("hybrid log without a depot");

        Seconds last_t = 0;
        for (std::size_t i = 1; i < records.size(); ++i) {
            const auto t = time_of(records[i]);
            if (t < last_t) fail(fmt::format("record {} at t={} precedes t={}", i, t, last_t));
            last_t = t;
            std::visit([&](const auto& e) { check(e); }, records[i]);
        }
        finish();
        return problems_;
    }

private:
    bool hybrid() const { return system_ == SystemType::Hybrid; }

    void fail(std::string message) {
        if (problems_.size() < 100) problems_.push_back(std::move(message));
    }

    void kinematics(const VehicleTrack& v, VehicleId id, Seconds arrive, const LegInfo& leg) {
        const auto expected = travel_time(leg.distance, speed_of(v.mode));
        if (arrive - leg.depart != expected)
            fail(fmt::format("vehicle {} leg from {} took {} s, expected {} s for {} m", id, leg.from,
                             arrive - leg.depart, expected, leg.distance));
    }

    VehicleTrack* vehicle(VehicleId id) {
        const auto it = vehicles_.find(id);
        if (it == vehicles_.end()) {
            fail(fmt::format("unknown vehicle {}", id));
            return nullptr;
        }
        return &it->second;
    }

    OrderTrack* order(OrderId id) {
        const auto it = orders_.find(id);
        if (it == orders_.end()) {
            fail(fmt::format("order {} used before it was placed", id));
            return nullptr;
        }
        return &it->second;
    }

    void check(const RunStarted&) { fail("duplicate run_started record"); }

    void check(const OrderPlaced& e) {
        if (!orders_.emplace(e.order, OrderTrack{{e.order, e.t, e.restaurant, e.home}, Stage::Placed, 0, e.t, 0}).second)
            fail(fmt::format("order {} placed twice", e.order));
        ++placed_;
    }

    void check(const VehicleIdle& e) {
        if (e.t == 0 && !vehicles_.contains(e.vehicle)) {
            vehicles_[e.vehicle] = {e.mode, true, e.node, {}, 0, false, false};
            if (hybrid() && e.node != *depot_)
                fail(fmt::format("hybrid vehicle {} starts away from the depot", e.vehicle));
            return;
        }
        auto* v = vehicle(e.vehicle);
        if (!v) return;
        if (v->mode != e.mode) fail(fmt::format("vehicle {} changed mode", e.vehicle));
        if (v->idle) fail(fmt::format("vehicle {} became idle twice at t={}", e.vehicle, e.t));
        if (v->returning) {
            if (!e.leg) {
                fail(fmt::format("vehicle {} return flight without a leg", e.vehicle));
            } else {
                if (e.leg->from != v->node || e.leg->depart != v->since)
                    fail(fmt::format("vehicle {} return leg does not start at its drop-off", e.vehicle));
                kinematics(*v, e.vehicle, e.t, *e.leg);
            }
        } else if (!v->expect_idle) {
            fail(fmt::format("vehicle {} became idle mid-trip at t={}", e.vehicle, e.t));
        } else if (e.leg || e.node != v->node || e.t != v->since) {
            fail(fmt::format("vehicle {} idle record disagrees with its arrival", e.vehicle));
        }
        if (hybrid() && e.node != *depot_)
            fail(fmt::format("hybrid vehicle {} idles away from the depot at node {}", e.vehicle, e.node));
        v->idle = true;
        v->node = e.node;
        v->order.reset();
        v->since = e.t;
        v->expect_idle = v->returning = false;
    }

    void check(const Assigned& e) {
        auto* o = order(e.order);
        auto* v = vehicle(e.vehicle);
        if (!o || !v) return;
        const bool drone_phase = e.queue == QueueKind::Drone;
        const auto want_queue = hybrid() ? (drone_phase ? QueueKind::Drone : QueueKind::Robot) : QueueKind::Standalone;
        if (e.queue != want_queue || (!hybrid() && drone_phase))
            fail(fmt::format("order {} assigned from the wrong queue", e.order));
        const auto want_stage = drone_phase ? Stage::AtDepot : Stage::Placed;
        if (o->stage != want_stage) fail(fmt::format("order {} assigned out of lifecycle order", e.order));
        const auto mode = mode_of(e.queue, system_);
        if (v->mode != mode) fail(fmt::format("order {} assigned to a vehicle of the wrong mode", e.order));
        if (!v->idle) fail(fmt::format("vehicle {} assigned order {} while busy", e.vehicle, e.order));
        if (hybrid() && v->node != *depot_)
            fail(fmt::format("hybrid vehicle {} assigned away from the depot", e.vehicle));
        if (!hybrid() && e.t < o->order.request_time + gate_)
            fail(fmt::format("order {} assigned at t={} before its preparation gate", e.order, e.t));

        check_snapshot(e, mode, drone_phase ? *depot_ : o->order.restaurant);

        o->stage = drone_phase ? Stage::DroneAssigned : Stage::Assigned;
        o->vehicle = e.vehicle;
        o->stage_time = e.t;
        o->stage_node = v->node;
        v->idle = false;
        v->order = e.order;
        v->since = e.t;
    }

    void check_snapshot(const Assigned& e, VehicleMode mode, NodeId target) {
        std::map<VehicleId, NodeId> idle_now;
        for (const auto& [id, v] : vehicles_)
            if (v.idle && v.mode == mode && (!hybrid() || v.node == *depot_)) idle_now[id] = v.node;
        std::map<VehicleId, NodeId> listed;
        for (const auto& s : e.idle_snapshot) listed[s.vehicle] = s.location;
        if (listed != idle_now)
            fail(fmt::format("order {} idle snapshot does not match the idle fleet at t={}", e.order, e.t));

        const IdleEntry* best = nullptr;
        for (const auto& s : e.idle_snapshot) {
            if (!best || s.distance < best->distance || (s.distance == best->distance && s.vehicle < best->vehicle))
                best = &s;
            if (net_) {
                const double d = mode == VehicleMode::Robot
                                     ? router_->distance(s.location, target)
                                     : straight_line_distance(net_->node(s.location), net_->node(target));
                if (d != s.distance)
                    fail(fmt::format("order {} snapshot distance for vehicle {} is {}, network gives {}", e.order,
                                     s.vehicle, s.distance, d));
            }
        }
        if (!best || best->vehicle != e.vehicle)
            fail(fmt::format("order {} went to vehicle {}, nearest idle was {}", e.order, e.vehicle,
                             best ? best->vehicle : 0));
    }

    void check(const PickedUp& e) {
        auto* o = order(e.order);
        auto* v = vehicle(e.vehicle);
        if (!o || !v) return;
        const bool drone_phase = o->stage == Stage::DroneAssigned;
        if (o->stage != Stage::Assigned && !drone_phase)
            fail(fmt::format("order {} picked up out of lifecycle order", e.order));
        if (o->vehicle != e.vehicle) fail(fmt::format("order {} picked up by an unassigned vehicle", e.order));
        const NodeId want = drone_phase ? *depot_ : o->order.restaurant;
        if (e.node != want) fail(fmt::format("order {} picked up at node {}, expected {}", e.order, e.node, want));
        if (e.leg.from != o->stage_node || e.leg.depart != o->stage_time)
            fail(fmt::format("order {} pickup leg does not start at the assignment", e.order));
        if (!hybrid() && e.t < o->order.request_time + gate_)
            fail(fmt::format("order {} picked up before its preparation gate", e.order));
        kinematics(*v, e.vehicle, e.t, e.leg);
        o->stage = drone_phase ? Stage::DronePickedUp : Stage::PickedUp;
        o->stage_time = e.t;
        o->stage_node = e.node;
        v->node = e.node;
    }

    void check(const DepotArrival& e) {
        auto* o = order(e.order);
        auto* v = vehicle(e.vehicle);
        if (!o || !v) return;
        if (!hybrid()) fail(fmt::format("depot arrival in a {} log", to_string(system_)));
        if (o->stage != Stage::PickedUp || o->vehicle != e.vehicle)
            fail(fmt::format("order {} reached the depot out of lifecycle order", e.order));
        if (depot_ && e.node != *depot_) fail(fmt::format("order {} depot arrival at node {}", e.order, e.node));
        if (e.leg.from != o->stage_node || e.leg.depart != o->stage_time)
            fail(fmt::format("order {} depot leg does not start at the pickup", e.order));
        kinematics(*v, e.vehicle, e.t, e.leg);
        o->stage = Stage::AtDepot;
        o->stage_time = e.t;
        o->stage_node = e.node;
        v->node = e.node;
        v->since = e.t;
        v->expect_idle = true;
    }

    void check(const DroppedOff& e) {
        auto* o = order(e.order);
        auto* v = vehicle(e.vehicle);
        if (!o || !v) return;
        const auto want = hybrid() ? Stage::DronePickedUp : Stage::PickedUp;
        if (o->stage != want || o->vehicle != e.vehicle)
            fail(fmt::format("order {} dropped off out of lifecycle order", e.order));
        if (e.node != o->order.home) fail(fmt::format("order {} dropped off away from its home", e.order));
        if (e.leg.from != o->stage_node || e.leg.depart != o->stage_time)
            fail(fmt::format("order {} delivery leg does not start at the pickup", e.order));
        kinematics(*v, e.vehicle, e.t, e.leg);
        o->stage = Stage::Delivered;
        o->stage_time = e.t;
        ++delivered_;
        v->node = e.node;
        v->since = e.t;
        v->order.reset();
        if (hybrid())
            v->returning = true;
        else
            v->expect_idle = true;
    }

    void finish() {
        for (const auto& [id, v] : vehicles_)
            if (v.expect_idle) fail(fmt::format("vehicle {} arrival never followed by an idle record", id));
        for (const auto& [id, o] : orders_)
            if (o.stage != Stage::Delivered) fail(fmt::format("order {} was never delivered", id));
        if (delivered_ != placed_)
            fail(fmt::format("{} orders placed but {} delivered", placed_, delivered_));

        if (!assignment_order_check(result_.log)) fail("assignments break FIFO queue order");

        // Per-order table must agree with the log.
        const auto rebuilt = result_from_log(result_.log);
        if (rebuilt.per_order.size() != result_.per_order.size())
            fail("per-order table size does not match the log");
        Seconds last_drop = 0;
        for (const auto& [id, rec] : result_.per_order) {
            const auto it = rebuilt.per_order.find(id);
            if (it == rebuilt.per_order.end()) {
                fail(fmt::format("order {} missing from the log", id));
                continue;
            }
            const auto& ref = it->second;
            if (rec.pickup != ref.pickup || rec.dropoff != ref.dropoff || rec.depot_arrival != ref.depot_arrival ||
                rec.drone_pickup != ref.drone_pickup || rec.order != ref.order)
                fail(fmt::format("order {} record disagrees with the log", id));
            if (!rec.dropoff || !rec.wait_time) {
                fail(fmt::format("order {} has no drop-off", id));
                continue;
            }
            if (*rec.wait_time != *rec.dropoff - rec.order.request_time)
                fail(fmt::format("order {} wait {} != drop-off {} - request {}", id, *rec.wait_time, *rec.dropoff,
                                 rec.order.request_time));
            last_drop = std::max(last_drop, *rec.dropoff);
            if (!hybrid()) {
                if (!rec.pickup || *rec.pickup < rec.order.request_time + gate_)
                    fail(fmt::format("order {} pickup precedes request + preparation", id));
            } else if (!rec.assigned || !rec.pickup || !rec.depot_arrival || !rec.drone_pickup ||
                       *rec.pickup < *rec.assigned || *rec.depot_arrival < *rec.pickup ||
                       *rec.drone_pickup < *rec.depot_arrival || *rec.dropoff < *rec.drone_pickup) {
                fail(fmt::format("order {} hybrid handoff timestamps out of order", id));
            }
        }
        if (result_.termination_time != last_drop)
            fail(fmt::format("termination time {} but last drop-off at {}", result_.termination_time, last_drop));
    }

    const SimResult& result_;
    const Network* net_;
    std::optional<RoadRouter> router_;
    SystemType system_ = SystemType::RobotOnly;
    Seconds gate_ = 0;
    std::optional<NodeId> depot_;
    std::map<VehicleId, VehicleTrack> vehicles_;
    std::unordered_map<OrderId, OrderTrack> orders_;
    std::size_t placed_ = 0;
    std::size_t delivered_ = 0;
    std::vector<std::string> problems_;
};

}  // namespace

std::vector<std::string> replay_audit(const SimResult& result, const Network* net) {
    return Auditor(result, net).run();
}

bool replay_check(const SimResult& result, const Network* net) { return replay_audit(result, net).empty(); }

}  // namespace lastmile
