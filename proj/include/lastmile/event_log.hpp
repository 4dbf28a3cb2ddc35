#pragma once

#include <istream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lastmile/common.hpp"
#include "lastmile/fleet.hpp"
#include "lastmile/policy.hpp"

namespace lastmile {

// Position of one Idle vehicle when an assignment was made.
struct IdleEntry {
    VehicleId vehicle = 0;
    NodeId location = 0;
    double distance = 0.0;  // to the pickup point of the assigned order

    friend bool operator==(const IdleEntry&, const IdleEntry&) = default;
};

// The movement that ended at an arrival record.
struct LegInfo {
    NodeId from = 0;
    Seconds depart = 0;
    double distance = 0.0;

    friend bool operator==(const LegInfo&, const LegInfo&) = default;
};

// First record of every log; makes a log self-describing for audits.
struct RunStarted {
    Seconds t = 0;
    SystemType system = SystemType::RobotOnly;
    Seconds prep_gate = 0;
    std::optional<NodeId> depot;
};

struct OrderPlaced {
    Seconds t = 0;
    OrderId order = 0;
    NodeId restaurant = 0;
    NodeId home = 0;
};

struct Assigned {
    Seconds t = 0;
    OrderId order = 0;
    VehicleId vehicle = 0;
    QueueKind queue = QueueKind::Standalone;
    std::vector<IdleEntry> idle_snapshot;
};

struct PickedUp {
    Seconds t = 0;
    OrderId order = 0;
    VehicleId vehicle = 0;
    NodeId node = 0;
    LegInfo leg;
};

// Hybrid only: robot delivered the meal to the depot.
struct DepotArrival {
    Seconds t = 0;
    OrderId order = 0;
    VehicleId vehicle = 0;
    NodeId node = 0;
    LegInfo leg;
};

struct DroppedOff {
    Seconds t = 0;
    OrderId order = 0;
    VehicleId vehicle = 0;
    NodeId node = 0;
    LegInfo leg;
};

// Vehicle became available. `leg` is set when the vehicle moved to get there
// with no order on board (hybrid drone return flights).
struct VehicleIdle {
    Seconds t = 0;
    VehicleId vehicle = 0;
    VehicleMode mode = VehicleMode::Robot;
    NodeId node = 0;
    std::optional<LegInfo> leg;
};

using Event = std::variant<RunStarted, OrderPlaced, Assigned, PickedUp, DepotArrival, DroppedOff, VehicleIdle>;

Seconds time_of(const Event& event);

/// Append-only event record. Serializes as JSON lines, one record per line
/// with an "event" discriminator; the encoding is deterministic.
class EventLog {
public:
    void append(Event event) { records_.push_back(std::move(event)); }
    const std::vector<Event>& records() const { return records_; }
    std::vector<Event>& records() { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    std::string to_jsonl() const;
    static EventLog from_jsonl(std::istream& in);
    static EventLog from_jsonl(const std::string& text);

private:
    std::vector<Event> records_;
};

std::string to_json_line(const Event& event);

}  // namespace lastmile
