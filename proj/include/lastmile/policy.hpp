#pragma once

#include <string_view>

#include "lastmile/common.hpp"
#include "lastmile/fleet.hpp"

namespace lastmile {

enum class SystemType { RobotOnly, DroneOnly, Hybrid };

std::string_view to_string(SystemType system);
// Accepts "robot", "drone", "hybrid".
SystemType parse_system(std::string_view text);

// Meal preparation gate applied before standalone assignment.
inline constexpr Seconds kPrepGate = 720;

struct DispatchPolicy {
    SystemType system = SystemType::RobotOnly;
    Seconds prep_gate = kPrepGate;
    Seconds update_interval = 1;

    static DispatchPolicy for_system(SystemType system) {
        return {system, system == SystemType::Hybrid ? Seconds{0} : kPrepGate, 1};
    }
};

// Which request table an assignment was drawn from.
enum class QueueKind { Standalone, Robot, Drone };

std::string_view to_string(QueueKind queue);
QueueKind parse_queue_kind(std::string_view text);

constexpr VehicleMode mode_of(QueueKind queue, SystemType system) {
    if (queue == QueueKind::Robot) return VehicleMode::Robot;
    if (queue == QueueKind::Drone) return VehicleMode::Drone;
    return system == SystemType::DroneOnly ? VehicleMode::Drone : VehicleMode::Robot;
}

}  // namespace lastmile
