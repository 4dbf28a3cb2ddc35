#pragma once

#include <optional>
#include <string_view>

#include "lastmile/common.hpp"
#include "lastmile/netgraph.hpp"

namespace lastmile {

enum class VehicleMode { Robot, Drone };

std::string_view to_string(VehicleMode mode);
VehicleMode parse_vehicle_mode(std::string_view text);

// Exact rational speed: `meters` per `seconds`.
struct Speed {
    std::int64_t meters = 1;
    std::int64_t seconds = 1;

    double meters_per_second() const { return static_cast<double>(meters) / static_cast<double>(seconds); }
};

// 4.5 m/s sidewalk robot.
inline constexpr Speed kRobotSpeed{9, 2};
// 40 km/h drone cruise, i.e. 40000 m per 3600 s.
inline constexpr Speed kDroneSpeed{100, 9};

constexpr Speed speed_of(VehicleMode mode) {
    return mode == VehicleMode::Robot ? kRobotSpeed : kDroneSpeed;
}

/// Whole seconds needed to cover `distance` meters, rounded up to the next
/// tick. Quotients within 1e-9 s above an integer are treated as that integer,
/// so binary rounding of exact distances (1000 m by drone = 90 s) does not
/// cost a spurious extra second.
Seconds travel_time(double distance, Speed speed);

enum class VehicleState { Idle, ToPickup, ToDropoff, ReturningToDepot };

std::string_view to_string(VehicleState state);

struct Leg {
    NodeId origin = 0;
    NodeId destination = 0;
    double distance = 0.0;
    Seconds depart = 0;
    Seconds arrive = 0;
    std::optional<Path> path;  // road legs only
};

struct Vehicle {
    VehicleId id = 0;
    VehicleMode mode = VehicleMode::Robot;
    NodeId location = 0;  // meaningful while Idle
    VehicleState state = VehicleState::Idle;
    std::optional<OrderId> assignment;
    Seconds busy_until = 0;
    std::optional<Leg> leg;

    bool idle() const { return state == VehicleState::Idle; }
};

// Road distance for robots, straight-line distance for drones.
double vehicle_distance_to(RoadRouter& router, const Vehicle& v, NodeId target);

// Leg departing `now`; the caller owns the vehicle state transition.
Leg dispatch_leg(const Vehicle& v, NodeId origin, NodeId destination, double distance, Seconds now,
                 std::optional<Path> path = std::nullopt);

}  // namespace lastmile
