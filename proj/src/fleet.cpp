#include "lastmile/fleet.hpp"

#include <cassert>
#include <cmath>

#include <fmt/format.h>

namespace lastmile {

std::string_view to_string(VehicleMode mode) {
    return mode == VehicleMode::Robot ? "robot" : "drone";
}

VehicleMode parse_vehicle_mode(std::string_view text) {
    if (text == "robot") return VehicleMode::Robot;
    if (text == "drone") return VehicleMode::Drone;
    throw Error(fmt::format("unknown vehicle mode '{}'", text));
}

std::string_view to_string(VehicleState state) {
    switch (state) {
        case VehicleState::Idle: return "idle";
        case VehicleState::ToPickup: return "to_pickup";
        case VehicleState::ToDropoff: return "to_dropoff";
        case VehicleState::ReturningToDepot: return "returning_to_depot";
    }
    return "idle";
}

Seconds travel_time(double distance, Speed speed) {
    assert(distance >= 0.0 && speed.meters > 0 && speed.seconds > 0);
    if (distance <= 0.0) return 0;
    const double ticks = distance * static_cast<double>(speed.seconds) / static_cast<double>(speed.meters);
    return static_cast<Seconds>(std::ceil(ticks - 1e-9));
}

double vehicle_distance_to(RoadRouter& router, const Vehicle& v, NodeId target) {
    assert(v.idle());
    if (v.mode == VehicleMode::Robot) return router.distance(v.location, target);
    const auto& net = router.network();
    return straight_line_distance(net.node(v.location), net.node(target));
}

Leg dispatch_leg(const Vehicle& v, NodeId origin, NodeId destination, double distance, Seconds now,
                 std::optional<Path> path) {
    assert(distance >= 0.0);
    assert(origin != destination || distance == 0.0);
    Leg leg;
    leg.origin = origin;
    leg.destination = destination;
    leg.distance = distance;
    leg.depart = now;
    leg.arrive = now + travel_time(distance, speed_of(v.mode));
    leg.path = std::move(path);
    return leg;
}

}  // namespace lastmile
