#include <doctest.h>

#include "lastmile/fleet.hpp"
#include "support.hpp"

using namespace lastmile;

TEST_CASE("travel time rounds up to whole seconds") {
    CHECK(travel_time(0.0, kRobotSpeed) == 0);
    CHECK(travel_time(45.0, kRobotSpeed) == 10);
    CHECK(travel_time(90.0, kRobotSpeed) == 20);
    CHECK(travel_time(45.1, kRobotSpeed) == 11);
    CHECK(travel_time(4.5, kRobotSpeed) == 1);
    CHECK(travel_time(1000.0, kDroneSpeed) == 90);
    CHECK(travel_time(5000.0 / 9.0, kDroneSpeed) == 50);
    CHECK(travel_time(555.56, kDroneSpeed) == 51);
    CHECK(travel_time(1e-6, kDroneSpeed) == 1);
}

TEST_CASE("travel time is monotone and never early") {
    for (int mm = 0; mm < 200000; mm += 37) {
        const double d = mm / 1000.0;
        for (auto s : {kRobotSpeed, kDroneSpeed}) {
            const auto t = travel_time(d, s);
            CHECK(static_cast<double>(t) * s.meters_per_second() >= d - 1e-6);
            if (t > 0) CHECK(static_cast<double>(t - 1) * s.meters_per_second() < d);
            CHECK(travel_time(d + 0.037, s) >= t);
        }
    }
}

TEST_CASE("speeds") {
    CHECK(kRobotSpeed.meters_per_second() == 4.5);
    CHECK(kDroneSpeed.meters_per_second() * 3.6 == doctest::Approx(40.0));
    CHECK(speed_of(VehicleMode::Drone).meters == 100);
}

TEST_CASE("robots measure by road, drones in a straight line") {
    // An L: 1 at (0,0), 2 at (30,0), 3 at (30,40).
    std::vector<Node> nodes{{1, 0, 0, NodeKind::Home}, {2, 30, 0, NodeKind::Home}, {3, 30, 40, NodeKind::Restaurant}};
    Network net(nodes, {{1, 2}, {2, 3}});
    RoadRouter router(net);
    Vehicle robot;
    robot.location = 1;
    Vehicle drone = robot;
    drone.mode = VehicleMode::Drone;
    CHECK(vehicle_distance_to(router, robot, 3) == 70.0);
    CHECK(vehicle_distance_to(router, drone, 3) == 50.0);

    auto leg = dispatch_leg(robot, 1, 3, 70.0, 100, router.path(1, 3));
    CHECK(leg.depart == 100);
    CHECK(leg.arrive == 116);
    REQUIRE(leg.path);
    CHECK(leg.path->nodes == std::vector<NodeId>{1, 2, 3});
    CHECK(dispatch_leg(drone, 1, 3, 50.0, 100).arrive == 105);
}

TEST_CASE("mode names") {
    CHECK(parse_vehicle_mode(to_string(VehicleMode::Robot)) == VehicleMode::Robot);
    CHECK(parse_vehicle_mode(to_string(VehicleMode::Drone)) == VehicleMode::Drone);
}
