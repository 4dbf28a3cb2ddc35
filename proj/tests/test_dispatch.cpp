#include <doctest.h>

#include "lastmile/dispatch.hpp"
#include "support.hpp"

using namespace lastmile;

namespace {

// Homes at x = 0, 100, 200, 300 (ids 1-4), restaurant at x = 150 (id 5),
// depot at x = 400 (id 6), all on one street line ordered by id.
Network strip() {
    std::vector<Node> nodes{{1, 0, 0, NodeKind::Home},         {2, 100, 0, NodeKind::Home},
                            {3, 200, 0, NodeKind::Home},       {4, 300, 0, NodeKind::Home},
                            {5, 150, 10, NodeKind::Restaurant}, {6, 400, 0, NodeKind::Depot}};
    return Network(nodes, {{1, 2}, {2, 5}, {5, 3}, {3, 4}, {4, 6}});
}

std::vector<Vehicle> fleet(std::initializer_list<NodeId> locations, VehicleMode mode = VehicleMode::Robot) {
    std::vector<Vehicle> out;
    VehicleId id = 1;
    for (auto loc : locations) {
        Vehicle v;
        v.id = id++;
        v.mode = mode;
        v.location = loc;
        out.push_back(v);
    }
    return out;
}

}  // namespace

TEST_CASE("standalone: nearest idle vehicle takes the front order") {
    auto net = strip();
    RoadRouter router(net);
    auto vehicles = fleet({1, 4, 3});
    RequestTable table;
    table.push({1, 0, 5, 1}, 0);
    const auto policy = DispatchPolicy::for_system(SystemType::RobotOnly);

    CHECK(tick_standalone(policy, router, table, vehicles, 719).empty());
    auto out = tick_standalone(policy, router, table, vehicles, 720);
    REQUIRE(out.size() == 1);
    CHECK(out[0].vehicle == 3);
    CHECK(out[0].queue == QueueKind::Standalone);
    CHECK(out[0].idle_snapshot.size() == 3);
    CHECK(vehicles[2].state == VehicleState::ToPickup);
    CHECK(vehicles[2].assignment == 1);
    CHECK(table.empty());
}

TEST_CASE("standalone: distance ties go to the lower id") {
    // Vehicles at 2 and 3 are equally far from the restaurant by road.
    std::vector<Node> nodes{{1, 0, 0, NodeKind::Home}, {2, 100, 0, NodeKind::Restaurant}, {3, 200, 0, NodeKind::Home}};
    Network net(nodes, {{1, 2}, {2, 3}});
    RoadRouter router(net);
    auto vehicles = fleet({3, 1});
    RequestTable table;
    table.push({1, 0, 2, 1}, 0);
    auto out = tick_standalone(DispatchPolicy::for_system(SystemType::RobotOnly), router, table, vehicles, 720);
    REQUIRE(out.size() == 1);
    CHECK(out[0].vehicle == 1);
}

TEST_CASE("standalone: FIFO across several orders, one vehicle each") {
    auto net = strip();
    RoadRouter router(net);
    auto vehicles = fleet({1, 2});
    RequestTable table;
    for (OrderId id = 1; id <= 3; ++id) table.push({id, id, 5, 4}, id);
    auto out = tick_standalone(DispatchPolicy::for_system(SystemType::RobotOnly), router, table, vehicles, 800);
    REQUIRE(out.size() == 2);
    CHECK(out[0].order.id == 1);
    CHECK(out[0].vehicle == 2);  // about 51 m by road against 151 m
    CHECK(out[1].order.id == 2);
    CHECK(out[1].vehicle == 1);
    CHECK(out[1].idle_snapshot.size() == 1);
    CHECK(table.queued_ids() == std::vector<OrderId>{3});
}

TEST_CASE("drones pick by straight-line distance") {
    auto net = strip();
    RoadRouter router(net);
    auto drones = fleet({1, 6}, VehicleMode::Drone);
    RequestTable table;
    table.push({1, 0, 5, 1}, 0);
    auto out = tick_standalone(DispatchPolicy::for_system(SystemType::DroneOnly), router, table, drones, 720);
    REQUIRE(out.size() == 1);
    CHECK(out[0].vehicle == 1);
    CHECK(out[0].idle_snapshot[0].distance == doctest::Approx(std::hypot(150.0, 10.0)));
}

TEST_CASE("hybrid: only vehicles idle at the depot are dispatched") {
    auto net = strip();
    RoadRouter router(net);
    auto robots = fleet({1, 6});
    auto drones = fleet({6, 2}, VehicleMode::Drone);
    for (auto& d : drones) d.id += 2;
    HybridQueues q;
    q.robot_table.push({1, 0, 5, 1}, 0);
    q.robot_table.push({2, 0, 5, 2}, 0);
    q.drone_table.push({7, 0, 5, 3}, 10);
    q.drone_table.push({8, 0, 5, 4}, 10);

    auto out = tick_hybrid(DispatchPolicy::for_system(SystemType::Hybrid), router, q, robots, drones, 6, 10);
    REQUIRE(out.size() == 2);
    CHECK(out[0].order.id == 1);
    CHECK(out[0].vehicle == 2);
    CHECK(out[0].queue == QueueKind::Robot);
    CHECK(robots[1].state == VehicleState::ToPickup);
    CHECK(out[1].order.id == 7);
    CHECK(out[1].vehicle == 3);
    CHECK(out[1].queue == QueueKind::Drone);
    CHECK(out[1].idle_snapshot == std::vector<IdleEntry>{{3, 6, 0.0}});
    CHECK(drones[0].state == VehicleState::ToDropoff);
    CHECK(q.robot_table.size() == 1);
    CHECK(q.drone_table.size() == 1);
}

TEST_CASE("hybrid has no preparation gate") {
    CHECK(DispatchPolicy::for_system(SystemType::Hybrid).prep_gate == 0);
    CHECK(DispatchPolicy::for_system(SystemType::RobotOnly).prep_gate == 720);
    CHECK(DispatchPolicy::for_system(SystemType::DroneOnly).prep_gate == 720);
}

TEST_CASE("assignment order check") {
    EventLog log;
    log.append(OrderPlaced{0, 1, 5, 1});
    log.append(OrderPlaced{3, 2, 5, 1});
    log.append(Assigned{720, 1, 1, QueueKind::Standalone, {}});
    log.append(Assigned{723, 2, 2, QueueKind::Standalone, {}});
    CHECK(assignment_order_check(log));

    EventLog swapped;
    swapped.append(OrderPlaced{0, 1, 5, 1});
    swapped.append(OrderPlaced{3, 2, 5, 1});
    swapped.append(Assigned{723, 2, 2, QueueKind::Standalone, {}});
    swapped.append(Assigned{730, 1, 1, QueueKind::Standalone, {}});
    CHECK(!assignment_order_check(swapped));

    EventLog early;
    early.append(Assigned{0, 1, 1, QueueKind::Standalone, {}});
    CHECK(!assignment_order_check(early));
}
