#include <doctest.h>

#include "lastmile/engine.hpp"
#include "lastmile/itinerary.hpp"
#include "support.hpp"

using namespace lastmile;

TEST_CASE("event log JSON lines round-trip") {
    EventLog log;
    log.append(RunStarted{0, SystemType::Hybrid, 0, 7});
    log.append(VehicleIdle{0, 1, VehicleMode::Robot, 7, std::nullopt});
    log.append(OrderPlaced{3, 1, 10, 70});
    log.append(Assigned{3, 1, 1, QueueKind::Robot, {{1, 7, 12.5}}});
    log.append(PickedUp{6, 1, 1, 10, {7, 3, 12.5}});
    log.append(VehicleIdle{9, 2, VehicleMode::Drone, 7, LegInfo{70, 5, 44.0}});
    const auto text = log.to_jsonl();
    const auto again = EventLog::from_jsonl(text);
    CHECK(again.size() == log.size());
    CHECK(again.to_jsonl() == text);
    CHECK(text.find("\"event\":\"assigned\"") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '\n') == 6);
    CHECK_THROWS(EventLog::from_jsonl(std::string("{\"t\":0,\"event\":\"teleported\"}\n")));
}

TEST_CASE("hybrid itinerary row from a hand-built log") {
    // Order 114: requested at 1018, robot 3 left the depot (node 1) at 1300,
    // collected at restaurant 10 at 1532, back at the depot at 1768, flown by
    // drone 30 straight away and delivered to home 70 at 1962.
    EventLog log;
    log.append(RunStarted{0, SystemType::Hybrid, 0, 1});
    log.append(OrderPlaced{1018, 114, 10, 70});
    log.append(Assigned{1300, 114, 3, QueueKind::Robot, {{3, 1, 1044.0}}});
    log.append(PickedUp{1532, 114, 3, 10, {1, 1300, 1044.0}});
    log.append(DepotArrival{1768, 114, 3, 1, {10, 1532, 1062.0}});
    log.append(VehicleIdle{1768, 3, VehicleMode::Robot, 1, std::nullopt});
    log.append(Assigned{1768, 114, 30, QueueKind::Drone, {{30, 1, 0.0}}});
    log.append(PickedUp{1768, 114, 30, 1, {1, 1768, 0.0}});
    log.append(DroppedOff{1962, 114, 30, 70, {1, 1768, 2150.0}});
    const auto r = result_from_log(log);
    CHECK(emit_itinerary(r) ==
          "o_ID,R_t,β,α,rP_t,rD_t,dP_t,dD_t,W_t\n"
          "114,1018,10,70,1532,1768,1768,1962,944\n");
    CHECK(emit_itinerary(r, 30) == emit_itinerary(r));
    CHECK(emit_itinerary(r, 5) == "o_ID,R_t,β,α,rP_t,rD_t,dP_t,dD_t,W_t\n");
}

TEST_CASE("standalone itinerary and paths from a run") {
    auto net = testing::line_network({{0, NodeKind::Home}, {45, NodeKind::Restaurant}, {90, NodeKind::Home},
                                      {135, NodeKind::Home}});
    const std::vector<Order> orders{{1, 10, 2, 4}};
    auto r = run(net, orders, DispatchPolicy::for_system(SystemType::RobotOnly), {1, 0, {1}, {}}, 0);
    CHECK(emit_itinerary(r) ==
          "o_ID,R_t,FP_t,β,α,P_t,D_t,W_t\n"
          "1,10,720,2,4,740,760,750\n");
    CHECK(emit_paths(r) == "Vehicle(1).Pathnode=[1,2,3,4]; % o_ID=1\n");
}
