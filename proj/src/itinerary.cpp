#include "lastmile/itinerary.hpp"

#include <map>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

namespace lastmile {

namespace {

std::string cell(const std::optional<Seconds>& value) { return value ? std::to_string(*value) : std::string(); }

}  // namespace

std::string emit_itinerary(const SimResult& result, std::optional<VehicleId> vehicle) {
    const bool hybrid = result.policy.system == SystemType::Hybrid;
    std::string out = hybrid ? "o_ID,R_t,β,α,rP_t,rD_t,dP_t,dD_t,W_t\n" : "o_ID,R_t,FP_t,β,α,P_t,D_t,W_t\n";
    for (const auto& [id, rec] : result.per_order) {
        if (vehicle && rec.vehicle != vehicle && rec.drone != vehicle) continue;
        const auto& o = rec.order;
        if (hybrid) {
            out += fmt::format("{},{},{},{},{},{},{},{},{}\n", id, o.request_time, o.restaurant, o.home,
                               cell(rec.pickup), cell(rec.depot_arrival), cell(rec.drone_pickup),
                               cell(rec.dropoff), cell(rec.wait_time));
        } else {
            out += fmt::format("{},{},{},{},{},{},{},{}\n", id, o.request_time, result.policy.prep_gate,
                               o.restaurant, o.home, cell(rec.pickup), cell(rec.dropoff), cell(rec.wait_time));
        }
    }
    return out;
}

std::string emit_paths(const SimResult& result) {
    // (vehicle, trip sequence) keeps trips in the order they were driven.
    std::map<VehicleId, std::vector<std::pair<OrderId, std::vector<NodeId>>>> trips;
    for (const auto& completed : result.legs) {
        if (!completed.order || !completed.leg.path) continue;
        auto& list = trips[completed.vehicle];
        if (list.empty() || list.back().first != *completed.order) list.emplace_back(*completed.order, std::vector<NodeId>{});
        auto& nodes = list.back().second;
        const auto& leg_nodes = completed.leg.path->nodes;
        auto begin = leg_nodes.begin();
        if (!nodes.empty() && begin != leg_nodes.end() && *begin == nodes.back()) ++begin;
        nodes.insert(nodes.end(), begin, leg_nodes.end());
    }
    std::string out;
    for (const auto& [vehicle, list] : trips)
        for (const auto& [order, nodes] : list)
            out += fmt::format("Vehicle({}).Pathnode=[{}]; % o_ID={}\n", vehicle, fmt::join(nodes, ","), order);
    return out;
}

}  // namespace lastmile
