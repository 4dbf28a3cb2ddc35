#include "lastmile/event_log.hpp"

#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace lastmile {

using nlohmann::ordered_json;

Seconds time_of(const Event& event) {
    return std::visit([](const auto& e) { return e.t; }, event);
}

namespace {

ordered_json leg_json(const LegInfo& leg) {
    return {{"from", leg.from}, {"depart", leg.depart}, {"distance", leg.distance}};
}

LegInfo parse_leg(const ordered_json& j) {
    return {j.at("from").get<NodeId>(), j.at("depart").get<Seconds>(), j.at("distance").get<double>()};
}

struct Encoder {
    ordered_json operator()(const RunStarted& e) const {
        ordered_json j{{"t", e.t}, {"event", "run_started"}, {"system", to_string(e.system)},
                       {"prep_gate", e.prep_gate}};
        j["depot"] = e.depot ? ordered_json(*e.depot) : ordered_json(nullptr);
        return j;
    }
    ordered_json operator()(const OrderPlaced& e) const {
        return {{"t", e.t}, {"event", "order_placed"}, {"order", e.order},
                {"restaurant", e.restaurant}, {"home", e.home}};
    }
    ordered_json operator()(const Assigned& e) const {
        auto snapshot = ordered_json::array();
        for (const auto& s : e.idle_snapshot)
            snapshot.push_back({{"vehicle", s.vehicle}, {"node", s.location}, {"distance", s.distance}});
        return {{"t", e.t}, {"event", "assigned"}, {"order", e.order}, {"vehicle", e.vehicle},
                {"queue", to_string(e.queue)}, {"idle_snapshot", snapshot}};
    }
    ordered_json operator()(const PickedUp& e) const {
        return {{"t", e.t}, {"event", "picked_up"}, {"order", e.order}, {"vehicle", e.vehicle},
                {"node", e.node}, {"leg", leg_json(e.leg)}};
    }
    ordered_json operator()(const DepotArrival& e) const {
        return {{"t", e.t}, {"event", "depot_arrival"}, {"order", e.order}, {"vehicle", e.vehicle},
                {"node", e.node}, {"leg", leg_json(e.leg)}};
    }
    ordered_json operator()(const DroppedOff& e) const {
        return {{"t", e.t}, {"event", "dropped_off"}, {"order", e.order}, {"vehicle", e.vehicle},
                {"node", e.node}, {"leg", leg_json(e.leg)}};
    }
    ordered_json operator()(const VehicleIdle& e) const {
        ordered_json j{{"t", e.t}, {"event", "vehicle_idle"}, {"vehicle", e.vehicle},
                       {"mode", to_string(e.mode)}, {"node", e.node}};
        if (e.leg) j["leg"] = leg_json(*e.leg);
        return j;
    }
};

Event decode(const ordered_json& j) {
    const auto kind = j.at("event").get<std::string>();
    const auto t = j.at("t").get<Seconds>();
    if (kind == "run_started") {
        RunStarted e{t, parse_system(j.at("system").get<std::string>()), j.at("prep_gate").get<Seconds>(), {}};
        if (!j.at("depot").is_null()) e.depot = j.at("depot").get<NodeId>();
        return e;
    }
    if (kind == "order_placed")
        return OrderPlaced{t, j.at("order").get<OrderId>(), j.at("restaurant").get<NodeId>(),
                           j.at("home").get<NodeId>()};
    if (kind == "assigned") {
        Assigned e{t, j.at("order").get<OrderId>(), j.at("vehicle").get<VehicleId>(),
                   parse_queue_kind(j.at("queue").get<std::string>()), {}};
        for (const auto& s : j.at("idle_snapshot"))
            e.idle_snapshot.push_back(
                {s.at("vehicle").get<VehicleId>(), s.at("node").get<NodeId>(), s.at("distance").get<double>()});
        return e;
    }
    if (kind == "picked_up")
        return PickedUp{t, j.at("order").get<OrderId>(), j.at("vehicle").get<VehicleId>(),
                        j.at("node").get<NodeId>(), parse_leg(j.at("leg"))};
    if (kind == "depot_arrival")
        return DepotArrival{t, j.at("order").get<OrderId>(), j.at("vehicle").get<VehicleId>(),
                            j.at("node").get<NodeId>(), parse_leg(j.at("leg"))};
    if (kind == "dropped_off")
        return DroppedOff{t, j.at("order").get<OrderId>(), j.at("vehicle").get<VehicleId>(),
                          j.at("node").get<NodeId>(), parse_leg(j.at("leg"))};
    if (kind == "vehicle_idle") {
        VehicleIdle e{t, j.at("vehicle").get<VehicleId>(), parse_vehicle_mode(j.at("mode").get<std::string>()),
                      j.at("node").get<NodeId>(), {}};
        if (j.contains("leg")) e.leg = parse_leg(j.at("leg"));
        return e;
    }
    throw Error(fmt::format("unknown event kind '{}'", kind));
}

}  // namespace

std::string to_json_line(const Event& event) { return std::visit(Encoder{}, event).dump(); }

std::string EventLog::to_jsonl() const {
    std::string out;
    for (const auto& e : records_) {
        out += to_json_line(e);
        out += '\n';
    }
    return out;
}

EventLog EventLog::from_jsonl(std::istream& in) {
    EventLog log;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            log.append(decode(ordered_json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw Error(fmt::format("event log line {}: {}", line_no, e.what()));
        }
    }
    return log;
}

EventLog EventLog::from_jsonl(const std::string& text) {
    std::istringstream in(text);
    return from_jsonl(in);
}

}  // namespace lastmile
