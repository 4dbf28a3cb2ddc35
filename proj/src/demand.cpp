#include "lastmile/demand.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "lastmile/rng.hpp"

namespace lastmile {

std::vector<Order> generate_demand(const Network& net, int n_orders, Seconds window,
                                   std::uint64_t seed) {
    if (n_orders < 0) throw DemandError("order count must be non-negative");
    if (n_orders == 0) return {};
    if (window <= 0) throw DemandError("demand window must be positive");

    const auto restaurants = net.nodes_of_kind(NodeKind::Restaurant);
    const auto homes = net.nodes_of_kind(NodeKind::Home);
    if (restaurants.empty()) throw DemandError("network has no restaurant nodes");
    if (homes.empty()) throw DemandError("network has no home nodes");

    Rng rng(seed);
    std::vector<Order> orders(static_cast<std::size_t>(n_orders));
    for (auto& o : orders) {
        o.request_time = static_cast<Seconds>(rng.uniform_below(static_cast<std::uint64_t>(window)));
        o.restaurant = restaurants[rng.uniform_below(restaurants.size())];
        o.home = homes[rng.uniform_below(homes.size())];
    }
    std::stable_sort(orders.begin(), orders.end(), [](const Order& a, const Order& b) {
        return a.request_time < b.request_time;
    });
    for (std::size_t i = 0; i < orders.size(); ++i) orders[i].id = static_cast<OrderId>(i + 1);
    return orders;
}

int scale_demand(int base, double growth_percent) {
    if (growth_percent < 0) throw DemandError("demand growth must be non-negative");
    // base * (100 + g) is exact for the integral growth rates used in practice.
    return static_cast<int>(std::floor(base * (100.0 + growth_percent) / 100.0 + 0.5));
}

void RequestTable::push(const Order& order, Seconds queued_at) {
    if (!lookup_.emplace(order.id, order).second)
        throw Error(fmt::format("order {} is already queued", order.id));
    const Entry entry{queued_at, order.id};
    const auto pos = std::upper_bound(queue_.begin(), queue_.end(), entry, [](const Entry& a, const Entry& b) {
        return a.queued_at != b.queued_at ? a.queued_at < b.queued_at : a.id < b.id;
    });
    queue_.insert(pos, entry);
}

std::optional<Order> RequestTable::pop_next_eligible(Seconds now, Seconds gate) {
    for (auto it = queue_.begin(); it != queue_.end(); ++it) {
        if (it->queued_at + gate > now) continue;
        const auto node = lookup_.extract(it->id);
        queue_.erase(it);
        return node.mapped();
    }
    return std::nullopt;
}

const Order& RequestTable::lookup(OrderId id) const {
    const auto it = lookup_.find(id);
    if (it == lookup_.end()) throw Error(fmt::format("order {} is not queued", id));
    return it->second;
}

std::vector<OrderId> RequestTable::queued_ids() const {
    std::vector<OrderId> ids;
    ids.reserve(queue_.size());
    for (const auto& e : queue_) ids.push_back(e.id);
    return ids;
}

std::vector<Order> load_demand(const nlohmann::ordered_json& doc, const Network& net, Seconds window) {
    std::vector<Order> orders;
    try {
        for (const auto& item : doc) {
            orders.push_back({item.at("order_id").get<OrderId>(), item.at("request_time").get<Seconds>(),
                              item.at("restaurant").get<NodeId>(), item.at("home").get<NodeId>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw DemandError(fmt::format("malformed demand document: {}", e.what()));
    }
    for (std::size_t i = 0; i < orders.size(); ++i) {
        const auto& o = orders[i];
        if (o.id != static_cast<OrderId>(i + 1))
            throw DemandError(fmt::format("order ids must be consecutive from 1; found {} at position {}",
                                          o.id, i + 1));
        if (o.request_time < 0 || o.request_time >= window)
            throw DemandError(fmt::format("order {} request time {} outside [0, {})", o.id,
                                          o.request_time, window));
        if (i > 0 && o.request_time < orders[i - 1].request_time)
            throw DemandError(fmt::format("order {} breaks request-time order", o.id));
        if (!net.contains(o.restaurant) || net.node(o.restaurant).kind != NodeKind::Restaurant)
            throw DemandError(fmt::format("order {} origin {} is not a restaurant node", o.id, o.restaurant));
        if (!net.contains(o.home) || net.node(o.home).kind != NodeKind::Home)
            throw DemandError(fmt::format("order {} destination {} is not a home node", o.id, o.home));
    }
    return orders;
}

std::vector<Order> load_demand_file(const std::filesystem::path& path, const Network& net, Seconds window) {
    std::ifstream in(path);
    if (!in) throw DemandError(fmt::format("cannot open demand file {}", path.string()));
    nlohmann::ordered_json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DemandError(fmt::format("{}: {}", path.string(), e.what()));
    }
    return load_demand(doc, net, window);
}

nlohmann::ordered_json to_document(std::span<const Order> orders) {
    auto doc = nlohmann::ordered_json::array();
    for (const auto& o : orders)
        doc.push_back({{"order_id", o.id},
                       {"request_time", o.request_time},
                       {"restaurant", o.restaurant},
                       {"home", o.home}});
    return doc;
}

}  // namespace lastmile
