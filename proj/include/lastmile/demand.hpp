#pragma once

#include <deque>
#include <filesystem>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "lastmile/common.hpp"
#include "lastmile/netgraph.hpp"

namespace lastmile {

inline constexpr Seconds kStudyWindow = 3600;
inline constexpr int kBaseDemand = 340;

// One food request. Ids are 1-based and follow request-time order.
struct Order {
    OrderId id = 0;
    Seconds request_time = 0;
    NodeId restaurant = 0;
    NodeId home = 0;

    friend bool operator==(const Order&, const Order&) = default;
};

/// Draws `n_orders` orders: per order, in this sequence, a request time
/// uniform on the integers [0, window), a restaurant uniform over restaurant
/// nodes, and a home uniform over home nodes (both in ascending id order).
/// The list is then stably sorted by request time and numbered from 1.
std::vector<Order> generate_demand(const Network& net, int n_orders, Seconds window,
                                   std::uint64_t seed);

// round(base * (1 + growth_percent / 100)), halves rounded up.
int scale_demand(int base, double growth_percent);

/// FIFO request table. Each entry is keyed by the time it joined the table
/// (request time for the dispatch queue, depot arrival for the hybrid drone
/// queue); entries stay sorted by (key, order id).
class RequestTable {
public:
    void push(const Order& order, Seconds queued_at);

    /// Removes and returns the front-most order whose key + gate <= now.
    /// Orders still inside their gate do not block later eligible ones.
    std::optional<Order> pop_next_eligible(Seconds now, Seconds gate);

    bool empty() const { return queue_.empty(); }
    std::size_t size() const { return queue_.size(); }
    bool contains(OrderId id) const { return lookup_.contains(id); }
    const Order& lookup(OrderId id) const;
    // Order ids in queue order.
    std::vector<OrderId> queued_ids() const;

private:
    struct Entry {
        Seconds queued_at;
        OrderId id;
    };
    std::deque<Entry> queue_;
    std::unordered_map<OrderId, Order> lookup_;
};

/// Demand document: [{"order_id", "request_time", "restaurant", "home"}].
/// Loading checks node kinds, 0 <= request_time < window, sorted times and
/// consecutive ids starting at 1.
std::vector<Order> load_demand(const nlohmann::ordered_json& doc, const Network& net,
                               Seconds window = kStudyWindow);
std::vector<Order> load_demand_file(const std::filesystem::path& path, const Network& net,
                                    Seconds window = kStudyWindow);
nlohmann::ordered_json to_document(std::span<const Order> orders);

}  // namespace lastmile
