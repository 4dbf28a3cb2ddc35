#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lastmile/common.hpp"

namespace lastmile {

enum class NodeKind { Restaurant, Home, Depot };

std::string_view to_string(NodeKind kind);
NodeKind parse_node_kind(std::string_view text);

// Coordinates are planar meters (already projected).
struct Node {
    NodeId id = 0;
    double x = 0.0;
    double y = 0.0;
    NodeKind kind = NodeKind::Home;
};

// Directed road link; length is the Euclidean distance between endpoints.
struct Link {
    NodeId from = 0;
    NodeId to = 0;
    double length = 0.0;
};

struct Path {
    std::vector<NodeId> nodes;
    double total_length = 0.0;
};

enum class DepotRequirement { Optional, Required };

/// Validated road network. Immutable once constructed.
///
/// Streets are undirected on input and stored as two directed links. The
/// constructor rejects duplicate node ids, dangling or duplicate streets,
/// zero-length streets, more than one depot, and disconnected graphs.
class Network {
public:
    Network(std::vector<Node> nodes, const std::vector<std::pair<NodeId, NodeId>>& streets,
            DepotRequirement depot = DepotRequirement::Optional);

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Link>& links() const { return links_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t street_count() const { return links_.size() / 2; }

    bool contains(NodeId id) const { return index_.contains(id); }
    // Dense index in [0, node_count()); throws NetworkError for unknown ids.
    std::size_t index_of(NodeId id) const;
    const Node& node(NodeId id) const { return nodes_[index_of(id)]; }
    const Node& node_at(std::size_t index) const { return nodes_[index]; }

    // Outgoing links of the node at a dense index, sorted by target id.
    std::span<const Link> out_links(std::size_t index) const;

    // Ids of all nodes of a kind, ascending.
    std::vector<NodeId> nodes_of_kind(NodeKind kind) const;
    std::optional<NodeId> depot() const { return depot_; }

private:
    std::vector<Node> nodes_;
    std::unordered_map<NodeId, std::size_t> index_;
    std::vector<Link> links_;                // grouped by source index
    std::vector<std::size_t> link_offsets_;  // CSR offsets into links_
    std::optional<NodeId> depot_;
};

/// Parses and validates a network document:
///   {"nodes": [{"id", "x", "y", "kind"}], "links": [{"from", "to"}]}
Network load_network(const nlohmann::ordered_json& doc,
                     DepotRequirement depot = DepotRequirement::Optional);
Network load_network_file(const std::filesystem::path& path,
                          DepotRequirement depot = DepotRequirement::Optional);

nlohmann::ordered_json to_document(const Network& net);

double straight_line_distance(const Node& a, const Node& b);

/// Single-source shortest-path tree over road links.
///
/// Frontier order is (distance, node id). When a relaxation produces a
/// distance exactly equal to the current label, the predecessor with the
/// smaller node id is kept, so the tree is fully determined by the input.
struct ShortestPathTree {
    std::size_t source = 0;
    std::vector<double> dist;           // +inf when unreachable
    std::vector<std::ptrdiff_t> pred;   // dense index, -1 for source/unreachable
};

ShortestPathTree dijkstra(const Network& net, NodeId source);

// Throws NetworkError when `to` is unreachable.
Path shortest_path(const Network& net, NodeId from, NodeId to);

/// Memoized road routing for one simulation run. Trees are computed on first
/// use per source node; not thread-safe.
class RoadRouter {
public:
    explicit RoadRouter(const Network& net);

    const Network& network() const { return net_; }
    double distance(NodeId from, NodeId to);
    Path path(NodeId from, NodeId to);

private:
    const ShortestPathTree& tree(NodeId source);

    const Network& net_;
    std::vector<std::optional<ShortestPathTree>> trees_;
};

}  // namespace lastmile
