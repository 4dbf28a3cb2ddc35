#include "lastmile/netgraph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <set>

#include <fmt/format.h>

namespace lastmile {

std::string_view to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Restaurant: return "restaurant";
        case NodeKind::Home: return "home";
        case NodeKind::Depot: return "depot";
    }
    return "home";
}

NodeKind parse_node_kind(std::string_view text) {
    if (text == "restaurant") return NodeKind::Restaurant;
    if (text == "home") return NodeKind::Home;
    if (text == "depot") return NodeKind::Depot;
    throw NetworkError(fmt::format("unknown node kind '{}'", text));
}

double straight_line_distance(const Node& a, const Node& b) {
    return std::hypot(b.x - a.x, b.y - a.y);
}

Network::Network(std::vector<Node> nodes, const std::vector<std::pair<NodeId, NodeId>>& streets,
                 DepotRequirement depot)
    : nodes_(std::move(nodes)) {
    if (nodes_.empty()) throw NetworkError("network has no nodes");

    std::sort(nodes_.begin(), nodes_.end(),
              [](const Node& a, const Node& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!index_.emplace(nodes_[i].id, i).second)
            throw NetworkError(fmt::format("duplicate node id {}", nodes_[i].id));
        if (!std::isfinite(nodes_[i].x) || !std::isfinite(nodes_[i].y))
            throw NetworkError(fmt::format("node {} has non-finite coordinates", nodes_[i].id));
        if (nodes_[i].kind == NodeKind::Depot) {
            if (depot_)
                throw NetworkError(fmt::format("multiple depots ({} and {})", *depot_, nodes_[i].id));
            depot_ = nodes_[i].id;
        }
    }
    if (depot == DepotRequirement::Required && !depot_)
        throw NetworkError("missing depot: a hybrid scenario requires exactly one depot node");

    std::set<std::pair<NodeId, NodeId>> seen;
    std::vector<std::vector<Link>> adjacency(nodes_.size());
    for (const auto& [from, to] : streets) {
        if (!contains(from) || !contains(to))
            throw NetworkError(fmt::format("link {}-{} references a dangling endpoint {}", from, to,
                                           contains(from) ? to : from));
        if (from == to) throw NetworkError(fmt::format("self-loop link at node {}", from));
        if (!seen.emplace(std::min(from, to), std::max(from, to)).second)
            throw NetworkError(fmt::format("duplicate link {}-{}", from, to));
        const double length = straight_line_distance(node(from), node(to));
        if (!(length > 0.0))
            throw NetworkError(fmt::format("link {}-{} has zero length", from, to));
        adjacency[index_of(from)].push_back({from, to, length});
        adjacency[index_of(to)].push_back({to, from, length});
    }

    link_offsets_.reserve(nodes_.size() + 1);
    link_offsets_.push_back(0);
    for (auto& out : adjacency) {
        std::sort(out.begin(), out.end(), [](const Link& a, const Link& b) { return a.to < b.to; });
        links_.insert(links_.end(), out.begin(), out.end());
        link_offsets_.push_back(links_.size());
    }

    // Symmetric links, so one traversal decides connectivity.
    std::vector<bool> reached(nodes_.size(), false);
    std::vector<std::size_t> stack{0};
    reached[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (const auto& link : out_links(u)) {
            const auto v = index_.at(link.to);
            if (!reached[v]) {
                reached[v] = true;
                ++count;
                stack.push_back(v);
            }
        }
    }
    if (count != nodes_.size()) {
        const auto it = std::find(reached.begin(), reached.end(), false);
        throw NetworkError(fmt::format("road graph is disconnected: node {} unreachable from node {}",
                                       nodes_[static_cast<std::size_t>(it - reached.begin())].id,
                                       nodes_[0].id));
    }
}

std::size_t Network::index_of(NodeId id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) throw NetworkError(fmt::format("unknown node id {}", id));
    return it->second;
}

std::span<const Link> Network::out_links(std::size_t index) const {
    return std::span<const Link>(links_).subspan(link_offsets_[index],
                                                 link_offsets_[index + 1] - link_offsets_[index]);
}

std::vector<NodeId> Network::nodes_of_kind(NodeKind kind) const {
    std::vector<NodeId> ids;
    for (const auto& n : nodes_)
        if (n.kind == kind) ids.push_back(n.id);
    return ids;
}

Network load_network(const nlohmann::ordered_json& doc, DepotRequirement depot) {
    try {
        std::vector<Node> nodes;
        for (const auto& item : doc.at("nodes")) {
            nodes.push_back({item.at("id").get<NodeId>(), item.at("x").get<double>(),
                             item.at("y").get<double>(),
                             parse_node_kind(item.at("kind").get<std::string>())});
        }
        std::vector<std::pair<NodeId, NodeId>> streets;
        for (const auto& item : doc.at("links"))
            streets.emplace_back(item.at("from").get<NodeId>(), item.at("to").get<NodeId>());
        return Network(std::move(nodes), streets, depot);
    } catch (const nlohmann::json::exception& e) {
        throw NetworkError(fmt::format("malformed network document: {}", e.what()));
    }
}

Network load_network_file(const std::filesystem::path& path, DepotRequirement depot) {
    std::ifstream in(path);
    if (!in) throw NetworkError(fmt::format("cannot open network file {}", path.string()));
    nlohmann::ordered_json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw NetworkError(fmt::format("{}: {}", path.string(), e.what()));
    }
    return load_network(doc, depot);
}

nlohmann::ordered_json to_document(const Network& net) {
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const auto& n : net.nodes())
        nodes.push_back({{"id", n.id}, {"x", n.x}, {"y", n.y}, {"kind", to_string(n.kind)}});
    nlohmann::ordered_json links = nlohmann::ordered_json::array();
    for (const auto& l : net.links())
        if (l.from < l.to) links.push_back({{"from", l.from}, {"to", l.to}});
    return {{"nodes", nodes}, {"links", links}};
}

ShortestPathTree dijkstra(const Network& net, NodeId source) {
    const auto n = net.node_count();
    ShortestPathTree tree;
    tree.source = net.index_of(source);
    tree.dist.assign(n, std::numeric_limits<double>::infinity());
    tree.pred.assign(n, -1);
    std::vector<bool> settled(n, false);

    using Entry = std::pair<double, NodeId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
    tree.dist[tree.source] = 0.0;
    frontier.emplace(0.0, source);

    while (!frontier.empty()) {
        const auto [d, id] = frontier.top();
        frontier.pop();
        const auto u = net.index_of(id);
        if (settled[u] || d > tree.dist[u]) continue;
        settled[u] = true;
        for (const auto& link : net.out_links(u)) {
            const auto v = net.index_of(link.to);
            if (settled[v]) continue;
            const double candidate = d + link.length;
            const bool better = candidate < tree.dist[v];
            const bool tie_wins = candidate == tree.dist[v] &&
                                  id < net.node_at(static_cast<std::size_t>(tree.pred[v])).id;
            if (better || tie_wins) {
                tree.dist[v] = candidate;
                tree.pred[v] = static_cast<std::ptrdiff_t>(u);
                if (better) frontier.emplace(candidate, link.to);
            }
        }
    }
    return tree;
}

namespace {

Path path_from_tree(const Network& net, const ShortestPathTree& tree, NodeId to) {
    const auto target = net.index_of(to);
    if (!std::isfinite(tree.dist[target]))
        throw NetworkError(fmt::format("no path from node {} to node {}",
                                       net.node_at(tree.source).id, to));
    Path path;
    path.total_length = tree.dist[target];
    for (auto i = static_cast<std::ptrdiff_t>(target); i >= 0; i = tree.pred[static_cast<std::size_t>(i)])
        path.nodes.push_back(net.node_at(static_cast<std::size_t>(i)).id);
    std::reverse(path.nodes.begin(), path.nodes.end());
    return path;
}

}  // namespace

Path shortest_path(const Network& net, NodeId from, NodeId to) {
    net.index_of(to);
    return path_from_tree(net, dijkstra(net, from), to);
}

RoadRouter::RoadRouter(const Network& net) : net_(net), trees_(net.node_count()) {}

const ShortestPathTree& RoadRouter::tree(NodeId source) {
    auto& slot = trees_[net_.index_of(source)];
    if (!slot) slot = dijkstra(net_, source);
    return *slot;
}

double RoadRouter::distance(NodeId from, NodeId to) {
    const double d = tree(from).dist[net_.index_of(to)];
    if (!std::isfinite(d)) throw NetworkError(fmt::format("no path from node {} to node {}", from, to));
    return d;
}

Path RoadRouter::path(NodeId from, NodeId to) { return path_from_tree(net_, tree(from), to); }

}  // namespace lastmile
