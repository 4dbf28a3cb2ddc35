#pragma once

#include <cmath>
#include <limits>
#include <set>
#include <utility>
#include <vector>

#include "lastmile/netgraph.hpp"
#include "lastmile/rng.hpp"

namespace lastmile::testing {

// Nodes on the x axis at the given positions, chained by streets in order.
inline Network line_network(const std::vector<std::pair<double, NodeKind>>& points) {
    std::vector<Node> nodes;
    std::vector<std::pair<NodeId, NodeId>> streets;
    for (std::size_t i = 0; i < points.size(); ++i) {
        nodes.push_back({static_cast<NodeId>(i + 1), points[i].first, 0.0, points[i].second});
        if (i > 0) streets.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(i + 1));
    }
    return Network(std::move(nodes), streets);
}

// Connected graph on n nodes: a random spanning tree plus extra streets.
// Coordinates are distinct integers in [0, 1000).
inline Network random_connected(std::uint64_t seed, int n) {
    Rng rng(seed);
    std::set<std::pair<int, int>> used_points;
    std::vector<Node> nodes;
    for (int i = 1; i <= n; ++i) {
        int x, y;
        do {
            x = static_cast<int>(rng.uniform_below(1000));
            y = static_cast<int>(rng.uniform_below(1000));
        } while (!used_points.emplace(x, y).second);
        nodes.push_back({i, double(x), double(y), i == 1 ? NodeKind::Restaurant : NodeKind::Home});
    }
    std::set<std::pair<NodeId, NodeId>> streets;
    for (int i = 2; i <= n; ++i) {
        const int parent = 1 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(i - 1)));
        streets.emplace(parent, i);
    }
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            if (rng.uniform_below(3) == 0) streets.emplace(a, b);
    return Network(std::move(nodes), {streets.begin(), streets.end()});
}

// Minimum over every simple path of the left-to-right sum of link lengths.
inline double brute_force_distance(const Network& net, NodeId from, NodeId to) {
    double best = std::numeric_limits<double>::infinity();
    std::vector<bool> on_path(net.node_count(), false);
    auto visit = [&](auto&& self, std::size_t u, double sum) -> void {
        if (net.node_at(u).id == to) {
            best = std::min(best, sum);
            return;
        }
        on_path[u] = true;
        for (const auto& link : net.out_links(u)) {
            const auto v = net.index_of(link.to);
            if (!on_path[v]) self(self, v, sum + link.length);
        }
        on_path[u] = false;
    };
    visit(visit, net.index_of(from), 0.0);
    return best;
}

}  // namespace lastmile::testing
