#include "lastmile/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <fmt/format.h>

#include "lastmile/common.hpp"
#include "lastmile/rng.hpp"

namespace lastmile {

namespace {

constexpr std::uint64_t kGeneratorStream = 0x47524944;  // "GRID"

struct Street {
    std::size_t a;
    std::size_t b;
    bool alive = true;
};

template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[rng.uniform_below(i)]);
}

// Connectivity of alive nodes over alive streets, optionally ignoring one node or one street.
bool connected(const std::vector<bool>& node_alive, const std::vector<Street>& streets,
               std::size_t skip_node, std::size_t skip_street) {
    const auto n = node_alive.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t s = 0; s < streets.size(); ++s) {
        const auto& st = streets[s];
        if (!st.alive || s == skip_street || st.a == skip_node || st.b == skip_node) continue;
        adj[st.a].push_back(st.b);
        adj[st.b].push_back(st.a);
    }
    std::size_t start = n, total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!node_alive[i] || i == skip_node) continue;
        ++total;
        if (start == n) start = i;
    }
    if (total == 0) return true;
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (auto v : adj[u]) {
            if (seen[v]) continue;
            seen[v] = true;
            ++reached;
            stack.push_back(v);
        }
    }
    return reached == total;
}

}  // namespace

nlohmann::ordered_json generate_synthetic_network(const SyntheticNetworkSpec& spec) {
    const int n = spec.target_nodes;
    const int min_nodes = spec.place_depot ? 3 : 2;
    if (n < min_nodes)
        throw ConfigError(fmt::format("infeasible counts: need at least {} nodes", min_nodes));
    if (spec.target_links < n - 1)
        throw ConfigError(fmt::format("infeasible counts: {} streets cannot connect {} nodes", spec.target_links, n));
    if (!(spec.area_km2 > 0.0)) throw ConfigError("area must be positive");
    if (spec.jitter_fraction < 0.0 || spec.jitter_fraction >= 0.5)
        throw ConfigError("jitter_fraction must lie in [0, 0.5)");
    if (spec.restaurant_fraction <= 0.0 || spec.restaurant_fraction >= 1.0)
        throw ConfigError("restaurant_fraction must lie in (0, 1)");
    if (!(spec.cluster_radius_fraction > 0.0)) throw ConfigError("cluster_radius_fraction must be positive");

    const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    const auto rows = (static_cast<std::size_t>(n) + cols - 1) / cols;
    const double side = std::sqrt(spec.area_km2 * 1e6);
    const double dx = cols > 1 ? side / static_cast<double>(cols - 1) : 0.0;
    const double dy = rows > 1 ? side / static_cast<double>(rows - 1) : 0.0;

    Rng rng(derive_seed(spec.seed, {kGeneratorStream}));

    const auto total = rows * cols;
    std::vector<double> xs(total), ys(total);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const auto i = r * cols + c;
            xs[i] = static_cast<double>(c) * dx + (2.0 * rng.uniform_unit() - 1.0) * spec.jitter_fraction * dx;
            ys[i] = static_cast<double>(r) * dy + (2.0 * rng.uniform_unit() - 1.0) * spec.jitter_fraction * dy;
        }
    }
    std::vector<Street> streets;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const auto i = r * cols + c;
            if (c + 1 < cols) streets.push_back({i, i + 1});
            if (r + 1 < rows) streets.push_back({i, i + cols});
        }
    }

    std::vector<bool> alive(total, true);
    auto alive_nodes = total;
    std::vector<std::size_t> node_order(total);
    std::iota(node_order.begin(), node_order.end(), 0);
    shuffle(node_order, rng);
    for (auto candidate : node_order) {
        if (alive_nodes == static_cast<std::size_t>(n)) break;
        if (!connected(alive, streets, candidate, streets.size())) continue;
        alive[candidate] = false;
        --alive_nodes;
        for (auto& st : streets)
            if (st.a == candidate || st.b == candidate) st.alive = false;
    }
    if (alive_nodes != static_cast<std::size_t>(n))
        throw ConfigError(fmt::format("infeasible counts: could not thin the grid to {} nodes", n));

    auto alive_streets = static_cast<std::size_t>(
        std::count_if(streets.begin(), streets.end(), [](const Street& s) { return s.alive; }));
    if (alive_streets < static_cast<std::size_t>(spec.target_links))
        throw ConfigError(fmt::format("infeasible counts: a {}-node grid supports at most {} streets", n, alive_streets));

    std::vector<std::size_t> street_order(streets.size());
    std::iota(street_order.begin(), street_order.end(), 0);
    shuffle(street_order, rng);
    for (auto s : street_order) {
        if (alive_streets == static_cast<std::size_t>(spec.target_links)) break;
        if (!streets[s].alive || !connected(alive, streets, total, s)) continue;
        streets[s].alive = false;
        --alive_streets;
    }
    if (alive_streets != static_cast<std::size_t>(spec.target_links))
        throw ConfigError(fmt::format("infeasible counts: could not thin to {} streets", spec.target_links));

    // Renumber survivors 1..n in row-major order; coordinates to the centimetre.
    std::vector<int> id_of(total, 0);
    struct Point {
        int id;
        double x;
        double y;
    };
    std::vector<Point> points;
    for (std::size_t i = 0; i < total; ++i) {
        if (!alive[i]) continue;
        id_of[i] = static_cast<int>(points.size()) + 1;
        points.push_back({id_of[i], std::round(xs[i] * 100.0) / 100.0, std::round(ys[i] * 100.0) / 100.0});
    }

    std::vector<std::string> kind(points.size(), "home");
    std::size_t depot = points.size();
    if (spec.place_depot) {
        std::size_t best_imbalance = points.size() + 1;
        for (std::size_t i = 0; i < points.size(); ++i) {
            std::size_t left = 0, right = 0, below = 0, above = 0;
            for (const auto& p : points) {
                left += p.x < points[i].x;
                right += p.x > points[i].x;
                below += p.y < points[i].y;
                above += p.y > points[i].y;
            }
            const auto imbalance = std::max(left > right ? left - right : right - left,
                                            below > above ? below - above : above - below);
            if (imbalance < best_imbalance) {
                best_imbalance = imbalance;
                depot = i;
            }
        }
        kind[depot] = "depot";
    }

    const auto candidates = points.size() - (spec.place_depot ? 1 : 0);
    const auto restaurants = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(spec.restaurant_fraction * static_cast<double>(n))));
    if (restaurants >= candidates)
        throw ConfigError(fmt::format("infeasible counts: {} restaurants leave no home nodes", restaurants));

    // Weighted sampling without replacement: largest log(u) / weight wins.
    const double sigma = spec.cluster_radius_fraction * side;
    std::vector<std::pair<double, std::size_t>> keys;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double u = (static_cast<double>(rng.next() >> 11) + 0.5) * 0x1.0p-53;
        if (i == depot) continue;
        const double ddx = points[i].x - side / 2.0;
        const double ddy = points[i].y - side / 2.0;
        const double weight = std::exp(-(ddx * ddx + ddy * ddy) / (2.0 * sigma * sigma));
        keys.emplace_back(weight > 0.0 ? std::log(u) / weight : -INFINITY, i);
    }
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    for (std::size_t k = 0; k < restaurants; ++k) kind[keys[k].second] = "restaurant";

    auto nodes = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < points.size(); ++i)
        nodes.push_back({{"id", points[i].id}, {"x", points[i].x}, {"y", points[i].y}, {"kind", kind[i]}});
    auto links = nlohmann::ordered_json::array();
    std::vector<std::pair<int, int>> pairs;
    for (const auto& st : streets)
        if (st.alive) pairs.emplace_back(id_of[st.a], id_of[st.b]);
    std::sort(pairs.begin(), pairs.end());
    for (const auto& [a, b] : pairs) links.push_back({{"from", a}, {"to", b}});
    return {{"nodes", nodes}, {"links", links}};
}

}  // namespace lastmile
