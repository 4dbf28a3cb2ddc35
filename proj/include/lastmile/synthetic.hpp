#pragma once

#include <cstdint>

#include <json.hpp>

namespace lastmile {

/// Parameters for an irregular-grid street network.
///
/// Node and street counts and the area default to the downtown study area
/// the simulator was built around. restaurant_fraction and
/// cluster_radius_fraction are free parameters with no observed values
/// behind them: restaurants are drawn around the centre with Gaussian
/// weights whose sigma is cluster_radius_fraction times the shorter side.
struct SyntheticNetworkSpec {
    int target_nodes = 199;
    int target_links = 286;
    double area_km2 = 5.80;
    double restaurant_fraction = 0.15;
    double cluster_radius_fraction = 0.15;
    double jitter_fraction = 0.25;  // of grid spacing, per axis
    bool place_depot = true;
    std::uint64_t seed = 1;
};

/// Builds a network document: a near-square grid with at least
/// target_nodes points, jittered, then thinned to the exact node and
/// street counts without disconnecting it. Surplus nodes and then surplus
/// streets are removed in seeded random order, skipping any removal that
/// would disconnect the graph. The depot is the node with the smallest
/// worst-axis imbalance between nodes on either side of it. Node ids run
/// 1..target_nodes in row-major grid order.
///
/// Throws ConfigError when the counts are infeasible.
nlohmann::ordered_json generate_synthetic_network(const SyntheticNetworkSpec& spec);

}  // namespace lastmile
