#pragma once

#include <optional>
#include <string>

#include "lastmile/engine.hpp"

namespace lastmile {

/// Per-order itinerary CSV, ascending order id.
///   standalone: o_ID,R_t,FP_t,β,α,P_t,D_t,W_t
///   hybrid:     o_ID,R_t,β,α,rP_t,rD_t,dP_t,dD_t,W_t
/// With `vehicle`, only orders carried by that vehicle are listed.
std::string emit_itinerary(const SimResult& result, std::optional<VehicleId> vehicle = std::nullopt);

/// Road paths driven per (robot, order), one line each in trip order:
///   Vehicle(1).Pathnode=[190,189,154,...,131]; % o_ID=374
/// Consecutive legs of one trip are joined at the shared node.
std::string emit_paths(const SimResult& result);

}  // namespace lastmile
