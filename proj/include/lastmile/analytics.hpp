#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lastmile/common.hpp"
#include "lastmile/engine.hpp"

namespace lastmile {

enum class LosCategory { A, B, C, D, F };

inline constexpr std::array<LosCategory, 5> kLosCategories{LosCategory::A, LosCategory::B, LosCategory::C,
                                                           LosCategory::D, LosCategory::F};

std::string_view to_string(LosCategory los);

/// Level of service from a wait in seconds. Bands in minutes, closed on the
/// right: A up to 20, B up to 30, C up to 40, D up to 50, F beyond. Waits
/// under one minute are A.
LosCategory los_of(double wait_seconds);

// Drop-off minus request; throws Error for an undelivered order.
Seconds wait_time(const OrderRecord& record);

// All durations in minutes.
struct WaitSummary {
    double mean = 0.0;  // rounded half-up to 0.1 min
    double median = 0.0;
    double min = 0.0;
    double max = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    std::size_t n = 0;
    std::array<std::size_t, 5> los_histogram{};  // indexed like kLosCategories
    LosCategory system_los = LosCategory::A;     // from the unrounded mean
    std::int64_t total_wait_seconds = 0;

    double exact_mean() const { return n ? static_cast<double>(total_wait_seconds) / (60.0 * n) : 0.0; }
    std::size_t count(LosCategory los) const { return los_histogram[static_cast<std::size_t>(los)]; }
};

/// Five-number summary, mean and LOS histogram of waits given in seconds.
/// Quartiles use the median-of-halves rule: q1 and q3 are medians of the
/// lower and upper halves, excluding the overall median when n is odd
/// (for n = 1 all quartiles equal the single value).
WaitSummary summarize(std::span<const Seconds> waits);
WaitSummary summarize(const SimResult& result);

struct SweepRow {
    int fleet_size = 0;
    double mean_wait = 0.0;  // minutes
};

struct SweepTable {
    std::vector<SweepRow> rows;  // ascending fleet size
    int plateau_fleet = 0;       // smallest fleet within 5% of the largest fleet's mean
};

inline constexpr double kPlateauTolerance = 0.05;

// Throws Error with fewer than two fleet sizes.
SweepTable fleet_sweep_summary(const std::map<int, double>& mean_wait_by_fleet);
SweepTable fleet_sweep_summary(const std::map<int, WaitSummary>& results);

}  // namespace lastmile
