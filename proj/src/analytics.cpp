#include "lastmile/analytics.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace lastmile {

std::string_view to_string(LosCategory los) {
    switch (los) {
        case LosCategory::A: return "A";
        case LosCategory::B: return "B";
        case LosCategory::C: return "C";
        case LosCategory::D: return "D";
        case LosCategory::F: return "F";
    }
    return "F";
}

LosCategory los_of(double wait_seconds) {
    if (wait_seconds <= 20 * 60) return LosCategory::A;
    if (wait_seconds <= 30 * 60) return LosCategory::B;
    if (wait_seconds <= 40 * 60) return LosCategory::C;
    if (wait_seconds <= 50 * 60) return LosCategory::D;
    return LosCategory::F;
}

Seconds wait_time(const OrderRecord& record) {
    if (!record.dropoff) throw Error(fmt::format("order {} has not been delivered", record.order.id));
    return *record.dropoff - record.order.request_time;
}

namespace {

// Median of sorted[lo, hi), in seconds.
double median_of(const std::vector<Seconds>& sorted, std::size_t lo, std::size_t hi) {
    const auto n = hi - lo;
    const auto mid = lo + n / 2;
    if (n % 2 == 1) return static_cast<double>(sorted[mid]);
    return (static_cast<double>(sorted[mid - 1]) + static_cast<double>(sorted[mid])) / 2.0;
}

}  // namespace

WaitSummary summarize(std::span<const Seconds> waits) {
    if (waits.empty()) throw Error("cannot summarize an empty wait list");
    std::vector<Seconds> sorted(waits.begin(), waits.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = sorted.size();

    WaitSummary s;
    s.n = n;
    for (const auto w : sorted) {
        s.total_wait_seconds += w;
        ++s.los_histogram[static_cast<std::size_t>(los_of(static_cast<double>(w)))];
    }
    // Exact rational mean total / (60 n), rounded half-up at one decimal.
    const std::int64_t numerator = s.total_wait_seconds * 10;
    const auto denominator = static_cast<std::int64_t>(60 * n);
    s.mean = static_cast<double>((2 * numerator + denominator) / (2 * denominator)) / 10.0;
    s.system_los = los_of(static_cast<double>(s.total_wait_seconds) / static_cast<double>(n));

    s.min = static_cast<double>(sorted.front()) / 60.0;
    s.max = static_cast<double>(sorted.back()) / 60.0;
    s.median = median_of(sorted, 0, n) / 60.0;
    if (n == 1) {
        s.q1 = s.q3 = s.median;
    } else {
        s.q1 = median_of(sorted, 0, n / 2) / 60.0;
        s.q3 = median_of(sorted, (n + 1) / 2, n) / 60.0;
    }
    return s;
}

WaitSummary summarize(const SimResult& result) {
    std::vector<Seconds> waits;
    waits.reserve(result.per_order.size());
    for (const auto& [id, rec] : result.per_order) waits.push_back(wait_time(rec));
    return summarize(waits);
}

SweepTable fleet_sweep_summary(const std::map<int, double>& mean_wait_by_fleet) {
    if (mean_wait_by_fleet.size() < 2) throw Error("a fleet sweep needs at least two fleet sizes");
    SweepTable table;
    for (const auto& [fleet, mean] : mean_wait_by_fleet) table.rows.push_back({fleet, mean});
    const double reference = table.rows.back().mean_wait;
    for (const auto& row : table.rows) {
        if (std::abs(row.mean_wait - reference) <= kPlateauTolerance * reference) {
            table.plateau_fleet = row.fleet_size;
            break;
        }
    }
    return table;
}

SweepTable fleet_sweep_summary(const std::map<int, WaitSummary>& results) {
    std::map<int, double> means;
    for (const auto& [fleet, summary] : results) means[fleet] = summary.exact_mean();
    return fleet_sweep_summary(means);
}

}  // namespace lastmile
