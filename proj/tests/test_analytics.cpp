#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "lastmile/analytics.hpp"
#include "lastmile/rng.hpp"

using namespace lastmile;

TEST_CASE("LOS bands are closed on the right") {
    CHECK(los_of(0) == LosCategory::A);
    CHECK(los_of(60) == LosCategory::A);
    CHECK(los_of(1200) == LosCategory::A);
    CHECK(los_of(1200.5) == LosCategory::B);
    CHECK(los_of(1260) == LosCategory::B);
    CHECK(los_of(1800) == LosCategory::B);
    CHECK(los_of(2400) == LosCategory::C);
    CHECK(los_of(3000) == LosCategory::D);
    CHECK(los_of(3001) == LosCategory::F);
    CHECK(to_string(LosCategory::F) == "F");
}

TEST_CASE("five-number summary, median of halves") {
    // Minutes 1..7: lower half 1,2,3 and upper half 5,6,7 around the median 4.
    std::vector<Seconds> odd{60, 120, 180, 240, 300, 360, 420};
    auto s = summarize(odd);
    CHECK(s.n == 7);
    CHECK(s.min == 1.0);
    CHECK(s.q1 == 2.0);
    CHECK(s.median == 4.0);
    CHECK(s.q3 == 6.0);
    CHECK(s.max == 7.0);
    CHECK(s.mean == 4.0);

    std::vector<Seconds> even{420, 60, 240, 180, 120, 300};
    s = summarize(even);
    CHECK(s.q1 == 2.0);
    CHECK(s.median == 3.5);
    CHECK(s.q3 == 5.0);

    std::vector<Seconds> one{90};
    s = summarize(one);
    CHECK(s.min == 1.5);
    CHECK(s.q1 == 1.5);
    CHECK(s.q3 == 1.5);
}

TEST_CASE("mean rounds half up to a tenth of a minute") {
    std::vector<Seconds> w{63};  // 1.05 min
    CHECK(summarize(w).mean == doctest::Approx(1.1));
    w = {62};  // 1.0333
    CHECK(summarize(w).mean == doctest::Approx(1.0));
    w = {60, 67};  // 1.0583
    CHECK(summarize(w).mean == doctest::Approx(1.1));
}

TEST_CASE("system LOS uses the unrounded mean") {
    std::vector<Seconds> w{1200, 1202};  // mean 1201 s, 20.0 min once rounded
    auto s = summarize(w);
    CHECK(s.mean == doctest::Approx(20.0));
    CHECK(s.system_los == LosCategory::B);
}

TEST_CASE("summary properties on random samples") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Seconds> w(1 + rng.uniform_below(60));
        for (auto& x : w) x = static_cast<Seconds>(rng.uniform_below(5000));
        auto s = summarize(w);
        CHECK(s.min <= s.q1);
        CHECK(s.q1 <= s.median);
        CHECK(s.median <= s.q3);
        CHECK(s.q3 <= s.max);
        CHECK(s.min <= s.mean + 0.05);
        CHECK(s.mean <= s.max + 0.05);
        CHECK(std::accumulate(s.los_histogram.begin(), s.los_histogram.end(), std::size_t{0}) == w.size());
        CHECK(s.total_wait_seconds == std::accumulate(w.begin(), w.end(), Seconds{0}));
        CHECK(std::abs(s.mean - s.exact_mean()) <= 0.05 + 1e-12);
        std::size_t a = 0;
        for (auto x : w) a += x <= 1200;
        CHECK(s.count(LosCategory::A) == a);
    }
}

TEST_CASE("wait time needs a drop-off") {
    OrderRecord rec;
    rec.order = {1, 100, 2, 3};
    CHECK_THROWS_AS(wait_time(rec), Error);
    rec.dropoff = 900;
    CHECK(wait_time(rec) == 800);
}

TEST_CASE("plateau detection") {
    auto t = fleet_sweep_summary(std::map<int, double>{{5, 100}, {10, 40}, {15, 21}, {20, 20.5}, {25, 20.1}, {30, 20}});
    CHECK(t.rows.size() == 6);
    CHECK(t.rows.front().fleet_size == 5);
    CHECK(t.plateau_fleet == 15);  // 21 <= 1.05 * 20

    t = fleet_sweep_summary(std::map<int, double>{{1, 40}, {2, 20}});
    CHECK(t.plateau_fleet == 2);
    t = fleet_sweep_summary(std::map<int, double>{{3, 12}, {6, 12}, {9, 12}});
    CHECK(t.plateau_fleet == 3);
    CHECK_THROWS_AS(fleet_sweep_summary(std::map<int, double>{{1, 5}}), Error);
}
