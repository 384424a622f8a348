#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "specf/errors.hpp"
#include "specf/rng.hpp"
#include "specf/timeseries.hpp"

using namespace specf;

namespace {

MultiSeries series_from_rows(std::vector<std::vector<double>> rows, double period = 1.0) {
    const int sensors = static_cast<int>(rows.size());
    const int steps = static_cast<int>(rows[0].size());
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(sensors) * steps);
    for (const auto& r : rows) data.insert(data.end(), r.begin(), r.end());
    return make_multiseries(sensors, steps, std::move(data), period);
}

}  // namespace

TEST_CASE("correlation_graph") {
    SUBCASE("identical non-constant series correlate at 1") {
        const MultiSeries ms = series_from_rows({{1, 2, 3, 4}, {1, 2, 3, 4}});
        const Graph g = correlation_graph(ms);
        REQUIRE(g.edge_count() == 1);
        CHECK(g.edges()[0].weight == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("a series and its negation stay unconnected") {
        const MultiSeries ms = series_from_rows({{1, 2, 3, 4}, {-1, -2, -3, -4}});
        CHECK(correlation_graph(ms).edge_count() == 0);
    }
    SUBCASE("constant series correlate 0 with everything") {
        const MultiSeries ms = series_from_rows({{5, 5, 5, 5}, {1, 2, 3, 4}});
        CHECK(correlation_graph(ms).edge_count() == 0);
    }
    SUBCASE("edges appear exactly where the Pearson oracle exceeds the threshold") {
        Rng rng(31);
        for (int trial = 0; trial < 20; ++trial) {
            const int sensors = 3 + static_cast<int>(rng.next_below(4));
            const int steps = 6 + static_cast<int>(rng.next_below(10));
            std::vector<std::vector<double>> rows(sensors, std::vector<double>(steps));
            std::vector<double> shared(steps);
            for (double& v : shared) v = rng.uniform(-1, 1);
            for (int s = 0; s < sensors; ++s)
                for (int t = 0; t < steps; ++t)
                    rows[s][t] = shared[t] + rng.uniform(-0.8, 0.8);
            const MultiSeries ms = series_from_rows(rows);
            const Graph g = correlation_graph(ms, 0.5);
            for (int i = 0; i < sensors; ++i) {
                for (int j = i + 1; j < sensors; ++j) {
                    const double r = oracle::pearson_direct(ms.row(i), ms.row(j));
                    CHECK(g.has_edge(i, j) == (r > 0.5));
                }
            }
            for (const Edge& e : g.edges()) {
                CHECK(e.weight > 0.5);
                CHECK(e.weight <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("dtw_distance") {
    SUBCASE("identical sequences cost nothing") {
        const std::vector<double> a{1, 2, 3, 2};
        CHECK(dtw_distance(a, a) == 0.0);
    }
    SUBCASE("hand table for (0,0,1) vs (0,1)") {
        const std::vector<double> a{0, 0, 1};
        const std::vector<double> b{0, 1};
        // the warp 0->0, 0->0, 1->1 is free; verified against the
        // path-enumeration oracle
        CHECK(oracle::dtw_path_enum(a, b) == 0.0);
        CHECK(dtw_distance(a, b) == 0.0);
    }
    SUBCASE("length-1 sequences reduce to the absolute difference") {
        const std::vector<double> a{3.5};
        const std::vector<double> b{1.25};
        CHECK(dtw_distance(a, b) == 2.25);
    }
    SUBCASE("symmetry and nonnegativity on random pairs") {
        Rng rng(33);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> a(1 + rng.next_below(6)), b(1 + rng.next_below(6));
            for (double& v : a) v = rng.uniform(-2, 2);
            for (double& v : b) v = rng.uniform(-2, 2);
            const double d = dtw_distance(a, b);
            CHECK(d >= 0.0);
            CHECK(dtw_distance(b, a) == d);
        }
    }
    SUBCASE("matches exhaustive path enumeration for short sequences") {
        Rng rng(34);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> a(1 + rng.next_below(5)), b(1 + rng.next_below(5));
            for (double& v : a) v = rng.uniform(-3, 3);
            for (double& v : b) v = rng.uniform(-3, 3);
            CHECK(dtw_distance(a, b) == oracle::dtw_path_enum(a, b));
        }
    }
    SUBCASE("empty input is rejected") {
        const std::vector<double> a{1.0};
        CHECK_THROWS_AS(dtw_distance(a, {}), std::invalid_argument);
    }
}

TEST_CASE("window_signals") {
    SUBCASE("constant series produce all-zero signals") {
        const MultiSeries ms = series_from_rows(
            {std::vector<double>(12, 2.0), std::vector<double>(12, -1.0)});
        const auto signals = window_signals(ms, {4, 0});
        REQUIRE(signals.size() == 2);
        for (const auto& ws : signals)
            for (double v : ws.values.values) CHECK(v == 0.0);
    }
    SUBCASE("window count: 12 steps, window 4, stride 4 emit 2 signals") {
        const MultiSeries ms = series_from_rows(
            {std::vector<double>(12, 0.0), std::vector<double>(12, 1.0)});
        const auto signals = window_signals(ms, {4, 4});
        CHECK(signals.size() == 2);
        CHECK(signals[0].start_a == 0);
        CHECK(signals[0].start_b == 4);
        CHECK(signals[1].start_a == 4);
        CHECK(signals[1].start_b == 8);
    }
    SUBCASE("a level shift shows up as the unique maximum") {
        std::vector<std::vector<double>> rows(4, std::vector<double>(8, 1.0));
        for (int t = 4; t < 8; ++t) rows[2][t] = 9.0;  // sensor 2 jumps in window 2
        const auto signals = window_signals(series_from_rows(rows), {4, 0});
        REQUIRE(signals.size() == 1);
        for (int s = 0; s < 4; ++s) {
            if (s == 2)
                CHECK(signals[0].values[s] > 0.0);
            else
                CHECK(signals[0].values[s] == 0.0);
        }
    }
    SUBCASE("too-short series are rejected") {
        const MultiSeries ms = series_from_rows({{1, 2, 3}, {4, 5, 6}});
        CHECK_THROWS_AS(window_signals(ms, {3, 0}), std::invalid_argument);
    }
}

TEST_CASE("windowed_detection") {
    DetectionConfig cfg;
    cfg.matrix_mode = MatrixMode::expanded;

    SUBCASE("identical periodic sensors never flag") {
        // every sensor repeats the same pattern, so windows are identical,
        // correlations are 1 and every window signal is exactly zero
        std::vector<double> pattern{1, 5, 2, 4, 1, 5, 2, 4, 1, 5, 2, 4};
        const MultiSeries ms = series_from_rows({pattern, pattern, pattern});
        const auto det = windowed_detection(ms, {4, 0}, Partition({0, 0, 0}), cfg);
        CHECK(det.reports.size() == 2);
        for (const auto& report : det.reports)
            for (bool f : report.flags) CHECK_FALSE(f);
        for (bool f : det.union_flags) CHECK_FALSE(f);
    }

    SUBCASE("a step change is flagged in exactly the affected window pairs") {
        // ten sensors share a period-4 pattern; sensor 7 jumps during the
        // second window, which perturbs exactly the window pairs (0,1), (1,2)
        const int steps = 16;
        const double pattern[4] = {0.0, 2.0, 1.0, 3.0};
        std::vector<std::vector<double>> rows(10, std::vector<double>(steps));
        for (int s = 0; s < 10; ++s)
            for (int t = 0; t < steps; ++t) rows[s][t] = pattern[t % 4];
        for (int t = 4; t < 8; ++t) rows[7][t] += 1.0;
        const MultiSeries ms = series_from_rows(rows);
        const auto det = windowed_detection(ms, {4, 0}, Partition(std::vector<int>(10, 0)), cfg);
        REQUIRE(det.reports.size() == 3);
        // windows (0,1) and (1,2) both involve the jump, (2,3) does not
        CHECK(det.reports[0].flags[7]);
        CHECK(det.reports[1].flags[7]);
        CHECK_FALSE(det.reports[2].flags[7]);
        CHECK(det.union_flags[7]);
        for (int s = 0; s < 10; ++s)
            if (s != 7) CHECK_FALSE(det.union_flags[s]);
    }

    SUBCASE("determinism, independent of the job count") {
        std::vector<double> pattern{1, 5, 2, 4, 1, 5, 2, 4};
        const MultiSeries ms = series_from_rows({pattern, pattern, pattern});
        const auto a = windowed_detection(ms, {4, 0}, Partition({0, 0, 0}), cfg, 0.5, 1);
        const auto b = windowed_detection(ms, {4, 0}, Partition({0, 0, 0}), cfg, 0.5, 4);
        REQUIRE(a.reports.size() == b.reports.size());
        for (std::size_t w = 0; w < a.reports.size(); ++w) {
            CHECK(a.reports[w].scores.values == b.reports[w].scores.values);
            CHECK(a.reports[w].flags == b.reports[w].flags);
        }
    }
}
