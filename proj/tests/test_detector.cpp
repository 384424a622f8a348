#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "specf/detector.hpp"
#include "specf/errors.hpp"
#include "specf/generators.hpp"
#include "specf/rng.hpp"
#include "specf/spectral.hpp"

using namespace specf;

namespace {

bool reports_equal(const DetectionReport& a, const DetectionReport& b) {
    if (a.k_used != b.k_used || a.flags != b.flags) return false;
    if (a.scores.values != b.scores.values) return false;
    if (a.filtered.values != b.filtered.values) return false;
    return a.per_community_thresholds == b.per_community_thresholds;
}

}  // namespace

TEST_CASE("abnormality") {
    CHECK(abnormality(Signal({1, 2}), Signal({1, 2})).values == std::vector<double>{0, 0});
    CHECK(abnormality(Signal({1, 5}), Signal({2, 3})).values == std::vector<double>{1, 2});
    SUBCASE("matches elementwise oracle on random pairs") {
        Rng rng(9);
        for (int trial = 0; trial < 20; ++trial) {
            const int n = 1 + static_cast<int>(rng.next_below(20));
            Signal a = Signal::zeros(n);
            Signal b = Signal::zeros(n);
            for (int i = 0; i < n; ++i) {
                a[i] = rng.uniform(-10, 10);
                b[i] = rng.uniform(-10, 10);
            }
            const Signal y = abnormality(a, b);
            for (int i = 0; i < n; ++i) CHECK(y[i] == std::abs(a[i] - b[i]));
        }
    }
    CHECK_THROWS_AS(abnormality(Signal::zeros(2), Signal::zeros(3)), std::invalid_argument);
}

TEST_CASE("community_threshold") {
    SUBCASE("hand arithmetic: (0,0,0,0,0,12)") {
        const Signal y({0, 0, 0, 0, 0, 12});
        const Partition p({0, 0, 0, 0, 0, 0});
        const double td = community_threshold(y, p, 0, 2.0);
        CHECK(td == doctest::Approx((2.0 + 2.0 * std::sqrt(20.0)) / 12.0).epsilon(1e-12));
        CHECK(td == doctest::Approx(0.9120).epsilon(1e-4));
    }
    SUBCASE("all-equal positive values give exactly 1") {
        const Signal y({3, 3, 3});
        CHECK(community_threshold(y, Partition({0, 0, 0}), 0, 2.0) == 1.0);
    }
    SUBCASE("singleton community gives exactly 1") {
        const Signal y({5, 1});
        CHECK(community_threshold(y, Partition({0, 1}), 1, 2.0) == 1.0);
    }
    SUBCASE("zero max yields the +inf sentinel") {
        const Signal y({0, 0});
        CHECK(std::isinf(community_threshold(y, Partition({0, 0}), 0, 2.0)));
    }
    SUBCASE("unknown community") {
        CHECK_THROWS_AS(community_threshold(Signal({1.0}), Partition({0}), 1, 2.0),
                        std::invalid_argument);
    }
}

TEST_CASE("flag_anomalies") {
    SUBCASE("single outlier above mean + 2 std") {
        const Signal y({0, 0, 0, 0, 0, 12});
        const auto flags = flag_anomalies(y, Partition({0, 0, 0, 0, 0, 0}), 2.0);
        CHECK(flags == std::vector<bool>{false, false, false, false, false, true});
    }
    SUBCASE("boundary value is not flagged: mean + 2 std equals the outlier") {
        const Signal y({0, 0, 0, 0, 10});
        const auto flags = flag_anomalies(y, Partition({0, 0, 0, 0, 0}), 2.0);
        CHECK(flags == std::vector<bool>{false, false, false, false, false});
    }
    SUBCASE("zero abnormality flags nothing") {
        const auto flags = flag_anomalies(Signal::zeros(4), Partition({0, 0, 1, 1}), 2.0);
        CHECK(flags == std::vector<bool>{false, false, false, false});
    }
    SUBCASE("agrees with the brute-force rule on random instances") {
        Rng rng(21);
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 2 + static_cast<int>(rng.next_below(29));
            const int k = 1 + static_cast<int>(rng.next_below(std::min(n, 5)));
            std::vector<int> assign(n);
            for (int i = 0; i < n; ++i) assign[i] = static_cast<int>(rng.next_below(k));
            for (int c = 0; c < k; ++c) assign[c % n] = c;  // keep communities nonempty
            Signal y = Signal::zeros(n);
            for (int i = 0; i < n; ++i)
                y[i] = rng.next_double() < 0.15 ? 0.0 : rng.uniform(0.0, 10.0);
            const Partition p(assign);
            CHECK(flag_anomalies(y, p, 2.0) ==
                  oracle::brute_force_flags(y.values, assign, 2.0));
        }
    }
    SUBCASE("chebyshev-style bound: flagged fraction per community stays below a quarter") {
        Rng rng(22);
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 4 + static_cast<int>(rng.next_below(40));
            const int k = 1 + static_cast<int>(rng.next_below(4));
            std::vector<int> assign(n);
            for (int i = 0; i < n; ++i) assign[i] = static_cast<int>(rng.next_below(k));
            for (int c = 0; c < k; ++c) assign[c % n] = c;
            Signal y = Signal::zeros(n);
            for (int i = 0; i < n; ++i) y[i] = rng.uniform(0.0, 1.0);
            const Partition p(assign);
            const auto flags = flag_anomalies(y, p, 2.0);
            for (int c = 0; c < k; ++c) {
                int flagged = 0;
                for (int i : p.members()[c]) flagged += flags[i] ? 1 : 0;
                CHECK(flagged <= static_cast<int>(p.members()[c].size()) / 4 + 1);
            }
        }
    }
}

TEST_CASE("run_specf") {
    const PlantedGraph bench = generate_planted_graph({30, 3, 0.8, 0.1, 77});
    DetectionConfig cfg;  // expanded matrix, k from partition, ideal filter

    SUBCASE("band-limited input yields zero abnormality and no flags") {
        const Spectrum s = eig_sym(laplacian(expanded_matrix(bench.graph, bench.partition)));
        Signal shat = Signal::zeros(30);
        shat[0] = 4.0;
        shat[1] = -2.0;
        shat[2] = 1.0;  // support below k = 3
        const Signal b = igft(shat, s);
        const DetectionReport report = run_specf(bench.graph, b, bench.partition, cfg);
        for (int i = 0; i < 30; ++i) {
            CHECK(report.scores[i] == 0.0);
            CHECK_FALSE(report.flags[i]);
        }
        CHECK(report.k_used == 3);
    }

    SUBCASE("injected anomaly attains the maximum score and is flagged") {
        const PlantedGraph b60 = generate_planted_graph({60, 3, 0.7, 0.08, 5});
        const Signal normal = generate_normal_signal(b60.graph, b60.partition, 6);
        const InjectionResult injected =
            inject_anomalies(normal, b60.partition, {1.0 / 60.0, 0.2, 7});
        int target = -1;
        for (int i = 0; i < 60; ++i)
            if (injected.labels[i]) target = i;
        REQUIRE(target >= 0);
        const DetectionReport report =
            run_specf(b60.graph, injected.corrupted, b60.partition, cfg);
        int argmax = 0;
        for (int i = 1; i < 60; ++i)
            if (report.scores[i] > report.scores[argmax]) argmax = i;
        CHECK(argmax == target);
        CHECK(report.flags[target]);
    }

    SUBCASE("adjacency and expanded modes both produce well-formed reports") {
        const Signal normal = generate_normal_signal(bench.graph, bench.partition, 3);
        const InjectionResult injected =
            inject_anomalies(normal, bench.partition, {0.1, 0.1, 4});
        DetectionConfig adj = cfg;
        adj.matrix_mode = MatrixMode::adjacency;
        const auto ra = run_specf(bench.graph, injected.corrupted, bench.partition, adj);
        const auto rw = run_specf(bench.graph, injected.corrupted, bench.partition, cfg);
        CHECK(ra.scores.size() == 30);
        CHECK(rw.scores.size() == 30);
        CHECK(ra.k_used == 3);
        CHECK(rw.k_used == 3);
        CHECK(ra.scores.values != rw.scores.values);
        CHECK(ra.per_community_thresholds.size() == 3);
    }

    SUBCASE("disconnected graphs are refused") {
        const Graph g(4, {{0, 1, 1.0}, {2, 3, 1.0}});
        CHECK_THROWS_AS(run_specf(g, Signal::zeros(4), Partition({0, 0, 1, 1}), cfg),
                        NumericalError);
    }

    SUBCASE("length and partition mismatches are rejected") {
        CHECK_THROWS_AS(run_specf(bench.graph, Signal::zeros(29), bench.partition, cfg),
                        std::invalid_argument);
        CHECK_THROWS_AS(run_specf(bench.graph, Signal::zeros(30), Partition({0, 0, 1, 1}), cfg),
                        std::invalid_argument);
    }

    SUBCASE("fixed k out of range is rejected") {
        DetectionConfig bad = cfg;
        bad.k_mode = KModeType::fixed;
        bad.fixed_k = 31;
        CHECK_THROWS_AS(run_specf(bench.graph, Signal::zeros(30), bench.partition, bad),
                        std::invalid_argument);
    }
}

TEST_CASE("run_specf properties") {
    const PlantedGraph bench = generate_planted_graph({24, 3, 0.8, 0.1, 13});
    const Signal normal = generate_normal_signal(bench.graph, bench.partition, 2);
    const InjectionResult injected = inject_anomalies(normal, bench.partition, {0.1, 0.2, 3});
    const Signal& b = injected.corrupted;
    DetectionConfig cfg;

    SUBCASE("scaling the signal by a power of two scales Y and keeps flags") {
        const auto base = run_specf(bench.graph, b, bench.partition, cfg);
        Signal scaled = b;
        for (auto& v : scaled.values) v *= 4.0;
        const auto quad = run_specf(bench.graph, scaled, bench.partition, cfg);
        CHECK(quad.flags == base.flags);
        for (int i = 0; i < 24; ++i) CHECK(quad.scores[i] == 4.0 * base.scores[i]);
    }

    SUBCASE("scaling by a generic positive factor keeps the flag set") {
        const auto base = run_specf(bench.graph, b, bench.partition, cfg);
        Signal scaled = b;
        for (auto& v : scaled.values) v *= 3.7;
        const auto other = run_specf(bench.graph, scaled, bench.partition, cfg);
        CHECK(other.flags == base.flags);
        for (int i = 0; i < 24; ++i)
            CHECK(other.scores[i] == doctest::Approx(3.7 * base.scores[i]).epsilon(1e-9));
    }

    SUBCASE("eigenvector sign flips do not change the reconstruction") {
        const Spectrum s = eig_sym(laplacian(expanded_matrix(bench.graph, bench.partition)));
        Spectrum flipped = s;
        for (int i = 0; i < s.n; ++i) flipped.u_ref(i, 2) = -flipped.u(i, 2);
        const FilterResponse fr = ideal_lowpass(s, 3);
        const Signal b1 = igft(apply_filter(gft(b, s), fr), s);
        const Signal b2 = igft(apply_filter(gft(b, flipped), fr), flipped);
        for (int i = 0; i < 24; ++i) CHECK(b1[i] == b2[i]);
    }

    SUBCASE("k = n is the all-pass: zero scores, no flags") {
        DetectionConfig all = cfg;
        all.k_mode = KModeType::fixed;
        all.fixed_k = 24;
        const auto report = run_specf(bench.graph, b, bench.partition, all);
        for (int i = 0; i < 24; ++i) {
            CHECK(report.scores[i] <= 1e-8);
            CHECK_FALSE(report.flags[i]);
        }
    }

    SUBCASE("repeated runs are bit-identical") {
        const auto r1 = run_specf(bench.graph, b, bench.partition, cfg);
        const auto r2 = run_specf(bench.graph, b, bench.partition, cfg);
        CHECK(reports_equal(r1, r2));
    }

    SUBCASE("polynomial filter mode produces a usable report") {
        DetectionConfig poly = cfg;
        poly.filter_mode = FilterModeKind::polynomial;
        const auto report = run_specf(bench.graph, b, bench.partition, poly);
        CHECK(report.scores.size() == 24);
        CHECK(report.k_used == 3);
    }

    SUBCASE("eigengap mode recovers the planted community count") {
        DetectionConfig gap = cfg;
        gap.k_mode = KModeType::eigengap;
        const auto report = run_specf(bench.graph, b, bench.partition, gap);
        CHECK(report.k_used == 3);
        CHECK_FALSE(report.k_degenerate);
    }
}
