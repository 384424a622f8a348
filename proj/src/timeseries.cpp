#include "specf/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "specf/parallel.hpp"

namespace specf {

MultiSeries make_multiseries(int sensors, int steps, std::vector<double> data,
                             double sample_period, std::vector<std::string> names) {
    if (sensors < 2) throw std::invalid_argument("MultiSeries: need at least 2 sensors");
    if (steps < 2) throw std::invalid_argument("MultiSeries: need at least 2 time steps");
    if (data.size() != static_cast<std::size_t>(sensors) * steps)
        throw std::invalid_argument("MultiSeries: data size does not match dimensions");
    for (double v : data)
        if (!std::isfinite(v)) throw std::invalid_argument("MultiSeries: non-finite value");
    if (!(sample_period > 0.0))
        throw std::invalid_argument("MultiSeries: sample period must be positive");
    if (names.empty()) {
        names.reserve(sensors);
        for (int i = 0; i < sensors; ++i) names.push_back("sensor_" + std::to_string(i));
    } else if (names.size() != static_cast<std::size_t>(sensors)) {
        throw std::invalid_argument("MultiSeries: name count does not match sensors");
    }
    return MultiSeries{sensors, steps, std::move(data), sample_period, std::move(names)};
}

namespace {

double pearson(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    double mean_a = 0.0;
    double mean_b = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        mean_a += a[t];
        mean_b += b[t];
    }
    mean_a /= static_cast<double>(n);
    mean_b /= static_cast<double>(n);
    double cov = 0.0;
    double var_a = 0.0;
    double var_b = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double da = a[t] - mean_a;
        const double db = b[t] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a <= 0.0 || var_b <= 0.0) return 0.0;  // constant series
    return cov / std::sqrt(var_a * var_b);
}

}  // namespace

Graph correlation_graph(const MultiSeries& ms, double threshold) {
    std::vector<Edge> edges;
    for (int i = 0; i < ms.sensors; ++i) {
        for (int j = i + 1; j < ms.sensors; ++j) {
            const double r = pearson(ms.row(i), ms.row(j));
            if (r > threshold) edges.push_back({i, j, r});
        }
    }
    return Graph(ms.sensors, std::move(edges));
}

double dtw_distance(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("dtw_distance: empty sequence");
    const std::size_t rows = a.size();
    const std::size_t cols = b.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> prev(cols, inf);
    std::vector<double> curr(cols, inf);
    for (std::size_t p = 0; p < rows; ++p) {
        for (std::size_t q = 0; q < cols; ++q) {
            const double cost = std::abs(a[p] - b[q]);
            double best;
            if (p == 0 && q == 0)
                best = 0.0;
            else if (p == 0)
                best = curr[q - 1];
            else if (q == 0)
                best = prev[q];
            else
                best = std::min({prev[q], curr[q - 1], prev[q - 1]});
            curr[q] = cost + best;
        }
        std::swap(prev, curr);
    }
    return prev[cols - 1];
}

std::vector<WindowSignal> window_signals(const MultiSeries& ms, const WindowPlan& plan) {
    if (plan.window_len < 2)
        throw std::invalid_argument("window_signals: window length must be >= 2");
    const int stride = plan.stride > 0 ? plan.stride : plan.window_len;
    const int full_windows =
        ms.steps >= plan.window_len ? (ms.steps - plan.window_len) / stride + 1 : 0;
    if (full_windows < 2)
        throw std::invalid_argument("window_signals: series too short for a window pair");

    std::vector<WindowSignal> out;
    out.reserve(full_windows - 1);
    for (int w = 0; w + 1 < full_windows; ++w) {
        WindowSignal ws;
        ws.index = w;
        ws.start_a = w * stride;
        ws.start_b = (w + 1) * stride;
        ws.values = Signal::zeros(ms.sensors);
        for (int s = 0; s < ms.sensors; ++s) {
            const auto row = ms.row(s);
            ws.values[s] = dtw_distance(row.subspan(ws.start_a, plan.window_len),
                                        row.subspan(ws.start_b, plan.window_len));
        }
        out.push_back(std::move(ws));
    }
    return out;
}

WindowedDetection windowed_detection(const MultiSeries& ms, const WindowPlan& plan,
                                     const Partition& p, const DetectionConfig& cfg,
                                     double correlation_threshold, int jobs) {
    Graph graph = correlation_graph(ms, correlation_threshold);
    std::vector<WindowSignal> signals = window_signals(ms, plan);
    std::vector<DetectionReport> reports(signals.size());
    parallel_for(static_cast<int>(signals.size()), jobs, [&](int w) {
        reports[w] = run_specf(graph, signals[w].values, p, cfg);
    });
    std::vector<bool> unioned(ms.sensors, false);
    for (const DetectionReport& report : reports)
        for (int i = 0; i < ms.sensors; ++i)
            if (report.flags[i]) unioned[i] = true;
    return WindowedDetection{std::move(graph), std::move(signals), std::move(reports),
                             std::move(unioned)};
}

}  // namespace specf
