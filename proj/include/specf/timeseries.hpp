#pragma once

#include <span>
#include <string>
#include <vector>

#include "specf/detector.hpp"
#include "specf/graph.hpp"
#include "specf/signal.hpp"

namespace specf {

/// Sensor readings, rows = sensors, columns = time steps.
struct MultiSeries {
    int sensors = 0;
    int steps = 0;
    std::vector<double> data;  // row-major sensors x steps
    double sample_period = 1.0;
    std::vector<std::string> names;

    double at(int sensor, int step) const {
        return data[static_cast<std::size_t>(sensor) * steps + step];
    }
    std::span<const double> row(int sensor) const {
        return {data.data() + static_cast<std::size_t>(sensor) * steps,
                static_cast<std::size_t>(steps)};
    }
};

MultiSeries make_multiseries(int sensors, int steps, std::vector<double> data,
                             double sample_period, std::vector<std::string> names = {});

/// Sensor graph: edge (i, j) with weight r iff the Pearson correlation r of
/// the two rows strictly exceeds the threshold. Constant rows correlate 0
/// with everything.
Graph correlation_graph(const MultiSeries& ms, double threshold = 0.5);

/// Classic dynamic time warping with absolute-difference local cost and no
/// warping-window constraint.
double dtw_distance(std::span<const double> a, std::span<const double> b);

struct WindowPlan {
    int window_len = 2;
    int stride = 0;  // <= 0 means stride = window_len
};

struct WindowSignal {
    int index = 0;
    int start_a = 0;  // first step of the earlier window
    int start_b = 0;  // first step of the later window
    Signal values;    // per-sensor DTW distance between the two windows
};

/// One signal per consecutive pair of full windows.
std::vector<WindowSignal> window_signals(const MultiSeries& ms, const WindowPlan& plan);

struct WindowedDetection {
    Graph graph;
    std::vector<WindowSignal> signals;
    std::vector<DetectionReport> reports;  // aligned with signals
    std::vector<bool> union_flags;         // flagged in at least one window
};

/// Runs the detector on every window signal over the fixed correlation
/// graph. Windows are independent and run on up to `jobs` threads; the
/// result does not depend on the job count.
WindowedDetection windowed_detection(const MultiSeries& ms, const WindowPlan& plan,
                                     const Partition& p, const DetectionConfig& cfg,
                                     double correlation_threshold = 0.5, int jobs = 1);

}  // namespace specf
