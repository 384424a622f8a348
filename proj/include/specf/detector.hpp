#pragma once

#include <map>
#include <vector>

#include "specf/graph.hpp"
#include "specf/signal.hpp"
#include "specf/spectral.hpp"

namespace specf {

enum class MatrixMode { adjacency, expanded };
enum class KModeType { fixed, from_partition, eigengap };
enum class FilterModeKind { ideal, polynomial };

struct DetectionConfig {
    MatrixMode matrix_mode = MatrixMode::expanded;
    KModeType k_mode = KModeType::from_partition;
    int fixed_k = 0;  // used when k_mode == fixed
    FilterModeKind filter_mode = FilterModeKind::ideal;
    int poly_degree = -1;  // < 0 means min(n - 1, 20)
    double threshold_multiplier = 2.0;
    ExpandedWeights expanded_weights{};
};

struct DetectionReport {
    Signal scores;    // abnormality Y
    std::vector<bool> flags;
    Signal filtered;  // low-pass reconstruction
    int k_used = 0;
    bool k_degenerate = false;  // eigengap estimation hit an all-equal spectrum
    std::map<int, double> per_community_thresholds;
    DetectionConfig config;
};

/// Full detection pass: build the configured matrix, transform the signal,
/// low-pass filter it, and flag nodes whose reconstruction error stands out
/// within their community. Refuses disconnected graphs.
DetectionReport run_specf(const Graph& g, const Signal& b, const Partition& p,
                          const DetectionConfig& cfg);

/// Elementwise |b - filtered|.
Signal abnormality(const Signal& b, const Signal& filtered);

/// Normalized per-community threshold (mean + multiplier * std) / max using
/// the population standard deviation. Returns +inf when the community max is
/// zero, so nothing can be flagged there.
double community_threshold(const Signal& y, const Partition& p, int community,
                           double multiplier);

/// Node i is flagged iff y_i strictly exceeds mean + multiplier * std of its
/// community. Singleton and all-equal communities never flag.
std::vector<bool> flag_anomalies(const Signal& y, const Partition& p, double multiplier);

}  // namespace specf
