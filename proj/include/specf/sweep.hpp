#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specf/detector.hpp"

namespace specf {

/// Benchmark sweep: the cross product of graph parameters, anomaly
/// parameters and matrix modes, each cell repeated over a fixed number of
/// seeds. The same (n, graph, seed) triple reuses one generated graph and
/// normal signal across all anomaly/matrix cells, so matrix modes are
/// compared on identical inputs.
struct SweepConfig {
    struct GraphParams {
        int k = 1;
        double p_in = 0.0;
        double p_out = 0.0;
    };

    std::vector<int> n_values;
    std::vector<GraphParams> graphs;
    std::vector<double> an_values;
    std::vector<double> theta_values;
    std::vector<MatrixMode> matrix_modes;
    int seeds = 1;
    std::uint64_t base_seed = 0;
    double multiplier = 2.0;
    KModeType k_mode = KModeType::from_partition;
    FilterModeKind filter_mode = FilterModeKind::ideal;
    int poly_degree = -1;

    /// Parses and validates the JSON document; throws ParseError.
    static SweepConfig from_json(const std::string& text);

    std::size_t cell_count() const {
        return n_values.size() * graphs.size() * an_values.size() * theta_values.size() *
               matrix_modes.size();
    }
};

struct SweepRow {
    bool aggregate = false;
    int n = 0;
    int k = 0;
    double p_in = 0.0;
    double p_out = 0.0;
    double mu = 0.0;
    double an = 0.0;
    double theta = 0.0;
    MatrixMode matrix = MatrixMode::expanded;
    int seed_index = -1;  // -1 in aggregate rows
    std::uint64_t graph_seed = 0;
    std::uint64_t anomaly_seed = 0;
    bool ok = true;
    std::string error;
    int errors_in_cell = 0;  // aggregate rows only
    int ok_runs = 0;         // aggregate rows only
    int k_used = 0;
    double auc = 0.0;
    double ap = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double auc_std = 0.0;
    double ap_std = 0.0;
    double precision_std = 0.0;
    double recall_std = 0.0;
    double f1_std = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // canonical order: per cell, runs then aggregate
    bool any_failure = false;
};

/// Executes every (cell, seed) unit, in parallel up to `jobs`; the result is
/// identical to serial execution. Unit failures are recorded in their row.
SweepResult run_sweep(const SweepConfig& cfg, int jobs);

/// RFC-4180 CSV (CRLF, quoted where needed), one row per run plus one
/// aggregate row per cell with mean and standard deviation.
std::string sweep_csv(const SweepResult& result);

}  // namespace specf
