#pragma once

#include <string>

#include "json.hpp"
#include "specf/detector.hpp"
#include "specf/eval.hpp"

namespace specf {

using OrderedJson = nlohmann::ordered_json;

std::string matrix_mode_name(MatrixMode m);
std::string k_mode_name(KModeType k);
std::string filter_mode_name(FilterModeKind f);

OrderedJson config_to_json(const DetectionConfig& cfg);
OrderedJson report_to_json(const DetectionReport& report);

/// Reads back the fields needed for evaluation (scores and flags).
struct ReportScores {
    std::vector<double> scores;
    std::vector<bool> flags;
};
ReportScores report_scores_from_json(const std::string& text);

OrderedJson metrics_to_json(double auc, double ap, const Prf1& prf);

void write_json_file(const std::string& path, const OrderedJson& j);

}  // namespace specf
