#include "specf/report_json.hpp"

#include <cmath>

#include "specf/errors.hpp"
#include "specf/io.hpp"

namespace specf {

std::string matrix_mode_name(MatrixMode m) {
    return m == MatrixMode::adjacency ? "adjacency" : "expanded";
}

std::string k_mode_name(KModeType k) {
    switch (k) {
        case KModeType::fixed: return "fixed";
        case KModeType::from_partition: return "partition";
        case KModeType::eigengap: return "auto";
    }
    return "partition";
}

std::string filter_mode_name(FilterModeKind f) {
    return f == FilterModeKind::ideal ? "ideal" : "polynomial";
}

OrderedJson config_to_json(const DetectionConfig& cfg) {
    OrderedJson j;
    j["matrix"] = matrix_mode_name(cfg.matrix_mode);
    j["k_mode"] = k_mode_name(cfg.k_mode);
    if (cfg.k_mode == KModeType::fixed) j["k_fixed"] = cfg.fixed_k;
    j["filter"] = filter_mode_name(cfg.filter_mode);
    if (cfg.filter_mode == FilterModeKind::polynomial) j["poly_degree"] = cfg.poly_degree;
    j["multiplier"] = cfg.threshold_multiplier;
    if (cfg.matrix_mode == MatrixMode::expanded) {
        j["expanded_weights"] = {cfg.expanded_weights.adjacent_same,
                                 cfg.expanded_weights.adjacent_cross,
                                 cfg.expanded_weights.non_adjacent_same};
    }
    return j;
}

OrderedJson report_to_json(const DetectionReport& report) {
    OrderedJson j;
    j["config"] = config_to_json(report.config);
    j["k_used"] = report.k_used;
    j["scores"] = report.scores.values;
    j["flags"] = report.flags;
    OrderedJson thresholds = OrderedJson::object();
    for (const auto& [community, value] : report.per_community_thresholds) {
        if (std::isfinite(value))
            thresholds[std::to_string(community)] = value;
        else
            thresholds[std::to_string(community)] = nullptr;  // zero-max sentinel
    }
    j["thresholds"] = std::move(thresholds);
    j["filtered"] = report.filtered.values;
    return j;
}

ReportScores report_scores_from_json(const std::string& text) {
    OrderedJson j;
    try {
        j = OrderedJson::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("report JSON: ") + ex.what());
    }
    if (!j.contains("scores") || !j.contains("flags"))
        throw ParseError("report JSON: missing scores/flags");
    ReportScores out;
    out.scores = j["scores"].get<std::vector<double>>();
    out.flags = j["flags"].get<std::vector<bool>>();
    if (out.scores.size() != out.flags.size())
        throw ParseError("report JSON: scores/flags length mismatch");
    return out;
}

OrderedJson metrics_to_json(double auc, double ap, const Prf1& prf) {
    OrderedJson j;
    j["auc_roc"] = auc;
    j["ap"] = ap;
    j["precision"] = prf.precision;
    j["recall"] = prf.recall;
    j["f1"] = prf.f1;
    j["confusion"] = {{"tp", prf.counts.tp},
                      {"fp", prf.counts.fp},
                      {"tn", prf.counts.tn},
                      {"fn", prf.counts.fn}};
    return j;
}

void write_json_file(const std::string& path, const OrderedJson& j) {
    write_text_file(path, j.dump(2) + "\n");
}

}  // namespace specf
