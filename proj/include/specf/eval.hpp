#pragma once

#include <vector>

namespace specf {

struct LabeledScores {
    std::vector<double> scores;
    std::vector<bool> labels;  // true = anomaly
};

/// Exact rank-statistic AUC: P(score_pos > score_neg) + P(tie)/2.
/// Requires at least one positive and one negative label.
double roc_auc(const LabeledScores& ls);

/// Step-sum average precision over the descending-score sweep; tied scores
/// are processed as one group. Requires both classes present.
double average_precision(const LabeledScores& ls);

struct Confusion {
    long tp = 0;
    long fp = 0;
    long tn = 0;
    long fn = 0;
};

struct Prf1 {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    Confusion counts;
};

/// Precision/recall/F1 with the zero-denominator convention (treated as 0).
Prf1 prf1(const std::vector<bool>& flags, const std::vector<bool>& labels);

struct CurvePoint {
    double threshold = 0.0;
    double x = 0.0;  // fpr (ROC) or recall (PR)
    double y = 0.0;  // tpr (ROC) or precision (PR)
};

/// Operating points per distinct threshold, descending.
std::vector<CurvePoint> roc_curve(const LabeledScores& ls);
std::vector<CurvePoint> pr_curve(const LabeledScores& ls);

}  // namespace specf
