#include "specf/eval.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace specf {

namespace {

void validate(const LabeledScores& ls, bool need_both_classes) {
    if (ls.scores.empty() || ls.scores.size() != ls.labels.size())
        throw std::invalid_argument("LabeledScores: lengths must match and be >= 1");
    if (need_both_classes) {
        const long pos = std::count(ls.labels.begin(), ls.labels.end(), true);
        if (pos == 0 || pos == static_cast<long>(ls.labels.size()))
            throw std::invalid_argument("LabeledScores: both classes must be present");
    }
}

// indices sorted by score descending; equal scores keep index order
std::vector<int> descending_order(const std::vector<double>& scores) {
    std::vector<int> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return scores[a] > scores[b]; });
    return order;
}

}  // namespace

double roc_auc(const LabeledScores& ls) {
    validate(ls, true);
    const int n = static_cast<int>(ls.scores.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return ls.scores[a] < ls.scores[b]; });
    // average ranks over tie groups, 1-based
    double pos_rank_sum = 0.0;
    long pos = 0;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j < n && ls.scores[order[j]] == ls.scores[order[i]]) ++j;
        const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (int t = i; t < j; ++t) {
            if (ls.labels[order[t]]) {
                pos_rank_sum += avg_rank;
                ++pos;
            }
        }
        i = j;
    }
    const long neg = n - pos;
    const double numer =
        pos_rank_sum - static_cast<double>(pos) * (static_cast<double>(pos) + 1.0) / 2.0;
    return numer / (static_cast<double>(pos) * static_cast<double>(neg));
}

double average_precision(const LabeledScores& ls) {
    validate(ls, true);
    const auto order = descending_order(ls.scores);
    const int n = static_cast<int>(order.size());
    const long total_pos = std::count(ls.labels.begin(), ls.labels.end(), true);
    long tp = 0;
    long fp = 0;
    double ap = 0.0;
    double prev_recall = 0.0;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j < n && ls.scores[order[j]] == ls.scores[order[i]]) ++j;
        for (int t = i; t < j; ++t)
            ls.labels[order[t]] ? ++tp : ++fp;
        const double recall = static_cast<double>(tp) / static_cast<double>(total_pos);
        const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
        ap += (recall - prev_recall) * precision;
        prev_recall = recall;
        i = j;
    }
    return ap;
}

Prf1 prf1(const std::vector<bool>& flags, const std::vector<bool>& labels) {
    if (flags.size() != labels.size())
        throw std::invalid_argument("prf1: lengths must match");
    Prf1 out;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (flags[i] && labels[i]) ++out.counts.tp;
        else if (flags[i] && !labels[i]) ++out.counts.fp;
        else if (!flags[i] && labels[i]) ++out.counts.fn;
        else ++out.counts.tn;
    }
    const long pred_pos = out.counts.tp + out.counts.fp;
    const long real_pos = out.counts.tp + out.counts.fn;
    out.precision = pred_pos > 0 ? static_cast<double>(out.counts.tp) / pred_pos : 0.0;
    out.recall = real_pos > 0 ? static_cast<double>(out.counts.tp) / real_pos : 0.0;
    out.f1 = (out.precision + out.recall) > 0.0
                 ? 2.0 * out.precision * out.recall / (out.precision + out.recall)
                 : 0.0;
    return out;
}

std::vector<CurvePoint> roc_curve(const LabeledScores& ls) {
    validate(ls, true);
    const auto order = descending_order(ls.scores);
    const int n = static_cast<int>(order.size());
    const long total_pos = std::count(ls.labels.begin(), ls.labels.end(), true);
    const long total_neg = n - total_pos;
    std::vector<CurvePoint> points;
    long tp = 0;
    long fp = 0;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j < n && ls.scores[order[j]] == ls.scores[order[i]]) ++j;
        for (int t = i; t < j; ++t)
            ls.labels[order[t]] ? ++tp : ++fp;
        points.push_back({ls.scores[order[i]],
                          static_cast<double>(fp) / static_cast<double>(total_neg),
                          static_cast<double>(tp) / static_cast<double>(total_pos)});
        i = j;
    }
    return points;
}

std::vector<CurvePoint> pr_curve(const LabeledScores& ls) {
    validate(ls, true);
    const auto order = descending_order(ls.scores);
    const int n = static_cast<int>(order.size());
    const long total_pos = std::count(ls.labels.begin(), ls.labels.end(), true);
    std::vector<CurvePoint> points;
    long tp = 0;
    long fp = 0;
    int i = 0;
    while (i < n) {
        int j = i;
        while (j < n && ls.scores[order[j]] == ls.scores[order[i]]) ++j;
        for (int t = i; t < j; ++t)
            ls.labels[order[t]] ? ++tp : ++fp;
        points.push_back({ls.scores[order[i]],
                          static_cast<double>(tp) / static_cast<double>(total_pos),
                          static_cast<double>(tp) / static_cast<double>(tp + fp)});
        i = j;
    }
    return points;
}

}  // namespace specf
