// Command-line front end: benchmark generation, detection, evaluation,
// parameter sweeps and windowed time-series detection.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "specf/detector.hpp"
#include "specf/errors.hpp"
#include "specf/eval.hpp"
#include "specf/generators.hpp"
#include "specf/io.hpp"
#include "specf/parallel.hpp"
#include "specf/report_json.hpp"
#include "specf/rng.hpp"
#include "specf/sweep.hpp"
#include "specf/timeseries.hpp"

namespace fs = std::filesystem;
using namespace specf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitNumerical = 4;
constexpr int kExitPartialSweep = 5;

constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  2  usage error (bad flags or parameter values)\n"
    "  3  input format error (unparseable or inconsistent files)\n"
    "  4  numerical failure (disconnected graph, eigensolver failure)\n"
    "  5  sweep finished with failed cells";

class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct DetectFlags {
    std::string matrix = "expanded";
    std::string k = "partition";
    std::string filter = "ideal";
    double multiplier = 2.0;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--matrix", matrix, "Matrix to decompose: adjacency|expanded")
            ->default_val("expanded");
        cmd->add_option("--k", k, "Cut-off index: auto|partition|<int>")
            ->default_val("partition");
        cmd->add_option("--filter", filter, "Filter mode: ideal|poly:<degree>")
            ->default_val("ideal");
        cmd->add_option("--multiplier", multiplier, "Threshold multiplier")
            ->default_val(2.0);
    }

    DetectionConfig to_config() const {
        DetectionConfig cfg;
        if (matrix == "adjacency")
            cfg.matrix_mode = MatrixMode::adjacency;
        else if (matrix == "expanded")
            cfg.matrix_mode = MatrixMode::expanded;
        else
            throw UsageError("--matrix must be adjacency or expanded");

        if (k == "auto") {
            cfg.k_mode = KModeType::eigengap;
        } else if (k == "partition") {
            cfg.k_mode = KModeType::from_partition;
        } else {
            try {
                std::size_t used = 0;
                cfg.fixed_k = std::stoi(k, &used);
                if (used != k.size()) throw std::invalid_argument(k);
            } catch (const std::exception&) {
                throw UsageError("--k must be auto, partition or an integer");
            }
            if (cfg.fixed_k < 1) throw UsageError("--k must be >= 1");
            cfg.k_mode = KModeType::fixed;
        }

        if (filter == "ideal") {
            cfg.filter_mode = FilterModeKind::ideal;
        } else if (filter.rfind("poly:", 0) == 0) {
            cfg.filter_mode = FilterModeKind::polynomial;
            try {
                std::size_t used = 0;
                cfg.poly_degree = std::stoi(filter.substr(5), &used);
                if (used != filter.size() - 5) throw std::invalid_argument(filter);
            } catch (const std::exception&) {
                throw UsageError("--filter poly:<degree> needs an integer degree");
            }
            if (cfg.poly_degree < 0) throw UsageError("--filter polynomial degree must be >= 0");
        } else {
            throw UsageError("--filter must be ideal or poly:<degree>");
        }

        if (!(multiplier >= 0.0)) throw UsageError("--multiplier must be >= 0");
        cfg.threshold_multiplier = multiplier;
        return cfg;
    }
};

void emit_json(const std::string& out, const OrderedJson& j) {
    if (out == "-")
        std::cout << j.dump(2) << "\n";
    else
        write_json_file(out, j);
}

int cmd_gen(int n, int k, double p_in, double p_out, double an, double theta,
            std::uint64_t seed, const std::string& out_dir) {
    if (n < 1) throw UsageError("--n must be >= 1");
    if (k < 1 || k > n) throw UsageError("--k must be in [1, n]");
    if (!(p_out >= 0.0 && p_out < p_in && p_in <= 1.0))
        throw UsageError("need 0 <= p-out < p-in <= 1");
    if (!(an > 0.0 && an <= 1.0)) throw UsageError("--an must be in (0, 1]");
    if (!(theta > 0.0 && theta <= 1.0)) throw UsageError("--theta must be in (0, 1]");

    const std::uint64_t graph_seed = derive_seed(seed, 1);
    const std::uint64_t signal_seed = derive_seed(seed, 2);
    const std::uint64_t anomaly_seed = derive_seed(seed, 3);

    const PlantedGraph planted = generate_planted_graph({n, k, p_in, p_out, graph_seed});
    const Signal normal =
        generate_normal_signal(planted.graph, planted.partition, signal_seed);
    const InjectionResult injected =
        inject_anomalies(normal, planted.partition, {an, theta, anomaly_seed});

    fs::create_directories(out_dir);
    const LabelTable ids = LabelTable::identity(n);
    const fs::path dir(out_dir);
    write_edge_list((dir / "edges.tsv").string(), planted.graph, ids);
    write_partition((dir / "partition.tsv").string(), planted.partition, ids);
    write_signal_csv((dir / "signal.csv").string(), injected.corrupted, ids);
    write_labels_csv((dir / "labels.csv").string(), injected.labels, ids);

    long anomaly_count = 0;
    for (bool b : injected.labels) anomaly_count += b ? 1 : 0;
    OrderedJson meta;
    meta["rng"] = kRngAlgorithm;
    meta["parameters"] = {{"n", n},      {"k", k},           {"p_in", p_in},
                          {"p_out", p_out}, {"an", an},      {"theta", theta}};
    meta["seeds"] = {{"root", seed},
                     {"graph", graph_seed},
                     {"signal", signal_seed},
                     {"anomaly", anomaly_seed}};
    meta["derived_mu"] = planted.derived_mu;
    meta["connectivity_attempts"] = planted.attempts;
    meta["anomaly_count"] = anomaly_count;
    meta["files"] = {{"edges", "edges.tsv"},
                     {"partition", "partition.tsv"},
                     {"signal", "signal.csv"},
                     {"labels", "labels.csv"}};
    write_json_file((dir / "meta.json").string(), meta);
    return kExitOk;
}

int cmd_detect(const std::string& graph_path, const std::string& signal_path,
               const std::string& partition_path, const DetectFlags& flags,
               const std::string& out) {
    const DetectionConfig cfg = flags.to_config();
    const LoadedGraph lg = load_edge_list(graph_path);
    const LoadedPartition lp = load_partition(partition_path, lg.nodes);
    const Signal b = load_signal_csv(signal_path, lg.nodes);
    const DetectionReport report = run_specf(lg.graph, b, lp.partition, cfg);
    emit_json(out, report_to_json(report));
    return kExitOk;
}

std::string curve_csv(const std::vector<CurvePoint>& points, const char* x, const char* y) {
    std::string out = std::string("threshold,") + x + "," + y + "\r\n";
    for (const CurvePoint& p : points) {
        out += format_double(p.threshold);
        out += ',';
        out += format_double(p.x);
        out += ',';
        out += format_double(p.y);
        out += "\r\n";
    }
    return out;
}

int cmd_eval(const std::string& report_path, const std::string& labels_path,
             const std::string& out, const std::string& roc_csv, const std::string& pr_csv) {
    const ReportScores rs = report_scores_from_json(read_text_file(report_path));
    const LabelTable ids = LabelTable::identity(static_cast<int>(rs.scores.size()));
    const std::vector<bool> labels = load_labels_csv(labels_path, ids);

    const LabeledScores ls{rs.scores, labels};
    const Prf1 pr = prf1(rs.flags, labels);
    const double auc = roc_auc(ls);
    const double ap = average_precision(ls);
    emit_json(out, metrics_to_json(auc, ap, pr));
    if (!roc_csv.empty()) write_text_file(roc_csv, curve_csv(roc_curve(ls), "fpr", "tpr"));
    if (!pr_csv.empty())
        write_text_file(pr_csv, curve_csv(pr_curve(ls), "recall", "precision"));
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir, int jobs) {
    const SweepConfig cfg = SweepConfig::from_json(read_text_file(config_path));
    const SweepResult result = run_sweep(cfg, jobs);
    fs::create_directories(out_dir);
    write_text_file((fs::path(out_dir) / "results.csv").string(), sweep_csv(result));
    if (result.any_failure) {
        std::cerr << "sweep: some cells failed; see results.csv\n";
        return kExitPartialSweep;
    }
    return kExitOk;
}

int cmd_ts(const std::string& csv_path, const std::string& partition_path,
           double sample_period, double window_seconds, double stride_seconds,
           double correlation_threshold, const DetectFlags& flags, int jobs,
           const std::string& out_dir) {
    if (!(sample_period > 0.0)) throw UsageError("--sample-period must be > 0");
    if (!(window_seconds > 0.0)) throw UsageError("--window-seconds must be > 0");
    const DetectionConfig cfg = flags.to_config();

    const MultiSeries ms = load_multiseries_csv(csv_path, sample_period);
    WindowPlan plan;
    plan.window_len = static_cast<int>(std::lround(window_seconds / sample_period));
    if (plan.window_len < 2)
        throw UsageError("window must span at least 2 samples");
    plan.stride = stride_seconds > 0.0
                      ? static_cast<int>(std::lround(stride_seconds / sample_period))
                      : plan.window_len;
    if (plan.stride < 1) throw UsageError("stride must span at least 1 sample");

    LabelTable sensors;
    sensors.names = ms.names;
    for (int i = 0; i < ms.sensors; ++i) {
        if (!sensors.index.emplace(ms.names[i], i).second)
            throw ParseError(csv_path + ": duplicate sensor name '" + ms.names[i] + "'");
    }
    const LoadedPartition lp = load_partition(partition_path, sensors);

    const WindowedDetection det =
        windowed_detection(ms, plan, lp.partition, cfg, correlation_threshold, jobs);

    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    std::vector<int> per_window_flagged;
    for (std::size_t w = 0; w < det.reports.size(); ++w) {
        OrderedJson j;
        j["window"] = {{"index", det.signals[w].index},
                       {"start_step_a", det.signals[w].start_a},
                       {"start_step_b", det.signals[w].start_b},
                       {"start_seconds_a", det.signals[w].start_a * sample_period},
                       {"start_seconds_b", det.signals[w].start_b * sample_period}};
        j["report"] = report_to_json(det.reports[w]);
        char name[32];
        std::snprintf(name, sizeof(name), "window_%03zu.json", w);
        write_json_file((dir / name).string(), j);
        int flagged = 0;
        for (bool f : det.reports[w].flags) flagged += f ? 1 : 0;
        per_window_flagged.push_back(flagged);
    }

    OrderedJson summary;
    summary["config"] = config_to_json(cfg);
    summary["sensors"] = ms.sensors;
    summary["windows"] = det.reports.size();
    summary["window_len_steps"] = plan.window_len;
    summary["stride_steps"] = plan.stride;
    summary["union_flags"] = det.union_flags;
    OrderedJson flagged_names = OrderedJson::array();
    for (int i = 0; i < ms.sensors; ++i)
        if (det.union_flags[i]) flagged_names.push_back(ms.names[i]);
    summary["flagged_sensors"] = std::move(flagged_names);
    summary["per_window_flagged"] = per_window_flagged;
    write_json_file((dir / "summary.json").string(), summary);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Community-aware spectral anomaly detection toolkit"};
    app.footer(kExitCodeHelp);
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a synthetic benchmark");
    int gen_n = 0, gen_k = 0;
    double gen_pin = 0.0, gen_pout = 0.0, gen_an = 0.0, gen_theta = 0.0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--n", gen_n, "Node count")->required();
    gen->add_option("--k", gen_k, "Community count")->required();
    gen->add_option("--p-in", gen_pin, "Intra-community edge probability")->required();
    gen->add_option("--p-out", gen_pout, "Inter-community edge probability")->required();
    gen->add_option("--an", gen_an, "Fraction of nodes to corrupt, (0,1]")->required();
    gen->add_option("--theta", gen_theta, "Anomaly intensity, (0,1]")->required();
    gen->add_option("--seed", gen_seed, "Root seed")->default_val(0);
    gen->add_option("--out", gen_out, "Output directory")->required();

    // detect
    auto* detect = app.add_subcommand("detect", "Run detection on a graph signal");
    std::string det_graph, det_signal, det_partition, det_out = "-";
    DetectFlags det_flags;
    detect->add_option("--graph", det_graph, "Edge-list file")->required();
    detect->add_option("--signal", det_signal, "Signal CSV")->required();
    detect->add_option("--partition", det_partition, "Partition file")->required();
    det_flags.add_to(detect);
    detect->add_option("--out", det_out, "Report JSON path, - for stdout");

    // eval
    auto* eval = app.add_subcommand("eval", "Score a detection report against labels");
    std::string ev_report, ev_labels, ev_out = "-", ev_roc, ev_pr;
    eval->add_option("--report", ev_report, "Detection report JSON")->required();
    eval->add_option("--labels", ev_labels, "Ground-truth labels CSV")->required();
    eval->add_option("--out", ev_out, "Metrics JSON path, - for stdout");
    eval->add_option("--roc-csv", ev_roc, "Write ROC curve points CSV here");
    eval->add_option("--pr-csv", ev_pr, "Write PR curve points CSV here");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Run a benchmark parameter sweep");
    std::string sw_config, sw_out;
    int sw_jobs = default_jobs();
    sweep->add_option("--config", sw_config, "Sweep config JSON")->required();
    sweep->add_option("--out", sw_out, "Output directory")->required();
    sweep->add_option("--jobs", sw_jobs, "Parallel workers (default SPECF_JOBS or cores)");

    // ts
    auto* ts = app.add_subcommand("ts", "Windowed detection over sensor time series");
    std::string ts_csv, ts_partition, ts_out;
    double ts_period = 1.0, ts_window = 30.0, ts_stride = 0.0, ts_corr = 0.5;
    int ts_jobs = default_jobs();
    DetectFlags ts_flags;
    ts->add_option("--csv", ts_csv, "Readings CSV (header row of sensor names)")->required();
    ts->add_option("--partition", ts_partition, "Sensor partition file")->required();
    ts->add_option("--sample-period", ts_period, "Seconds per sample")->default_val(1.0);
    ts->add_option("--window-seconds", ts_window, "Window length in seconds")->default_val(30.0);
    ts->add_option("--stride-seconds", ts_stride, "Window stride in seconds (default window)");
    ts->add_option("--correlation-threshold", ts_corr, "Edge threshold")->default_val(0.5);
    ts->add_option("--jobs", ts_jobs, "Parallel workers (default SPECF_JOBS or cores)");
    ts_flags.add_to(ts);
    ts->add_option("--out", ts_out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_gen(gen_n, gen_k, gen_pin, gen_pout, gen_an, gen_theta, gen_seed,
                           gen_out);
        if (detect->parsed())
            return cmd_detect(det_graph, det_signal, det_partition, det_flags, det_out);
        if (eval->parsed()) return cmd_eval(ev_report, ev_labels, ev_out, ev_roc, ev_pr);
        if (sweep->parsed()) return cmd_sweep(sw_config, sw_out, sw_jobs);
        if (ts->parsed())
            return cmd_ts(ts_csv, ts_partition, ts_period, ts_window, ts_stride, ts_corr,
                          ts_flags, ts_jobs, ts_out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
