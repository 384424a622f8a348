#include "specf/sweep.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "specf/errors.hpp"
#include "specf/eval.hpp"
#include "specf/generators.hpp"
#include "specf/io.hpp"
#include "specf/parallel.hpp"
#include "specf/report_json.hpp"
#include "specf/rng.hpp"

namespace specf {

namespace {

MatrixMode parse_matrix_mode(const std::string& s) {
    if (s == "adjacency") return MatrixMode::adjacency;
    if (s == "expanded") return MatrixMode::expanded;
    throw ParseError("sweep config: unknown matrix mode '" + s + "'");
}

}  // namespace

SweepConfig SweepConfig::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("sweep config: ") + ex.what());
    }
    SweepConfig cfg;
    try {
        cfg.n_values = j.at("n").get<std::vector<int>>();
        for (const auto& g : j.at("graphs")) {
            GraphParams params;
            params.k = g.at("k").get<int>();
            params.p_in = g.at("p_in").get<double>();
            params.p_out = g.at("p_out").get<double>();
            cfg.graphs.push_back(params);
        }
        cfg.an_values = j.at("an").get<std::vector<double>>();
        cfg.theta_values = j.at("theta").get<std::vector<double>>();
        for (const auto& m : j.at("matrix").get<std::vector<std::string>>())
            cfg.matrix_modes.push_back(parse_matrix_mode(m));
        cfg.seeds = j.at("seeds").get<int>();
        cfg.base_seed = j.value("base_seed", std::uint64_t{0});
        cfg.multiplier = j.value("multiplier", 2.0);
        if (j.contains("filter")) {
            const std::string f = j["filter"].get<std::string>();
            if (f == "ideal") {
                cfg.filter_mode = FilterModeKind::ideal;
            } else if (f.rfind("poly:", 0) == 0) {
                cfg.filter_mode = FilterModeKind::polynomial;
                cfg.poly_degree = std::stoi(f.substr(5));
            } else {
                throw ParseError("sweep config: unknown filter '" + f + "'");
            }
        }
    } catch (const nlohmann::json::exception& ex) {
        throw ParseError(std::string("sweep config: ") + ex.what());
    }
    if (cfg.n_values.empty() || cfg.graphs.empty() || cfg.an_values.empty() ||
        cfg.theta_values.empty() || cfg.matrix_modes.empty())
        throw ParseError("sweep config: every parameter list must be nonempty");
    if (cfg.seeds < 1) throw ParseError("sweep config: seeds must be >= 1");
    return cfg;
}

namespace {

struct CellCoord {
    int n_idx;
    int graph_idx;
    int an_idx;
    int theta_idx;
    int matrix_idx;
};

// one generated benchmark instance reused by every cell sharing its seed
struct Instance {
    PlantedGraph planted;
    Signal normal;
};

double sample_std(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double sq = 0.0;
    for (double x : xs) sq += (x - mean) * (x - mean);
    return std::sqrt(sq / static_cast<double>(xs.size() - 1));
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg, int jobs) {
    const int n_count = static_cast<int>(cfg.n_values.size());
    const int g_count = static_cast<int>(cfg.graphs.size());
    const int an_count = static_cast<int>(cfg.an_values.size());
    const int th_count = static_cast<int>(cfg.theta_values.size());
    const int mm_count = static_cast<int>(cfg.matrix_modes.size());

    // Pre-generate shared graph + normal-signal instances: one per
    // (n, graph params, seed index).
    const int instance_count = n_count * g_count * cfg.seeds;
    std::vector<std::unique_ptr<Instance>> instances(instance_count);
    std::vector<std::string> instance_errors(instance_count);
    std::vector<std::uint64_t> graph_seeds(instance_count);
    auto instance_index = [&](int ni, int gi, int s) {
        return (ni * g_count + gi) * cfg.seeds + s;
    };
    parallel_for(instance_count, jobs, [&](int idx) {
        const int gi = (idx / cfg.seeds) % g_count;
        const int ni = idx / (cfg.seeds * g_count);
        const std::uint64_t graph_seed =
            derive_seed(cfg.base_seed, 0x67000000ULL + static_cast<std::uint64_t>(idx));
        graph_seeds[idx] = graph_seed;
        try {
            PlantedGraphSpec spec;
            spec.n = cfg.n_values[ni];
            spec.k = cfg.graphs[gi].k;
            spec.p_in = cfg.graphs[gi].p_in;
            spec.p_out = cfg.graphs[gi].p_out;
            spec.seed = graph_seed;
            PlantedGraph planted = generate_planted_graph(spec);
            Signal normal = generate_normal_signal(planted.graph, planted.partition,
                                                   derive_seed(graph_seed, 1));
            instances[idx] =
                std::make_unique<Instance>(Instance{std::move(planted), std::move(normal)});
        } catch (const std::exception& ex) {
            instance_errors[idx] = ex.what();
        }
    });

    const int cells = n_count * g_count * an_count * th_count * mm_count;
    const int units = cells * cfg.seeds;
    std::vector<SweepRow> run_rows(units);

    auto cell_coord = [&](int cell) {
        CellCoord c;
        c.matrix_idx = cell % mm_count;
        cell /= mm_count;
        c.theta_idx = cell % th_count;
        cell /= th_count;
        c.an_idx = cell % an_count;
        cell /= an_count;
        c.graph_idx = cell % g_count;
        c.n_idx = cell / g_count;
        return c;
    };

    parallel_for(units, jobs, [&](int unit) {
        const int cell = unit / cfg.seeds;
        const int s = unit % cfg.seeds;
        const CellCoord c = cell_coord(cell);
        const int inst_idx = instance_index(c.n_idx, c.graph_idx, s);

        SweepRow row;
        row.n = cfg.n_values[c.n_idx];
        row.k = cfg.graphs[c.graph_idx].k;
        row.p_in = cfg.graphs[c.graph_idx].p_in;
        row.p_out = cfg.graphs[c.graph_idx].p_out;
        row.mu = row.p_out / (row.p_in + row.p_out);
        row.an = cfg.an_values[c.an_idx];
        row.theta = cfg.theta_values[c.theta_idx];
        row.matrix = cfg.matrix_modes[c.matrix_idx];
        row.seed_index = s;
        row.graph_seed = graph_seeds[inst_idx];
        // anomaly draw depends on an but not on theta or the matrix mode:
        // matrix modes see identical corrupted signals, and theta sweeps
        // rescale the same node selection and tax draws
        row.anomaly_seed =
            derive_seed(row.graph_seed, 0x414E0000ULL + static_cast<std::uint64_t>(c.an_idx));
        try {
            if (!instance_errors[inst_idx].empty())
                throw NumericalError(instance_errors[inst_idx]);
            const Instance& inst = *instances[inst_idx];
            AnomalySpec aspec{row.an, row.theta, row.anomaly_seed};
            const InjectionResult injected =
                inject_anomalies(inst.normal, inst.planted.partition, aspec);

            DetectionConfig dcfg;
            dcfg.matrix_mode = row.matrix;
            dcfg.k_mode = cfg.k_mode;
            dcfg.filter_mode = cfg.filter_mode;
            dcfg.poly_degree = cfg.poly_degree;
            dcfg.threshold_multiplier = cfg.multiplier;
            const DetectionReport report =
                run_specf(inst.planted.graph, injected.corrupted, inst.planted.partition, dcfg);

            LabeledScores ls{report.scores.values, injected.labels};
            row.k_used = report.k_used;
            row.auc = roc_auc(ls);
            row.ap = average_precision(ls);
            const Prf1 pr = prf1(report.flags, injected.labels);
            row.precision = pr.precision;
            row.recall = pr.recall;
            row.f1 = pr.f1;
        } catch (const std::exception& ex) {
            row.ok = false;
            row.error = ex.what();
        }
        run_rows[unit] = std::move(row);
    });

    SweepResult result;
    result.rows.reserve(units + cells);
    for (int cell = 0; cell < cells; ++cell) {
        std::vector<double> auc, ap, precision, recall, f1;
        SweepRow agg;
        agg.aggregate = true;
        for (int s = 0; s < cfg.seeds; ++s) {
            const SweepRow& row = run_rows[cell * cfg.seeds + s];
            if (s == 0) {
                agg.n = row.n;
                agg.k = row.k;
                agg.p_in = row.p_in;
                agg.p_out = row.p_out;
                agg.mu = row.mu;
                agg.an = row.an;
                agg.theta = row.theta;
                agg.matrix = row.matrix;
            }
            if (row.ok) {
                auc.push_back(row.auc);
                ap.push_back(row.ap);
                precision.push_back(row.precision);
                recall.push_back(row.recall);
                f1.push_back(row.f1);
            } else {
                ++agg.errors_in_cell;
                result.any_failure = true;
            }
            result.rows.push_back(row);
        }
        agg.ok = agg.errors_in_cell == 0;
        agg.ok_runs = static_cast<int>(auc.size());
        if (!auc.empty()) {
            auto mean = [](const std::vector<double>& xs) {
                double sum = 0.0;
                for (double x : xs) sum += x;
                return sum / static_cast<double>(xs.size());
            };
            agg.auc = mean(auc);
            agg.ap = mean(ap);
            agg.precision = mean(precision);
            agg.recall = mean(recall);
            agg.f1 = mean(f1);
            agg.auc_std = sample_std(auc, agg.auc);
            agg.ap_std = sample_std(ap, agg.ap);
            agg.precision_std = sample_std(precision, agg.precision);
            agg.recall_std = sample_std(recall, agg.recall);
            agg.f1_std = sample_std(f1, agg.f1);
        }
        result.rows.push_back(std::move(agg));
    }
    return result;
}

std::string sweep_csv(const SweepResult& result) {
    std::ostringstream out;
    out << "kind,n,k,p_in,p_out,mu,an,theta,matrix,seed,graph_seed,anomaly_seed,status,"
           "k_used,auc_roc,ap,precision,recall,f1,"
           "auc_roc_std,ap_std,precision_std,recall_std,f1_std,error\r\n";
    for (const SweepRow& row : result.rows) {
        out << (row.aggregate ? "aggregate" : "run") << ',' << row.n << ',' << row.k << ','
            << format_double(row.p_in) << ',' << format_double(row.p_out) << ','
            << format_double(row.mu) << ',' << format_double(row.an) << ','
            << format_double(row.theta) << ',' << matrix_mode_name(row.matrix) << ',';
        if (!row.aggregate)
            out << row.seed_index << ',' << row.graph_seed << ',' << row.anomaly_seed << ',';
        else
            out << ",,,";
        if (row.aggregate)
            out << (row.ok ? "ok" : "errors=" + std::to_string(row.errors_in_cell));
        else
            out << (row.ok ? "ok" : "error");
        out << ',';
        if (!row.aggregate && row.ok) out << row.k_used;
        out << ',';
        // aggregate metrics are blank only when every seed in the cell failed
        const bool present = row.aggregate ? row.ok_runs > 0 : row.ok;
        auto metric = [&](double v) {
            if (present) out << format_double(v);
            out << ',';
        };
        metric(row.auc);
        metric(row.ap);
        metric(row.precision);
        metric(row.recall);
        metric(row.f1);
        if (row.aggregate && present) {
            out << format_double(row.auc_std) << ',' << format_double(row.ap_std) << ','
                << format_double(row.precision_std) << ',' << format_double(row.recall_std)
                << ',' << format_double(row.f1_std) << ',';
        } else {
            out << ",,,,,";
        }
        out << csv_escape(row.error) << "\r\n";
    }
    return out.str();
}

}  // namespace specf
