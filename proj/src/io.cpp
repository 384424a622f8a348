#include "specf/io.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "specf/errors.hpp"

namespace specf {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string current;
    for (char c : text) {
        if (c == '\n') {
            if (!current.empty() && current.back() == '\r') current.pop_back();
            lines.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) {
        if (current.back() == '\r') current.pop_back();
        lines.push_back(std::move(current));
    }
    return lines;
}

bool is_comment_or_blank(const std::string& line) {
    for (char c : line) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '#';
    }
    return true;
}

std::vector<std::string> split_whitespace(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == '\t' || c == ' ') {
            if (!cur.empty()) fields.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) fields.push_back(std::move(cur));
    return fields;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

double parse_double(const std::string& s, const std::string& context) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || s.empty() || errno == ERANGE)
        throw ParseError(context + ": invalid number '" + s + "'");
    return v;
}

bool is_plain_integer(const std::string& s) {
    if (s.empty() || s.size() > 18) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

LabelTable LabelTable::identity(int n) {
    LabelTable t;
    t.names.reserve(n);
    for (int i = 0; i < n; ++i) {
        t.names.push_back(std::to_string(i));
        t.index.emplace(t.names.back(), i);
    }
    return t;
}

LabelTable LabelTable::from_labels(const std::vector<std::string>& labels) {
    std::set<std::string> distinct(labels.begin(), labels.end());
    std::vector<std::string> sorted(distinct.begin(), distinct.end());
    const bool numeric = std::all_of(sorted.begin(), sorted.end(), is_plain_integer);
    if (numeric) {
        std::sort(sorted.begin(), sorted.end(), [](const std::string& a, const std::string& b) {
            const long long na = std::stoll(a);
            const long long nb = std::stoll(b);
            if (na != nb) return na < nb;
            return a < b;
        });
    }
    LabelTable t;
    t.names = std::move(sorted);
    for (int i = 0; i < static_cast<int>(t.names.size()); ++i) t.index.emplace(t.names[i], i);
    return t;
}

int LabelTable::id_of(const std::string& label) const {
    const auto it = index.find(label);
    if (it == index.end()) throw ParseError("unknown node label '" + label + "'");
    return it->second;
}

LoadedGraph load_edge_list(const std::string& path) {
    const auto lines = split_lines(read_text_file(path));
    struct RawEdge {
        std::string u;
        std::string v;
        double w;
    };
    std::vector<RawEdge> raw;
    std::vector<std::string> labels;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        if (is_comment_or_blank(lines[ln])) continue;
        const auto fields = split_whitespace(lines[ln]);
        if (fields.size() < 2 || fields.size() > 3)
            throw ParseError(path + ":" + std::to_string(ln + 1) +
                             ": expected 'src dst [weight]'");
        const double w = fields.size() == 3
                             ? parse_double(fields[2], path + ":" + std::to_string(ln + 1))
                             : 1.0;
        raw.push_back({fields[0], fields[1], w});
        labels.push_back(fields[0]);
        labels.push_back(fields[1]);
    }
    if (raw.empty()) throw ParseError(path + ": no edges found");
    LabelTable table = LabelTable::from_labels(labels);
    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (const RawEdge& e : raw)
        edges.push_back({table.id_of(e.u), table.id_of(e.v), e.w});
    try {
        return LoadedGraph{Graph(static_cast<int>(table.names.size()), std::move(edges)),
                           std::move(table)};
    } catch (const std::invalid_argument& ex) {
        throw ParseError(path + ": " + ex.what());
    }
}

LoadedPartition load_partition(const std::string& path, const LabelTable& nodes) {
    const auto lines = split_lines(read_text_file(path));
    const int n = static_cast<int>(nodes.names.size());
    std::vector<std::string> community_label(n);
    std::vector<bool> seen(n, false);
    std::vector<std::string> community_labels;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        if (is_comment_or_blank(lines[ln])) continue;
        const auto fields = split_whitespace(lines[ln]);
        if (fields.size() != 2)
            throw ParseError(path + ":" + std::to_string(ln + 1) +
                             ": expected 'node community'");
        const int id = nodes.id_of(fields[0]);
        if (seen[id])
            throw ParseError(path + ": node '" + fields[0] + "' assigned twice");
        seen[id] = true;
        community_label[id] = fields[1];
        community_labels.push_back(fields[1]);
    }
    for (int i = 0; i < n; ++i)
        if (!seen[i])
            throw ParseError(path + ": node '" + nodes.names[i] + "' has no community");
    LabelTable communities = LabelTable::from_labels(community_labels);
    std::vector<int> assignment(n);
    for (int i = 0; i < n; ++i) assignment[i] = communities.id_of(community_label[i]);
    try {
        return LoadedPartition{Partition(std::move(assignment)), std::move(communities.names)};
    } catch (const std::invalid_argument& ex) {
        throw ParseError(path + ": " + ex.what());
    }
}

namespace {

// Shared reader for two-column node CSVs with a fixed header.
std::vector<std::string> load_node_column_csv(const std::string& path, const LabelTable& nodes,
                                              const std::string& header) {
    const auto lines = split_lines(read_text_file(path));
    const int n = static_cast<int>(nodes.names.size());
    std::vector<std::string> out(n);
    std::vector<bool> seen(n, false);
    bool header_seen = false;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        if (is_comment_or_blank(lines[ln])) continue;
        if (!header_seen) {
            if (lines[ln] != header)
                throw ParseError(path + ": expected header '" + header + "'");
            header_seen = true;
            continue;
        }
        const auto fields = split_csv(lines[ln]);
        if (fields.size() != 2)
            throw ParseError(path + ":" + std::to_string(ln + 1) + ": expected two fields");
        const int id = nodes.id_of(fields[0]);
        if (seen[id]) throw ParseError(path + ": node '" + fields[0] + "' listed twice");
        seen[id] = true;
        out[id] = fields[1];
    }
    if (!header_seen) throw ParseError(path + ": missing header '" + header + "'");
    for (int i = 0; i < n; ++i)
        if (!seen[i]) throw ParseError(path + ": node '" + nodes.names[i] + "' missing");
    return out;
}

}  // namespace

Signal load_signal_csv(const std::string& path, const LabelTable& nodes) {
    const auto raw = load_node_column_csv(path, nodes, "node,value");
    Signal s = Signal::zeros(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        s[i] = parse_double(raw[i], path);
        if (!std::isfinite(s[i])) throw ParseError(path + ": non-finite signal value");
    }
    return s;
}

std::vector<bool> load_labels_csv(const std::string& path, const LabelTable& nodes) {
    const auto raw = load_node_column_csv(path, nodes, "node,label");
    std::vector<bool> labels(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == "0")
            labels[i] = false;
        else if (raw[i] == "1")
            labels[i] = true;
        else
            throw ParseError(path + ": label must be 0 or 1, got '" + raw[i] + "'");
    }
    return labels;
}

MultiSeries load_multiseries_csv(const std::string& path, double sample_period) {
    const auto lines = split_lines(read_text_file(path));
    std::vector<std::string> names;
    std::vector<std::vector<double>> rows;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        if (is_comment_or_blank(lines[ln])) continue;
        const auto fields = split_csv(lines[ln]);
        if (names.empty()) {
            names.assign(fields.begin(), fields.end());
            if (names.size() < 2) throw ParseError(path + ": need at least 2 sensor columns");
            continue;
        }
        if (fields.size() != names.size())
            throw ParseError(path + ":" + std::to_string(ln + 1) + ": column count mismatch");
        std::vector<double> row(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c)
            row[c] = parse_double(fields[c], path + ":" + std::to_string(ln + 1));
        rows.push_back(std::move(row));
    }
    if (names.empty()) throw ParseError(path + ": missing header row");
    const int sensors = static_cast<int>(names.size());
    const int steps = static_cast<int>(rows.size());
    if (steps < 2) throw ParseError(path + ": need at least 2 time steps");
    std::vector<double> data(static_cast<std::size_t>(sensors) * steps);
    for (int t = 0; t < steps; ++t)
        for (int s = 0; s < sensors; ++s)
            data[static_cast<std::size_t>(s) * steps + t] = rows[t][s];
    try {
        return make_multiseries(sensors, steps, std::move(data), sample_period,
                                std::move(names));
    } catch (const std::invalid_argument& ex) {
        throw ParseError(path + ": " + ex.what());
    }
}

void write_edge_list(const std::string& path, const Graph& g, const LabelTable& nodes) {
    std::vector<Edge> sorted = g.edges();
    for (Edge& e : sorted)
        if (e.u > e.v) std::swap(e.u, e.v);
    std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
        return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    std::ostringstream out;
    for (const Edge& e : sorted)
        out << nodes.names[e.u] << '\t' << nodes.names[e.v] << '\t' << format_double(e.weight)
            << '\n';
    write_text_file(path, out.str());
}

void write_partition(const std::string& path, const Partition& p, const LabelTable& nodes) {
    std::ostringstream out;
    for (int i = 0; i < p.node_count(); ++i)
        out << nodes.names[i] << '\t' << p.community_of(i) << '\n';
    write_text_file(path, out.str());
}

void write_signal_csv(const std::string& path, const Signal& s, const LabelTable& nodes) {
    std::ostringstream out;
    out << "node,value\r\n";
    for (std::size_t i = 0; i < s.size(); ++i)
        out << nodes.names[i] << ',' << format_double(s[i]) << "\r\n";
    write_text_file(path, out.str());
}

void write_labels_csv(const std::string& path, const std::vector<bool>& labels,
                      const LabelTable& nodes) {
    std::ostringstream out;
    out << "node,label\r\n";
    for (std::size_t i = 0; i < labels.size(); ++i)
        out << nodes.names[i] << ',' << (labels[i] ? 1 : 0) << "\r\n";
    write_text_file(path, out.str());
}

std::string format_double(double v) {
    char buf[40];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write file: " + tmp);
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace specf
