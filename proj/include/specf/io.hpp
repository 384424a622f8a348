#pragma once

#include <map>
#include <string>
#include <vector>

#include "specf/graph.hpp"
#include "specf/signal.hpp"
#include "specf/timeseries.hpp"

namespace specf {

/// Bidirectional node-label <-> dense-id map. Ids are assigned by numeric
/// order when every label is a plain nonnegative integer, lexicographic
/// order otherwise, so the mapping does not depend on file line order.
struct LabelTable {
    std::vector<std::string> names;       // id -> label
    std::map<std::string, int> index;     // label -> id

    static LabelTable identity(int n);
    static LabelTable from_labels(const std::vector<std::string>& labels);

    int id_of(const std::string& label) const;  // throws ParseError when unknown
};

struct LoadedGraph {
    Graph graph;
    LabelTable nodes;
};

/// Edge-list file: one `src<TAB>dst<TAB>weight` edge per line, weight
/// optional (default 1), `#` comments and blank lines ignored.
LoadedGraph load_edge_list(const std::string& path);

struct LoadedPartition {
    Partition partition;
    std::vector<std::string> community_names;  // community id -> label
};

/// Partition file: `node<TAB>community` lines covering every node exactly once.
LoadedPartition load_partition(const std::string& path, const LabelTable& nodes);

/// Signal CSV with header `node,value`, one row per node.
Signal load_signal_csv(const std::string& path, const LabelTable& nodes);

/// Labels CSV with header `node,label`, label in {0,1}.
std::vector<bool> load_labels_csv(const std::string& path, const LabelTable& nodes);

/// Readings CSV: header row of sensor names, then one row per time step.
MultiSeries load_multiseries_csv(const std::string& path, double sample_period);

void write_edge_list(const std::string& path, const Graph& g, const LabelTable& nodes);
void write_partition(const std::string& path, const Partition& p, const LabelTable& nodes);
void write_signal_csv(const std::string& path, const Signal& s, const LabelTable& nodes);
void write_labels_csv(const std::string& path, const std::vector<bool>& labels,
                      const LabelTable& nodes);

/// Shortest representation that round-trips a double.
std::string format_double(double v);

std::string read_text_file(const std::string& path);

/// Writes via a temp file in the same directory, then renames into place.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace specf
