#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "model.hpp"

namespace hypersync {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Plain-text instance format. Line 1: `m n variant`; then one line per
// hyperedge: n vertex ids followed by n-1 group elements (SO2: one angle,
// SO3: 9 row-major entries), 17 significant digits.
void write_hypergraph(std::ostream& os, const UniformHypergraph& H);
void write_hypergraph_file(const std::string& path, const UniformHypergraph& H);
UniformHypergraph read_hypergraph(std::istream& is);
UniformHypergraph read_hypergraph_file(const std::string& path);

// Ground truth: m vertex elements, then per hyperedge `good|bad s_star`.
void write_ground_truth(std::ostream& os, const UniformHypergraph& H, const GroundTruth& gt);
void write_ground_truth_file(const std::string& path, const UniformHypergraph& H,
                             const GroundTruth& gt);
GroundTruth read_ground_truth(std::istream& is, const UniformHypergraph& H);
GroundTruth read_ground_truth_file(const std::string& path, const UniformHypergraph& H);

// CSV with a `# hypersync-csv v1 <kind>` schema header and an optional
// timestamp comment line; readers reject unknown schema versions.
struct Csv {
    std::string kind;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& os, const Csv& csv, bool timestamp);
void write_csv_file(const std::string& path, const Csv& csv, bool timestamp);
Csv read_csv(std::istream& is);
Csv read_csv_file(const std::string& path);

std::string format_double(double v); // 17 significant digits

} // namespace hypersync
