#include "hypersync/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace hypersync {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw io_error(msg);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    require(static_cast<bool>(os), "cannot open for writing: " + path);
    return os;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream is(path);
    require(static_cast<bool>(is), "cannot open for reading: " + path);
    return is;
}

void write_element(std::ostream& os, const GroupElement& g) {
    if (g.variant == Variant::SO2) {
        os << ' ' << format_double(g.angle);
    } else {
        for (double v : g.mat) os << ' ' << format_double(v);
    }
}

GroupElement read_element(std::istream& is, Variant v) {
    if (v == Variant::SO2) {
        double a = 0.0;
        require(static_cast<bool>(is >> a), "truncated group element");
        return GroupElement::so2(a);
    }
    std::array<double, 9> m{};
    for (double& x : m) require(static_cast<bool>(is >> x), "truncated group element");
    GroupElement g = GroupElement::so3(m);
    require(g.valid(1e-8), "group element fails SO(3) invariants");
    return g;
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_hypergraph(std::ostream& os, const UniformHypergraph& H) {
    os << H.m << ' ' << H.n << ' ' << (H.variant == Variant::SO2 ? "SO2" : "SO3") << '\n';
    for (int i = 0; i < H.num_hyperedges(); ++i) {
        for (std::size_t k = 0; k < H.hyperedges[i].size(); ++k)
            os << (k ? " " : "") << H.hyperedges[i][k];
        for (const GroupElement& g : H.measurements[i].elements) write_element(os, g);
        os << '\n';
    }
}

UniformHypergraph read_hypergraph(std::istream& is) {
    UniformHypergraph H;
    std::string variant;
    require(static_cast<bool>(is >> H.m >> H.n >> variant), "bad hypergraph header");
    require(variant == "SO2" || variant == "SO3", "unknown group variant: " + variant);
    H.variant = variant == "SO2" ? Variant::SO2 : Variant::SO3;
    require(H.m >= 1 && H.n >= 2, "bad hypergraph dimensions");
    while (true) {
        int v0 = 0;
        if (!(is >> v0)) break;
        std::vector<int> verts{v0};
        for (int k = 1; k < H.n; ++k) {
            int v = 0;
            require(static_cast<bool>(is >> v), "truncated hyperedge line");
            verts.push_back(v);
        }
        GroupTuple t;
        for (int k = 0; k + 1 < H.n; ++k) t.elements.push_back(read_element(is, H.variant));
        H.hyperedges.push_back(std::move(verts));
        H.measurements.push_back(std::move(t));
    }
    try {
        H.validate();
    } catch (const group_error& e) {
        throw io_error(e.what());
    }
    return H;
}

void write_ground_truth(std::ostream& os, const UniformHypergraph& H, const GroundTruth& gt) {
    for (const GroupElement& g : gt.vertex_potential) {
        std::ostringstream line;
        write_element(line, g);
        os << line.str().substr(1) << '\n';
    }
    for (int i = 0; i < H.num_hyperedges(); ++i)
        os << (gt.bad[i] ? "bad" : "good") << ' ' << format_double(gt.s_star[i]) << '\n';
}

GroundTruth read_ground_truth(std::istream& is, const UniformHypergraph& H) {
    GroundTruth gt;
    for (int i = 0; i < H.m; ++i) gt.vertex_potential.push_back(read_element(is, H.variant));
    for (int i = 0; i < H.num_hyperedges(); ++i) {
        std::string tag;
        double s = 0.0;
        require(static_cast<bool>(is >> tag >> s), "truncated ground truth");
        require(tag == "good" || tag == "bad", "bad hyperedge tag: " + tag);
        gt.bad.push_back(tag == "bad" ? 1 : 0);
        gt.s_star.push_back(s);
    }
    return gt;
}

void write_csv(std::ostream& os, const Csv& csv, bool timestamp) {
    os << "# hypersync-csv v1 " << csv.kind << '\n';
    if (timestamp) {
        std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[64];
        std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&now));
        os << "# generated " << buf << '\n';
    }
    for (std::size_t i = 0; i < csv.columns.size(); ++i)
        os << (i ? "," : "") << csv.columns[i];
    os << '\n';
    for (const auto& row : csv.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << '\n';
    }
}

Csv read_csv(std::istream& is) {
    Csv csv;
    std::string line;
    require(static_cast<bool>(std::getline(is, line)), "empty CSV");
    std::istringstream header(line);
    std::string hash, magic, version;
    header >> hash >> magic >> version >> csv.kind;
    require(hash == "#" && magic == "hypersync-csv", "not a hypersync CSV");
    require(version == "v1", "unsupported CSV schema version: " + version);
    bool have_columns = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (!have_columns) {
            csv.columns = std::move(fields);
            have_columns = true;
        } else {
            csv.rows.push_back(std::move(fields));
        }
    }
    return csv;
}

void write_hypergraph_file(const std::string& path, const UniformHypergraph& H) {
    auto os = open_out(path);
    write_hypergraph(os, H);
}

UniformHypergraph read_hypergraph_file(const std::string& path) {
    auto is = open_in(path);
    return read_hypergraph(is);
}

void write_ground_truth_file(const std::string& path, const UniformHypergraph& H,
                             const GroundTruth& gt) {
    auto os = open_out(path);
    write_ground_truth(os, H, gt);
}

GroundTruth read_ground_truth_file(const std::string& path, const UniformHypergraph& H) {
    auto is = open_in(path);
    return read_ground_truth(is, H);
}

void write_csv_file(const std::string& path, const Csv& csv, bool timestamp) {
    auto os = open_out(path);
    write_csv(os, csv, timestamp);
}

Csv read_csv_file(const std::string& path) {
    auto is = open_in(path);
    return read_csv(is);
}

} // namespace hypersync
