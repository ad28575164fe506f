#pragma once

#include <cstdint>
#include <vector>

#include "hypergraph.hpp"

namespace hypersync {

struct ModelParams {
    int n = 3;
    int m = 20;
    double p = 1.0;     // hyperedge inclusion probability, (0, 1]
    double q = 0.0;     // corruption probability, [0, 1)
    double sigma = 0.0; // Gaussian noise scale on good measurements
    std::uint64_t seed = 0;
    Variant variant = Variant::SO2;

    void validate() const;
};

struct GroundTruth {
    std::vector<GroupElement> vertex_potential;
    std::vector<GroupTuple> true_measurements;
    std::vector<char> bad;        // per hyperedge
    std::vector<double> s_star;   // exact corruption levels
};

struct Instance {
    UniformHypergraph hypergraph;
    GroundTruth truth;
};

// Uniform corruption model on an Erdos-Renyi n-uniform hypergraph; resamples
// the hyperedge draw (same vertex potential) up to 100 times if disconnected.
Instance generate_ucmh(const ModelParams& params);

struct CycleClassification {
    std::vector<std::vector<int>> good;  // G_h per hyperedge
    std::vector<std::vector<int>> bad;   // B_h per hyperedge
    std::vector<double> lambda_h;
    double lambda = 0.0;
    bool good_cycle_condition = false;   // G_h nonempty for every h
};

CycleClassification classify_cycles(const CycleHyperedgeGraph& chg, const GroundTruth& gt);

struct ModeEstimate {
    std::vector<double> s;
    std::vector<char> has_estimate; // false for hyperedges with empty N_h
};

// mode of {d_C : C in N_h} with clustering tolerance 1e-9; cluster
// representative is its minimum, ties to the smaller value.
ModeEstimate mode_estimator(const CycleHyperedgeGraph& chg);

} // namespace hypersync
