#pragma once

#include <vector>

#include "chmp.hpp"

namespace hypersync {

struct PairEdge {
    int i = 0, j = 0;             // i < j
    GroupElement gamma;           // measurement for g_i * g_j^{-1}
    double s = 0.0;               // corruption weight in [0, 1]
    int source_hyperedge = -1;
};

struct WeightedPairGraph {
    int m = 0;
    Variant variant = Variant::SO2;
    std::vector<PairEdge> edges;
};

using VertexPotential = std::vector<GroupElement>;

// Per vertex pair, induce pairwise data from the covering hyperedge with
// minimal estimated corruption (ties to the smallest hyperedge id).
WeightedPairGraph refine(const UniformHypergraph& H, const CorruptionState& s);

VertexPotential recover_mst(const WeightedPairGraph& G);

struct GcwOptions {
    double beta = 0.0;        // reweighting inverse temperature (0 = uniform weights)
    bool symmetrize = true;   // D^{-1/2} W D^{-1/2}; false = paper's row-normalized variant
    double tol = 1e-10;
    int max_iters = 5000;
};

VertexPotential recover_gcw(const WeightedPairGraph& G, const GcwOptions& opts);

inline VertexPotential recover_spectral_baseline(const WeightedPairGraph& G) {
    return recover_gcw(G, GcwOptions{});
}

// 2-section reduction via geodesic medoid over all covering hyperedges;
// resulting weights are 0 (unknown).
WeightedPairGraph reduce_two_section_medoid(const UniformHypergraph& H);

} // namespace hypersync
