#pragma once

#include <vector>

#include "recovery.hpp"

namespace hypersync {

struct Alignment {
    GroupElement Q;       // est_i ~ gt_i * Q
    double error = 0.0;   // mean squared Frobenius residual after alignment
};

Alignment align_procrustes(const VertexPotential& est, const VertexPotential& gt);

// same problem solved via the SO(2) circular-mean closed form (SO2 only)
Alignment align_circular_mean(const VertexPotential& est, const VertexPotential& gt);

// matrix-accumulation Procrustes path for either variant (used to cross-check
// the circular-mean closed form)
Alignment align_procrustes_matrix(const VertexPotential& est, const VertexPotential& gt);

struct CorruptionErrors {
    double chmp_error = 0.0;      // mean over hyperedges of |s_h(T) - s_h*|
    double chmp_min_error = 0.0;  // mean over covered pairs of |min_h s_h(T) - min_h s_h*|
};

CorruptionErrors corruption_errors(const UniformHypergraph& H, const CorruptionState& st,
                                   const GroundTruth& gt);

struct TraceStats {
    std::vector<double> log_max, log_mean, log_median;
};

// natural-log statistics of |s_h(t) - s_h*|; zeros clamped at ln(1e-16);
// median of an even count is the lower middle element
TraceStats trace_stats(const std::vector<std::vector<double>>& trace,
                       const std::vector<double>& s_star);

} // namespace hypersync
