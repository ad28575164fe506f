#pragma once

#include <vector>

#include "model.hpp"

namespace hypersync {

struct ChmpParams {
    int T = 20;
    double beta0 = 1.0;
    double r = 1.2; // beta_t = beta0 * r^t
    bool keep_trace = false;
    // explicit schedule overriding beta0/r when nonempty (beta_schedule[t] = beta_t)
    std::vector<double> beta_schedule;

    double beta(int t) const;
    void validate() const;
};

struct CorruptionState {
    std::vector<double> s;
    int t = 0;
    std::vector<std::vector<double>> trace; // s at t = 0..t when tracing
    std::vector<int> uncovered;             // hyperedges with empty N_h (s pinned to 1)
};

CorruptionState chmp_init(const CycleHyperedgeGraph& chg);

void chmp_iterate(const CycleHyperedgeGraph& chg, CorruptionState& state, const ChmpParams& params);
void chmp_iterate_serial(const CycleHyperedgeGraph& chg, CorruptionState& state,
                         const ChmpParams& params);

CorruptionState chmp_run(const CycleHyperedgeGraph& chg, const ChmpParams& params);

// mean of d_C over G_h (the ideal-weight update); throws if some G_h is empty.
std::vector<double> ideal_weight_update(const CycleHyperedgeGraph& chg,
                                        const CycleClassification& cls);

} // namespace hypersync
