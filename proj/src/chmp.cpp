#include "hypersync/chmp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hypersync {

double ChmpParams::beta(int t) const {
    if (!beta_schedule.empty())
        return beta_schedule[std::min<std::size_t>(t, beta_schedule.size() - 1)];
    return beta0 * std::pow(r, t);
}

void ChmpParams::validate() const {
    if (T < 0) throw group_error("chmp: T must be >= 0");
    if (beta_schedule.empty() && (beta0 <= 0.0 || r <= 1.0))
        throw group_error("chmp: need beta0 > 0 and r > 1");
}

CorruptionState chmp_init(const CycleHyperedgeGraph& chg) {
    CorruptionState st;
    int nh = static_cast<int>(chg.incidence.size());
    st.s.assign(nh, 1.0); // max pessimism for uncovered hyperedges
    for (int h = 0; h < nh; ++h) {
        if (chg.incidence[h].empty()) {
            st.uncovered.push_back(h);
            continue;
        }
        double acc = 0.0;
        for (int ci : chg.incidence[h]) acc += chg.d_C[ci];
        st.s[h] = acc / static_cast<double>(chg.incidence[h].size());
    }
    return st;
}

namespace {

// phase 1: total current score of each cycle, sum over its member hyperedges
void cycle_totals_serial(const CycleHyperedgeGraph& chg, const std::vector<double>& s,
                         std::vector<double>& totals) {
    for (int ci = 0; ci < chg.num_cycles(); ++ci) {
        double acc = 0.0;
        for (int h : chg.cycles[ci].members) acc += s[h];
        totals[ci] = acc;
    }
}

void cycle_totals_parallel(const CycleHyperedgeGraph& chg, const std::vector<double>& s,
                           std::vector<double>& totals) {
    int nc = chg.num_cycles();
#pragma omp parallel for schedule(static)
    for (int ci = 0; ci < nc; ++ci) {
        double acc = 0.0;
        for (int h : chg.cycles[ci].members) acc += s[h];
        totals[ci] = acc;
    }
}

// phase 2: per-hyperedge shifted softmax over incident cycles; the product over
// N_C \ {h} is (cycle total) - (own score), all in log space
double update_one(const CycleHyperedgeGraph& chg, const std::vector<double>& s,
                  const std::vector<double>& totals, double beta, int h) {
    double best = -std::numeric_limits<double>::infinity();
    for (int ci : chg.incidence[h]) best = std::max(best, -beta * (totals[ci] - s[h]));
    double z = 0.0, acc = 0.0;
    for (int ci : chg.incidence[h]) {
        double w = std::exp(-beta * (totals[ci] - s[h]) - best);
        z += w;
        acc += w * chg.d_C[ci];
    }
    return acc / z;
}

} // namespace

void chmp_iterate_serial(const CycleHyperedgeGraph& chg, CorruptionState& state,
                         const ChmpParams& params) {
    double beta = params.beta(state.t);
    std::vector<double> totals(chg.num_cycles());
    cycle_totals_serial(chg, state.s, totals);
    std::vector<double> next = state.s;
    for (std::size_t h = 0; h < state.s.size(); ++h)
        if (!chg.incidence[h].empty())
            next[h] = update_one(chg, state.s, totals, beta, static_cast<int>(h));
    state.s = std::move(next);
    ++state.t;
}

void chmp_iterate(const CycleHyperedgeGraph& chg, CorruptionState& state,
                  const ChmpParams& params) {
    double beta = params.beta(state.t);
    std::vector<double> totals(chg.num_cycles());
    cycle_totals_parallel(chg, state.s, totals);
    std::vector<double> next = state.s;
    int nh = static_cast<int>(state.s.size());
#pragma omp parallel for schedule(static)
    for (int h = 0; h < nh; ++h)
        if (!chg.incidence[h].empty()) next[h] = update_one(chg, state.s, totals, beta, h);
    state.s = std::move(next);
    ++state.t;
}

CorruptionState chmp_run(const CycleHyperedgeGraph& chg, const ChmpParams& params) {
    params.validate();
    CorruptionState st = chmp_init(chg);
    if (params.keep_trace) st.trace.push_back(st.s);
    for (int t = 0; t < params.T; ++t) {
        chmp_iterate(chg, st, params);
        if (params.keep_trace) st.trace.push_back(st.s);
    }
    return st;
}

std::vector<double> ideal_weight_update(const CycleHyperedgeGraph& chg,
                                        const CycleClassification& cls) {
    std::vector<double> out(cls.good.size(), 0.0);
    for (std::size_t h = 0; h < cls.good.size(); ++h) {
        if (cls.good[h].empty())
            throw group_error("ideal_weight_update: Good Cycle Condition fails at hyperedge " +
                              std::to_string(h));
        double acc = 0.0;
        for (int ci : cls.good[h]) acc += chg.d_C[ci];
        out[h] = acc / static_cast<double>(cls.good[h].size());
    }
    return out;
}

} // namespace hypersync
