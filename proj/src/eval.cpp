#include "hypersync/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hypersync {

namespace {

double aligned_error(const VertexPotential& est, const VertexPotential& gt,
                     const GroupElement& Q) {
    int d = block_dim(Q.variant);
    double acc = 0.0;
    for (std::size_t i = 0; i < est.size(); ++i) {
        std::array<double, 9> a = est[i].matrix();
        std::array<double, 9> b = compose(gt[i], Q).matrix();
        for (int k = 0; k < d * d; ++k) {
            double diff = a[k] - b[k];
            acc += diff * diff;
        }
    }
    return acc / static_cast<double>(est.size());
}

void check_shapes(const VertexPotential& est, const VertexPotential& gt) {
    if (est.size() != gt.size() || est.empty())
        throw group_error("align: length mismatch or empty potential");
    if (est.front().variant != gt.front().variant)
        throw group_error("align: variant mismatch");
}

} // namespace

Alignment align_procrustes_matrix(const VertexPotential& est, const VertexPotential& gt) {
    check_shapes(est, gt);
    int d = block_dim(est.front().variant);
    double S[9] = {0};
    for (std::size_t i = 0; i < est.size(); ++i) {
        std::array<double, 9> a = gt[i].matrix();
        std::array<double, 9> b = est[i].matrix();
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                double acc = 0.0;
                for (int k = 0; k < d; ++k) acc += a[k * d + r] * b[k * d + c];
                S[r * d + c] += acc;
            }
    }
    Alignment out;
    out.Q = project_to_group(S, est.front().variant);
    out.error = aligned_error(est, gt, out.Q);
    return out;
}

Alignment align_circular_mean(const VertexPotential& est, const VertexPotential& gt) {
    check_shapes(est, gt);
    if (est.front().variant != Variant::SO2)
        throw group_error("align_circular_mean: SO2 only");
    double sin_acc = 0.0, cos_acc = 0.0;
    for (std::size_t i = 0; i < est.size(); ++i) {
        double diff = est[i].angle - gt[i].angle;
        sin_acc += std::sin(diff);
        cos_acc += std::cos(diff);
    }
    Alignment out;
    out.Q = GroupElement::so2(std::atan2(sin_acc, cos_acc));
    out.error = aligned_error(est, gt, out.Q);
    return out;
}

Alignment align_procrustes(const VertexPotential& est, const VertexPotential& gt) {
    check_shapes(est, gt);
    if (est.front().variant == Variant::SO2) return align_circular_mean(est, gt);
    return align_procrustes_matrix(est, gt);
}

CorruptionErrors corruption_errors(const UniformHypergraph& H, const CorruptionState& st,
                                   const GroundTruth& gt) {
    CorruptionErrors out;
    double acc = 0.0;
    for (int h = 0; h < H.num_hyperedges(); ++h) acc += std::abs(st.s[h] - gt.s_star[h]);
    out.chmp_error = acc / std::max(1, H.num_hyperedges());

    std::vector<std::vector<double>> min_est(H.m), min_true(H.m);
    for (auto* v : {&min_est, &min_true})
        for (auto& row : *v) row.assign(H.m, std::numeric_limits<double>::infinity());
    for (int h = 0; h < H.num_hyperedges(); ++h) {
        const auto& vs = H.hyperedges[h];
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = a + 1; b < vs.size(); ++b) {
                min_est[vs[a]][vs[b]] = std::min(min_est[vs[a]][vs[b]], st.s[h]);
                min_true[vs[a]][vs[b]] = std::min(min_true[vs[a]][vs[b]], gt.s_star[h]);
            }
    }
    double pair_acc = 0.0;
    int pairs = 0;
    for (int i = 0; i < H.m; ++i)
        for (int j = i + 1; j < H.m; ++j)
            if (std::isfinite(min_est[i][j])) {
                pair_acc += std::abs(min_est[i][j] - min_true[i][j]);
                ++pairs;
            }
    out.chmp_min_error = pairs > 0 ? pair_acc / pairs : 0.0;
    return out;
}

TraceStats trace_stats(const std::vector<std::vector<double>>& trace,
                       const std::vector<double>& s_star) {
    constexpr double floor_err = 1e-16;
    TraceStats out;
    std::vector<double> errs;
    for (const auto& s : trace) {
        errs.clear();
        for (std::size_t h = 0; h < s.size(); ++h) errs.push_back(std::abs(s[h] - s_star[h]));
        std::sort(errs.begin(), errs.end());
        double mx = errs.empty() ? 0.0 : errs.back();
        double mean = 0.0;
        for (double e : errs) mean += e;
        mean /= std::max<std::size_t>(1, errs.size());
        double median = errs.empty() ? 0.0 : errs[(errs.size() - 1) / 2];
        out.log_max.push_back(std::log(std::max(mx, floor_err)));
        out.log_mean.push_back(std::log(std::max(mean, floor_err)));
        out.log_median.push_back(std::log(std::max(median, floor_err)));
    }
    return out;
}

} // namespace hypersync
