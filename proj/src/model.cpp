#include "hypersync/model.hpp"

#include <algorithm>
#include <numeric>

namespace hypersync {

void ModelParams::validate() const {
    if (n < 2 || m < n) throw group_error("ucmh: need m >= n >= 2");
    if (!(p > 0.0 && p <= 1.0)) throw group_error("ucmh: p must be in (0, 1]");
    if (!(q >= 0.0 && q < 1.0)) throw group_error("ucmh: q must be in [0, 1)");
    if (sigma < 0.0) throw group_error("ucmh: sigma must be >= 0");
}

namespace {

template <typename F>
void for_each_subset(int m, int n, F&& f) {
    std::vector<int> c(n);
    std::iota(c.begin(), c.end(), 0);
    std::uint64_t idx = 0;
    while (true) {
        f(idx, c);
        ++idx;
        int i = n - 1;
        while (i >= 0 && c[i] == m - (n - i)) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < n; ++j) c[j] = c[j - 1] + 1;
    }
}

} // namespace

Instance generate_ucmh(const ModelParams& params) {
    params.validate();
    Rng base(params.seed);
    Rng vertex_rng = base.child(0);
    Instance inst;
    inst.truth.vertex_potential.reserve(params.m);
    for (int i = 0; i < params.m; ++i)
        inst.truth.vertex_potential.push_back(haar_sample(vertex_rng, params.variant));

    for (int round = 0; round < 100; ++round) {
        UniformHypergraph H;
        H.m = params.m;
        H.n = params.n;
        H.variant = params.variant;
        GroundTruth gt;
        gt.vertex_potential = inst.truth.vertex_potential;
        for_each_subset(params.m, params.n, [&](std::uint64_t idx, const std::vector<int>& subset) {
            Rng rng = base.child(1 + idx).child(static_cast<std::uint64_t>(round));
            if (rng.uniform() >= params.p) return;
            bool corrupt = rng.uniform() < params.q;
            std::vector<GroupElement> vals;
            vals.reserve(subset.size());
            for (int v : subset) vals.push_back(inst.truth.vertex_potential[v]);
            GroupTuple truth = tau(vals);
            GroupTuple observed;
            if (corrupt) {
                for (int k = 0; k + 1 < params.n; ++k)
                    observed.elements.push_back(haar_sample(rng, params.variant));
            } else {
                for (const GroupElement& g : truth.elements)
                    observed.elements.push_back(perturb_gaussian(g, params.sigma, rng));
            }
            H.hyperedges.push_back(subset);
            H.measurements.push_back(observed);
            gt.true_measurements.push_back(std::move(truth));
            gt.bad.push_back(corrupt ? 1 : 0);
            gt.s_star.push_back(tuple_distance(H.measurements.back(), gt.true_measurements.back()));
        });
        if (is_connected(H)) {
            inst.hypergraph = std::move(H);
            inst.truth = std::move(gt);
            return inst;
        }
    }
    throw group_error("ucmh: hypergraph disconnected after 100 resamples (p too small for m, n)");
}

CycleClassification classify_cycles(const CycleHyperedgeGraph& chg, const GroundTruth& gt) {
    CycleClassification cls;
    int nh = static_cast<int>(chg.incidence.size());
    cls.good.resize(nh);
    cls.bad.resize(nh);
    cls.lambda_h.assign(nh, 0.0);
    cls.good_cycle_condition = true;
    for (int h = 0; h < nh; ++h) {
        for (int ci : chg.incidence[h]) {
            bool others_good = true;
            for (int member : chg.cycles[ci].members)
                if (member != h && gt.bad[member]) { others_good = false; break; }
            (others_good ? cls.good : cls.bad)[h].push_back(ci);
        }
        std::size_t total = chg.incidence[h].size();
        if (total > 0)
            cls.lambda_h[h] = static_cast<double>(cls.bad[h].size()) / static_cast<double>(total);
        cls.lambda = std::max(cls.lambda, cls.lambda_h[h]);
        if (cls.good[h].empty()) cls.good_cycle_condition = false;
    }
    return cls;
}

ModeEstimate mode_estimator(const CycleHyperedgeGraph& chg) {
    constexpr double tol = 1e-9;
    ModeEstimate out;
    int nh = static_cast<int>(chg.incidence.size());
    out.s.assign(nh, 0.0);
    out.has_estimate.assign(nh, 0);
    std::vector<double> vals;
    for (int h = 0; h < nh; ++h) {
        if (chg.incidence[h].empty()) continue;
        vals.clear();
        for (int ci : chg.incidence[h]) vals.push_back(chg.d_C[ci]);
        std::sort(vals.begin(), vals.end());
        double best_rep = vals.front();
        std::size_t best_count = 0;
        std::size_t i = 0;
        while (i < vals.size()) {
            std::size_t j = i;
            while (j < vals.size() && vals[j] - vals[i] <= tol) ++j;
            if (j - i > best_count) { // ties keep the earlier (smaller) cluster
                best_count = j - i;
                best_rep = vals[i];
            }
            i = j;
        }
        out.s[h] = best_rep;
        out.has_estimate[h] = 1;
    }
    return out;
}

} // namespace hypersync
