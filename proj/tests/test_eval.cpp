#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "helpers.hpp"

using namespace hypersync;

TEST_CASE("procrustes alignment basics") {
    Rng rng(1);
    for (Variant v : {Variant::SO2, Variant::SO3}) {
        auto gt = random_potential(rng, v, 12);
        auto res = align_procrustes(gt, gt);
        CHECK(distance(res.Q, GroupElement::identity(v)) < 1e-12);
        CHECK(res.error < 1e-24);

        // common right action is absorbed by Q
        GroupElement g = haar_sample(rng, v);
        auto est = gt;
        for (auto& x : est) x = compose(x, g);
        auto shifted = align_procrustes(est, gt);
        CHECK(shifted.error < 1e-12);
        CHECK(distance(shifted.Q, g) < 1e-9);

        // gauge invariance of the reported error
        auto noisy = gt;
        Rng r2(2);
        for (auto& x : noisy) x = perturb_gaussian(x, 0.1, r2);
        double base = align_procrustes(noisy, gt).error;
        auto noisy_shift = noisy;
        for (auto& x : noisy_shift) x = compose(x, g);
        CHECK(std::abs(align_procrustes(noisy_shift, gt).error - base) < 1e-10);
    }
    CHECK_THROWS_AS(align_procrustes({}, {}), group_error);
}

TEST_CASE("SO3 alignment optimality against perturbed candidates") {
    Rng rng(3);
    auto gt = random_potential(rng, Variant::SO3, 10);
    auto est = gt;
    for (auto& x : est) x = perturb_gaussian(compose(x, haar_sample(rng, Variant::SO3)), 0.0, rng);
    GroupElement g = haar_sample(rng, Variant::SO3);
    for (auto& x : est) x = perturb_gaussian(compose(x, g), 0.15, rng);
    auto res = align_procrustes(est, gt);
    auto error_with = [&](const GroupElement& Q) {
        double acc = 0.0;
        for (std::size_t i = 0; i < est.size(); ++i) {
            auto a = est[i].matrix();
            auto b = compose(gt[i], Q).matrix();
            for (int k = 0; k < 9; ++k) acc += (a[k] - b[k]) * (a[k] - b[k]);
        }
        return acc / est.size();
    };
    for (int i = 0; i < 100; ++i) {
        GroupElement Q2 = perturb_gaussian(res.Q, 1e-3, rng);
        CHECK(error_with(Q2) >= res.error - 1e-12);
    }
}

TEST_CASE("circular mean agrees with matrix procrustes") {
    Rng rng(4);
    for (int i = 0; i < 1000; ++i) {
        auto gt = random_potential(rng, Variant::SO2, 8);
        auto est = gt;
        GroupElement g = haar_sample(rng, Variant::SO2);
        for (auto& x : est) x = perturb_gaussian(compose(x, g), 0.2, rng);
        auto cm = align_circular_mean(est, gt);
        auto mp = align_procrustes_matrix(est, gt);
        CHECK(std::abs(normalize_angle(cm.Q.angle - mp.Q.angle)) < 1e-9);
        CHECK(cm.error == doctest::Approx(mp.error).epsilon(1e-9));
    }
}

TEST_CASE("corruption errors") {
    ModelParams params;
    params.n = 3;
    params.m = 8;
    params.q = 0.3;
    params.seed = 5;
    auto inst = generate_ucmh(params);
    CorruptionState st;
    st.s = inst.truth.s_star;
    auto exact = corruption_errors(inst.hypergraph, st, inst.truth);
    CHECK(exact.chmp_error == 0.0);
    CHECK(exact.chmp_min_error == 0.0); // min of equal sets even with s != 0

    // single hyperedge, uniform offset 0.1
    UniformHypergraph single;
    single.m = 3;
    single.n = 3;
    single.hyperedges = {{0, 1, 2}};
    single.measurements = {GroupTuple::identity(Variant::SO2, 2)};
    GroundTruth gt;
    gt.s_star = {0.2};
    gt.bad = {1};
    CorruptionState off;
    off.s = {0.3};
    auto res = corruption_errors(single, off, gt);
    CHECK(res.chmp_error == doctest::Approx(0.1));
    CHECK(res.chmp_min_error == doctest::Approx(0.1));

    // pair covered twice: per-pair term uses the min over covering hyperedges
    UniformHypergraph two;
    two.m = 4;
    two.n = 3;
    two.hyperedges = {{0, 1, 2}, {0, 1, 3}};
    two.measurements.assign(2, GroupTuple::identity(Variant::SO2, 2));
    GroundTruth gt2;
    gt2.s_star = {0.3, 0.0};
    gt2.bad = {1, 0};
    CorruptionState st2;
    st2.s = {0.3, 0.1};
    auto res2 = corruption_errors(two, st2, gt2);
    // 5 covered pairs; (0,1) contributes |0.1-0.0|, h0's own pairs 0,
    // h1's own pairs |0.1-0.0| each
    CHECK(res2.chmp_min_error == doctest::Approx(0.3 / 5.0));
}

TEST_CASE("trace statistics") {
    std::vector<double> s_star = {0.0, 0.0, 0.0};
    // exact estimates clamp at ln(1e-16)
    auto exact = trace_stats({{0.0, 0.0, 0.0}}, s_star);
    CHECK(exact.log_max[0] == doctest::Approx(std::log(1e-16)));
    CHECK(exact.log_mean[0] == doctest::Approx(std::log(1e-16)));
    CHECK(exact.log_median[0] == doctest::Approx(std::log(1e-16)));

    // median of {0.1, 0.1, 0.4} is 0.1
    auto stats = trace_stats({{0.1, 0.1, 0.4}}, s_star);
    CHECK(stats.log_median[0] == doctest::Approx(std::log(0.1)));
    CHECK(stats.log_max[0] == doctest::Approx(std::log(0.4)));
    CHECK(stats.log_mean[0] == doctest::Approx(std::log(0.2)));

    // even count: lower middle element
    auto even = trace_stats({{0.1, 0.2, 0.3, 0.4}}, {0.0, 0.0, 0.0, 0.0});
    CHECK(even.log_median[0] == doctest::Approx(std::log(0.2)));

    // strictly decreasing fixture gives strictly decreasing stats
    auto dec = trace_stats({{0.4, 0.2}, {0.2, 0.1}, {0.1, 0.05}}, {0.0, 0.0});
    for (int t = 0; t + 1 < 3; ++t) {
        CHECK(dec.log_max[t + 1] < dec.log_max[t]);
        CHECK(dec.log_mean[t + 1] < dec.log_mean[t]);
        CHECK(dec.log_median[t + 1] < dec.log_median[t]);
    }
}
