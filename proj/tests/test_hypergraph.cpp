#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "helpers.hpp"

#include <algorithm>
#include <set>

using namespace hypersync;

TEST_CASE("tau and tau_inverse") {
    Rng rng(1);
    for (Variant v : {Variant::SO2, Variant::SO3}) {
        GroupElement g = haar_sample(rng, v);
        GroupTuple t = tau({g, g});
        CHECK(distance(t.elements[0], GroupElement::identity(v)) < 1e-12);

        // coset invariance under common right action
        for (int i = 0; i < 200; ++i) {
            std::vector<GroupElement> rep = {haar_sample(rng, v), haar_sample(rng, v),
                                             haar_sample(rng, v)};
            GroupElement c = haar_sample(rng, v);
            std::vector<GroupElement> shifted;
            for (const auto& x : rep) shifted.push_back(compose(x, c));
            CHECK(tuple_distance(tau(rep), tau(shifted)) < 1e-12);
            // round trips
            CHECK(tuple_distance(tau(tau_inverse(tau(rep))), tau(rep)) < 1e-12);
            GroupTuple t2 = random_tuple(rng, v, 3);
            CHECK(tuple_distance(tau(tau_inverse(t2)), t2) < 1e-12);
        }
    }
    // canonical representative: last element is the identity, (a,b) -> (ab, b, 1)
    GroupTuple ab;
    ab.elements = {GroupElement::so2(0.3), GroupElement::so2(0.5)};
    auto rep = tau_inverse(ab);
    CHECK(rep.size() == 3);
    CHECK(rep[0].angle == doctest::Approx(0.8));
    CHECK(rep[1].angle == doctest::Approx(0.5));
    CHECK(rep[2].angle == 0.0);
    GroupTuple id_tuple;
    id_tuple.elements = {GroupElement::so2(0.0)};
    auto rep2 = tau_inverse(id_tuple);
    CHECK(rep2.size() == 2);
    CHECK(rep2[0].angle == 0.0);
    CHECK(rep2[1].angle == 0.0);
}

TEST_CASE("restriction maps") {
    Rng rng(2);
    for (Variant v : {Variant::SO2, Variant::SO3}) {
        std::vector<GroupElement> g = random_potential(rng, v, 3);
        std::vector<int> verts = {4, 7, 9};
        GroupTuple meas = tau(g);

        // identity restriction
        CHECK(tuple_distance(restrict_ordered(verts, meas, verts), meas) < 1e-12);

        // pair restriction of a compatible measurement gives g3 * g1^{-1}
        GroupTuple pair = restrict_ordered(verts, meas, {9, 4});
        CHECK(distance(pair.elements[0], compose(g[2], inverse(g[0]))) < 1e-12);

        // pair order inversion gives the inverse element
        GroupTuple fwd = restrict_ordered(verts, meas, {4, 9});
        CHECK(distance(fwd.elements[0], inverse(pair.elements[0])) < 1e-12);

        // invariance under common right action on the representative
        GroupElement c = haar_sample(rng, v);
        std::vector<GroupElement> shifted;
        for (const auto& x : g) shifted.push_back(compose(x, c));
        CHECK(tuple_distance(restrict_ordered(verts, tau(shifted), {7, 4, 9}),
                             restrict_ordered(verts, meas, {7, 4, 9})) < 1e-12);

        CHECK_THROWS_AS(restrict_ordered(verts, meas, {4, 5}), group_error);
    }
}

namespace {

// brute-force oracle: dihedral equivalence classes of vertex orderings whose
// every consecutive n-window is a hyperedge
int count_cycle_classes(const UniformHypergraph& H) {
    int n1 = H.n + 1;
    std::set<std::vector<int>> edges(H.hyperedges.begin(), H.hyperedges.end());
    std::set<std::vector<int>> classes;
    std::vector<int> verts(H.m);
    for (int i = 0; i < H.m; ++i) verts[i] = i;
    std::vector<int> order;
    auto rec = [&](auto&& self, std::vector<int>& chosen) -> void {
        if (static_cast<int>(chosen.size()) == n1) {
            for (int i = 0; i < n1; ++i) {
                std::vector<int> w;
                for (int j = 0; j < n1 - 1; ++j) w.push_back(chosen[(i + j) % n1]);
                std::sort(w.begin(), w.end());
                if (!edges.count(w)) return;
            }
            // canonicalize over all rotations and reflections
            std::vector<int> best = chosen;
            std::vector<int> cur = chosen;
            for (int rev = 0; rev < 2; ++rev) {
                for (int r = 0; r < n1; ++r) {
                    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
                    if (cur < best) best = cur;
                }
                std::reverse(cur.begin(), cur.end());
            }
            classes.insert(best);
            return;
        }
        for (int v : verts) {
            if (std::find(chosen.begin(), chosen.end(), v) != chosen.end()) continue;
            chosen.push_back(v);
            self(self, chosen);
            chosen.pop_back();
        }
    };
    std::vector<int> chosen;
    rec(rec, chosen);
    return static_cast<int>(classes.size());
}

} // namespace

TEST_CASE("cycle enumeration counts") {
    Rng rng(3);
    // n=2: cycles are the triangles; complete graph on 4 vertices has 4
    auto H2 = complete_hypergraph(random_potential(rng, Variant::SO2, 4), 2);
    auto chg2 = enumerate_cycles(H2);
    CHECK(chg2.num_cycles() == 4);
    CHECK(count_cycle_classes(H2) == 4);

    // n=3: complete 3-uniform hypergraph on 4 vertices -> 24/8 = 3 classes
    auto H3 = complete_hypergraph(random_potential(rng, Variant::SO2, 4), 3);
    auto chg3 = enumerate_cycles(H3);
    CHECK(chg3.num_cycles() == 3);
    CHECK(count_cycle_classes(H3) == 3);

    // random sparse instances agree with the brute-force oracle
    for (int trial = 0; trial < 5; ++trial) {
        auto H = complete_hypergraph(random_potential(rng, Variant::SO2, 6), 3);
        std::vector<std::size_t> keep;
        UniformHypergraph sparse;
        sparse.m = H.m;
        sparse.n = H.n;
        sparse.variant = H.variant;
        for (std::size_t i = 0; i < H.hyperedges.size(); ++i)
            if (rng.uniform() < 0.7) {
                sparse.hyperedges.push_back(H.hyperedges[i]);
                sparse.measurements.push_back(H.measurements[i]);
            }
        CHECK(enumerate_cycles(sparse).num_cycles() == count_cycle_classes(sparse));
    }

    // a single hyperedge has no cycles
    UniformHypergraph single;
    single.m = 3;
    single.n = 3;
    single.hyperedges = {{0, 1, 2}};
    single.measurements = {GroupTuple::identity(Variant::SO2, 2)};
    CHECK(enumerate_cycles(single).num_cycles() == 0);
}

TEST_CASE("cycle structure invariants") {
    Rng rng(4);
    auto H = complete_hypergraph(random_potential(rng, Variant::SO2, 7), 3);
    auto chg = enumerate_cycles(H);
    std::set<std::vector<int>> seen;
    for (const Cycle& c : chg.cycles) {
        // base vertices distinct
        std::set<int> uniq(c.base.begin(), c.base.end());
        CHECK(uniq.size() == c.base.size());
        // canonical form: smallest vertex first, reversal representative
        CHECK(c.base[0] == *std::min_element(c.base.begin(), c.base.end()));
        CHECK(c.base[1] < c.base.back());
        CHECK(seen.insert(c.base).second);
        // every member contains its window
        for (std::size_t i = 0; i < c.members.size(); ++i) {
            const auto& hv = H.hyperedges[c.members[i]];
            for (std::size_t j = 0; j + 1 < c.base.size(); ++j) {
                int v = c.base[(i + j) % c.base.size()];
                CHECK(std::find(hv.begin(), hv.end(), v) != hv.end());
            }
        }
    }
    // bipartite transpose invariant: C in N_h <=> h among C's messaging windows
    std::set<std::pair<int, int>> from_cycles, from_incidence;
    for (int ci = 0; ci < chg.num_cycles(); ++ci)
        for (std::size_t i = 0; i < chg.cycles[ci].members.size(); ++i)
            if (chg.cycles[ci].messages[i]) from_cycles.insert({chg.cycles[ci].members[i], ci});
    for (std::size_t h = 0; h < chg.incidence.size(); ++h)
        for (int ci : chg.incidence[h]) from_incidence.insert({static_cast<int>(h), ci});
    CHECK(from_cycles == from_incidence);
    // every hyperedge is covered here (complete hypergraph)
    for (const auto& inc : chg.incidence) CHECK(!inc.empty());
}

TEST_CASE("cycle consistency measure") {
    Rng rng(5);
    for (Variant v : {Variant::SO2, Variant::SO3}) {
        auto g = random_potential(rng, v, 6);
        auto H = complete_hypergraph(g, 3);
        auto chg = enumerate_cycles(H);
        compute_consistency(H, chg);
        // compatible data: all d_C = 0
        for (double d : chg.d_C) {
            CHECK(d >= 0.0);
            CHECK(d < 1e-12);
        }
        // corrupt exactly one hyperedge; every cycle messaging it sees d_C = s*
        UniformHypergraph Hc = H;
        int target = 7;
        GroupTuple corrupted = random_tuple(rng, v, 2);
        double s_star = tuple_distance(corrupted, Hc.measurements[target]);
        Hc.measurements[target] = corrupted;
        auto chgc = enumerate_cycles(Hc);
        compute_consistency(Hc, chgc);
        CHECK(!chgc.incidence[target].empty());
        for (int ci : chgc.incidence[target])
            CHECK(std::abs(chgc.d_C[ci] - s_star) < 1e-12);
        // random measurements stay within the metric bound
        UniformHypergraph Hr = H;
        for (auto& meas : Hr.measurements) meas = random_tuple(rng, v, 2);
        auto chgr = enumerate_cycles(Hr);
        compute_consistency(Hr, chgr);
        for (double d : chgr.d_C) {
            CHECK(d >= 0.0);
            CHECK(d <= 1.0);
        }
    }
}

TEST_CASE("connectivity") {
    // single hyperedge covering all vertices
    UniformHypergraph H;
    H.m = 4;
    H.n = 4;
    H.hyperedges = {{0, 1, 2, 3}};
    H.measurements = {GroupTuple::identity(Variant::SO2, 3)};
    CHECK(is_connected(H));

    // two disjoint hyperedges
    UniformHypergraph H2;
    H2.m = 6;
    H2.n = 3;
    H2.hyperedges = {{0, 1, 2}, {3, 4, 5}};
    H2.measurements = {GroupTuple::identity(Variant::SO2, 2), GroupTuple::identity(Variant::SO2, 2)};
    CHECK(!is_connected(H2));

    // chain of 3-hyperedges overlapping in one vertex: 1- but not 2-connected
    UniformHypergraph H3;
    H3.m = 7;
    H3.n = 3;
    H3.hyperedges = {{0, 1, 2}, {2, 3, 4}, {4, 5, 6}};
    H3.measurements.assign(3, GroupTuple::identity(Variant::SO2, 2));
    CHECK(is_k_connected(H3, 1));
    CHECK(!is_k_connected(H3, 2));
}

TEST_CASE("noiseless synchronization") {
    Rng rng(6);
    for (Variant v : {Variant::SO2, Variant::SO3}) {
        auto g = random_potential(rng, v, 8);
        auto H = complete_hypergraph(g, 3);
        auto res = synchronize_noiseless(H);
        REQUIRE(res.ok);
        auto aligned = align_procrustes(res.potential, g);
        CHECK(aligned.error < 1e-10);
        CHECK(objective(H, res.potential) < 1e-10);

        // corrupting one hyperedge on a redundant instance must be detected:
        // BFS from vertex 0 never uses a hyperedge avoiding vertices {0,1,2}
        UniformHypergraph Hc = H;
        int target = -1;
        for (int i = 0; i < Hc.num_hyperedges(); ++i)
            if (Hc.hyperedges[i][0] >= 3) target = i;
        REQUIRE(target >= 0);
        Hc.measurements[target] = random_tuple(rng, v, 2);
        auto bad = synchronize_noiseless(Hc);
        CHECK(!bad.ok);
        CHECK(bad.inconsistent_hyperedge == target);
    }

    // single hyperedge: trivially compatible
    UniformHypergraph single;
    single.m = 3;
    single.n = 3;
    single.hyperedges = {{0, 1, 2}};
    Rng r2(7);
    single.measurements = {random_tuple(r2, Variant::SO2, 2)};
    CHECK(synchronize_noiseless(single).ok);

    // disconnected input is an error
    UniformHypergraph disc;
    disc.m = 6;
    disc.n = 3;
    disc.hyperedges = {{0, 1, 2}, {3, 4, 5}};
    disc.measurements.assign(2, GroupTuple::identity(Variant::SO2, 2));
    CHECK_THROWS_AS(synchronize_noiseless(disc), group_error);
}

TEST_CASE("objective") {
    Rng rng(8);
    auto g = random_potential(rng, Variant::SO3, 6);
    auto H = complete_hypergraph(g, 3);
    CHECK(objective(H, g) < 1e-10);
    // invariant under common right action
    GroupElement c = haar_sample(rng, Variant::SO3);
    auto shifted = g;
    for (auto& x : shifted) x = compose(x, c);
    auto noisy = H;
    Rng rr(9);
    for (auto& meas : noisy.measurements)
        for (auto& e : meas.elements) e = perturb_gaussian(e, 0.1, rr);
    CHECK(std::abs(objective(noisy, g) - objective(noisy, shifted)) < 1e-10);
    // single hyperedge: objective is that hyperedge's tuple distance
    UniformHypergraph single;
    single.m = 3;
    single.n = 3;
    single.variant = Variant::SO3;
    single.hyperedges = {{0, 1, 2}};
    single.measurements = {random_tuple(rng, Variant::SO3, 2)};
    std::vector<GroupElement> pot = random_potential(rng, Variant::SO3, 3);
    double expect = tuple_distance(single.measurements[0], tau({pot[0], pot[1], pot[2]}));
    CHECK(objective(single, pot) == doctest::Approx(expect).epsilon(1e-12));
    CHECK_THROWS_AS(objective(single, std::vector<GroupElement>{}), group_error);
}
