#include "hypersync/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

namespace hypersync {

namespace {

GroupElement pair_measurement(const UniformHypergraph& H, int hid, int i, int j) {
    return restrict_ordered(H.hyperedges[hid], H.measurements[hid], {i, j}).elements[0];
}

} // namespace

WeightedPairGraph refine(const UniformHypergraph& H, const CorruptionState& st) {
    WeightedPairGraph G;
    G.m = H.m;
    G.variant = H.variant;
    std::vector<std::vector<int>> best(H.m, std::vector<int>(H.m, -1));
    for (int hid = 0; hid < H.num_hyperedges(); ++hid) {
        const auto& vs = H.hyperedges[hid];
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = a + 1; b < vs.size(); ++b) {
                int& cur = best[vs[a]][vs[b]];
                if (cur < 0 || st.s[hid] < st.s[cur]) cur = hid;
            }
    }
    for (int i = 0; i < H.m; ++i)
        for (int j = i + 1; j < H.m; ++j) {
            int hid = best[i][j];
            if (hid < 0) continue;
            G.edges.push_back({i, j, pair_measurement(H, hid, i, j), st.s[hid], hid});
        }
    return G;
}

VertexPotential recover_mst(const WeightedPairGraph& G) {
    std::vector<int> order(G.edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return G.edges[a].s < G.edges[b].s; });
    std::vector<int> parent(G.m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<std::vector<std::pair<int, int>>> tree(G.m); // (neighbor, edge id)
    int joined = 0;
    for (int ei : order) {
        int ra = find(G.edges[ei].i), rb = find(G.edges[ei].j);
        if (ra == rb) continue;
        parent[ra] = rb;
        tree[G.edges[ei].i].push_back({G.edges[ei].j, ei});
        tree[G.edges[ei].j].push_back({G.edges[ei].i, ei});
        ++joined;
    }
    if (joined != G.m - 1) {
        int components = 0;
        for (int v = 0; v < G.m; ++v)
            if (find(v) == v) ++components;
        throw group_error("recover_mst: graph disconnected (" + std::to_string(components) +
                          " components)");
    }
    VertexPotential g(G.m, GroupElement::identity(G.variant));
    std::vector<char> seen(G.m, 0);
    seen[0] = 1;
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (auto [v, ei] : tree[u]) {
            if (seen[v]) continue;
            seen[v] = 1;
            const PairEdge& e = G.edges[ei];
            // gamma = g_i * g_j^{-1}
            g[v] = (v == e.i) ? compose(e.gamma, g[u]) : compose(inverse(e.gamma), g[u]);
            queue.push_back(v);
        }
    }
    return g;
}

VertexPotential recover_gcw(const WeightedPairGraph& G, const GcwOptions& opts) {
    const int d = block_dim(G.variant);
    const int N = d * G.m;
    std::vector<double> deg(G.m, 0.0);
    for (const PairEdge& e : G.edges) {
        double w = std::exp(-opts.beta * e.s);
        deg[e.i] += w;
        deg[e.j] += w;
    }
    for (int v = 0; v < G.m; ++v)
        if (deg[v] <= 0.0)
            throw group_error("recover_gcw: isolated vertex " + std::to_string(v));
    // dense block matrix, shifted by +I so the top eigenpair of the normalized
    // connection matrix (eigenvalue 1) dominates in absolute value
    std::vector<double> B(static_cast<std::size_t>(N) * N, 0.0);
    auto at = [&](int r, int c) -> double& { return B[static_cast<std::size_t>(r) * N + c]; };
    for (const PairEdge& e : G.edges) {
        double w = std::exp(-opts.beta * e.s);
        std::array<double, 9> M = e.gamma.matrix();
        double wij = opts.symmetrize ? w / std::sqrt(deg[e.i] * deg[e.j]) : w / deg[e.i];
        double wji = opts.symmetrize ? wij : w / deg[e.j];
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                at(e.i * d + r, e.j * d + c) = wij * M[r * d + c];
                at(e.j * d + r, e.i * d + c) = wji * M[c * d + r];
            }
    }
    for (int k = 0; k < N; ++k) at(k, k) += 1.0;

    // block power iteration for the top-d invariant subspace
    Rng rng(0x5EEDED);
    std::vector<double> X(static_cast<std::size_t>(N) * d);
    for (double& x : X) x = rng.normal();
    std::vector<double> Y(X.size()), R(X.size());
    auto mul = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (int r = 0; r < N; ++r) {
            const double* row = &B[static_cast<std::size_t>(r) * N];
            for (int c = 0; c < d; ++c) {
                double acc = 0.0;
                for (int k = 0; k < N; ++k) acc += row[k] * in[static_cast<std::size_t>(k) * d + c];
                out[static_cast<std::size_t>(r) * d + c] = acc;
            }
        }
    };
    auto orthonormalize = [&](std::vector<double>& M) {
        for (int c = 0; c < d; ++c) {
            for (int p = 0; p < c; ++p) {
                double dot = 0.0;
                for (int r = 0; r < N; ++r)
                    dot += M[static_cast<std::size_t>(r) * d + c] * M[static_cast<std::size_t>(r) * d + p];
                for (int r = 0; r < N; ++r)
                    M[static_cast<std::size_t>(r) * d + c] -= dot * M[static_cast<std::size_t>(r) * d + p];
            }
            double norm = 0.0;
            for (int r = 0; r < N; ++r) {
                double v = M[static_cast<std::size_t>(r) * d + c];
                norm += v * v;
            }
            norm = std::sqrt(norm);
            if (norm < 1e-14)
                throw numeric_error("recover_gcw: eigensolver breakdown (rank deficiency)");
            for (int r = 0; r < N; ++r) M[static_cast<std::size_t>(r) * d + c] /= norm;
        }
    };
    orthonormalize(X);
    double residual = std::numeric_limits<double>::infinity();
    for (int it = 0; it < opts.max_iters; ++it) {
        mul(X, Y);
        // residual of the invariant-subspace equation: ||B X - X (X^T B X)||_F
        double H[9] = {0};
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                for (int r = 0; r < N; ++r)
                    H[a * d + b] += X[static_cast<std::size_t>(r) * d + a] * Y[static_cast<std::size_t>(r) * d + b];
        double num = 0.0, den = 0.0;
        for (int r = 0; r < N; ++r)
            for (int c = 0; c < d; ++c) {
                double xr = 0.0;
                for (int k = 0; k < d; ++k) xr += X[static_cast<std::size_t>(r) * d + k] * H[k * d + c];
                double diff = Y[static_cast<std::size_t>(r) * d + c] - xr;
                num += diff * diff;
            }
        for (int k = 0; k < d * d; ++k) den += H[k] * H[k];
        residual = std::sqrt(num) / std::max(1.0, std::sqrt(den));
        X.swap(Y);
        orthonormalize(X);
        if (residual <= opts.tol) break;
    }
    if (residual > opts.tol)
        throw numeric_error("recover_gcw: eigensolver did not converge (residual " +
                            std::to_string(residual) + ")");

    auto block_det = [&](int i) {
        double Mb[9];
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) Mb[r * d + c] = X[static_cast<std::size_t>(i * d + r) * d + c];
        if (d == 2) return Mb[0] * Mb[3] - Mb[1] * Mb[2];
        return Mb[0] * (Mb[4] * Mb[8] - Mb[5] * Mb[7]) - Mb[1] * (Mb[3] * Mb[8] - Mb[5] * Mb[6]) +
               Mb[2] * (Mb[3] * Mb[7] - Mb[4] * Mb[6]);
    };
    int negative = 0;
    for (int i = 0; i < G.m; ++i)
        if (block_det(i) < 0.0) ++negative;
    if (2 * negative > G.m)
        for (int r = 0; r < N; ++r) X[static_cast<std::size_t>(r) * d + (d - 1)] *= -1.0;

    VertexPotential out;
    out.reserve(G.m);
    for (int i = 0; i < G.m; ++i) {
        double Mb[9];
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) Mb[r * d + c] = X[static_cast<std::size_t>(i * d + r) * d + c];
        out.push_back(project_to_group(Mb, G.variant));
    }
    return out;
}

WeightedPairGraph reduce_two_section_medoid(const UniformHypergraph& H) {
    WeightedPairGraph G;
    G.m = H.m;
    G.variant = H.variant;
    std::vector<std::vector<std::vector<int>>> covering(
        H.m, std::vector<std::vector<int>>(H.m));
    for (int hid = 0; hid < H.num_hyperedges(); ++hid) {
        const auto& vs = H.hyperedges[hid];
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = a + 1; b < vs.size(); ++b)
                covering[vs[a]][vs[b]].push_back(hid);
    }
    for (int i = 0; i < H.m; ++i)
        for (int j = i + 1; j < H.m; ++j) {
            const auto& hids = covering[i][j];
            if (hids.empty()) continue;
            std::vector<GroupElement> cands;
            cands.reserve(hids.size());
            for (int hid : hids) cands.push_back(pair_measurement(H, hid, i, j));
            std::size_t best = 0;
            double best_sum = std::numeric_limits<double>::infinity();
            for (std::size_t a = 0; a < cands.size(); ++a) {
                double sum = 0.0;
                for (std::size_t b = 0; b < cands.size(); ++b)
                    if (b != a) sum += distance(cands[a], cands[b]);
                if (sum < best_sum) { // ties keep the smallest hyperedge id
                    best_sum = sum;
                    best = a;
                }
            }
            G.edges.push_back({i, j, cands[best], 0.0, hids[best]});
        }
    return G;
}

} // namespace hypersync
