#include "hypersync/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hypersync {

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = 0x811C9DC5u;
        for (int x : v) h = splitmix64(h ^ static_cast<std::uint64_t>(x));
        return h;
    }
};

using EdgeIndex = std::unordered_map<std::vector<int>, int, VecHash>;

EdgeIndex build_index(const UniformHypergraph& H) {
    EdgeIndex idx;
    idx.reserve(H.hyperedges.size() * 2);
    for (int i = 0; i < H.num_hyperedges(); ++i) idx.emplace(H.hyperedges[i], i);
    return idx;
}

bool monotone(const std::vector<int>& seq) {
    bool inc = true, dec = true;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        inc = inc && seq[i] < seq[i + 1];
        dec = dec && seq[i] > seq[i + 1];
    }
    return inc || dec;
}

// All canonical cycle classes over the (n+1)-subset S (ascending); S must
// already have all n+1 delete-one windows present in idx.
void emit_subset_cycles(const std::vector<int>& S, const std::vector<int>& window_ids,
                        std::vector<Cycle>& out) {
    int n1 = static_cast<int>(S.size()); // n+1
    std::vector<int> perm(S.begin() + 1, S.end());
    std::sort(perm.begin(), perm.end());
    do {
        if (perm.front() > perm.back()) continue; // reversal representative
        Cycle c;
        c.base.reserve(n1);
        c.base.push_back(S[0]);
        c.base.insert(c.base.end(), perm.begin(), perm.end());
        c.members.resize(n1);
        c.messages.assign(n1, 0);
        for (int i = 0; i < n1; ++i) {
            std::vector<int> window(n1 - 1);
            for (int j = 0; j < n1 - 1; ++j) window[j] = c.base[(i + j) % n1];
            // as a set the window is S minus the skipped vertex
            int skipped = c.base[(i + n1 - 1) % n1];
            int pos = static_cast<int>(std::lower_bound(S.begin(), S.end(), skipped) - S.begin());
            c.members[i] = window_ids[pos];
            c.messages[i] = monotone(window) ? 1 : 0;
        }
        out.push_back(std::move(c));
    } while (std::next_permutation(perm.begin(), perm.end()));
}

// Enumerate valid (n+1)-subsets with leading vertex `a` and append their
// cycle classes to out (lexicographic subset order).
void scan_leading(const UniformHypergraph& H, const EdgeIndex& idx, int a,
                  std::vector<Cycle>& out) {
    int n1 = H.n + 1;
    std::vector<int> S(n1);
    S[0] = a;
    std::vector<int> window_ids(n1);
    std::vector<int> probe;
    // iterative choose of n remaining vertices from (a, m)
    std::vector<int> c(n1 - 1);
    std::iota(c.begin(), c.end(), a + 1);
    if (c.empty() || c.back() >= H.m) return;
    while (true) {
        for (int j = 1; j < n1; ++j) S[j] = c[j - 1];
        bool valid = true;
        for (int skip = 0; skip < n1 && valid; ++skip) {
            probe.clear();
            for (int j = 0; j < n1; ++j)
                if (j != skip) probe.push_back(S[j]);
            auto it = idx.find(probe);
            if (it == idx.end()) valid = false;
            else window_ids[skip] = it->second;
        }
        if (valid) emit_subset_cycles(S, window_ids, out);
        // next combination
        int i = n1 - 2;
        while (i >= 0 && c[i] == H.m - (n1 - 1 - i)) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < n1 - 1; ++j) c[j] = c[j - 1] + 1;
    }
}

CycleHyperedgeGraph assemble(const UniformHypergraph& H, std::vector<Cycle>&& cycles) {
    CycleHyperedgeGraph chg;
    chg.cycles = std::move(cycles);
    chg.incidence.assign(H.num_hyperedges(), {});
    for (int ci = 0; ci < chg.num_cycles(); ++ci) {
        const Cycle& c = chg.cycles[ci];
        for (std::size_t i = 0; i < c.members.size(); ++i)
            if (c.messages[i]) chg.incidence[c.members[i]].push_back(ci);
    }
    chg.d_C.assign(chg.num_cycles(), 0.0);
    return chg;
}

} // namespace

void UniformHypergraph::validate() const {
    if (n < 2) throw group_error("hypergraph: n must be >= 2");
    if (hyperedges.size() != measurements.size())
        throw group_error("hypergraph: hyperedge/measurement count mismatch");
    EdgeIndex seen;
    for (std::size_t i = 0; i < hyperedges.size(); ++i) {
        const auto& h = hyperedges[i];
        if (static_cast<int>(h.size()) != n) throw group_error("hypergraph: wrong hyperedge size");
        for (std::size_t j = 0; j + 1 < h.size(); ++j)
            if (h[j] >= h[j + 1]) throw group_error("hypergraph: hyperedge not sorted/distinct");
        if (h.front() < 0 || h.back() >= m) throw group_error("hypergraph: vertex id out of range");
        if (!seen.emplace(h, static_cast<int>(i)).second)
            throw group_error("hypergraph: duplicate hyperedge");
        if (measurements[i].order() != n - 1)
            throw group_error("hypergraph: measurement order mismatch");
        if (measurements[i].variant() != variant)
            throw group_error("hypergraph: measurement variant mismatch");
    }
}

GroupTuple tau(const std::vector<GroupElement>& coset_rep) {
    GroupTuple t;
    for (std::size_t i = 0; i + 1 < coset_rep.size(); ++i)
        t.elements.push_back(compose(coset_rep[i], inverse(coset_rep[i + 1])));
    return t;
}

std::vector<GroupElement> tau_inverse(const GroupTuple& t) {
    int n = t.order() + 1;
    std::vector<GroupElement> rep(n, GroupElement::identity(t.variant()));
    for (int i = n - 2; i >= 0; --i) rep[i] = compose(t.elements[i], rep[i + 1]);
    return rep;
}

GroupTuple restrict_ordered(const std::vector<int>& h_vertices, const GroupTuple& meas,
                            const std::vector<int>& target) {
    std::vector<GroupElement> rep = tau_inverse(meas);
    std::vector<GroupElement> sub;
    sub.reserve(target.size());
    for (int v : target) {
        auto it = std::find(h_vertices.begin(), h_vertices.end(), v);
        if (it == h_vertices.end()) throw group_error("restrict_ordered: target vertex not in hyperedge");
        sub.push_back(rep[it - h_vertices.begin()]);
    }
    return tau(sub);
}

CycleHyperedgeGraph enumerate_cycles_serial(const UniformHypergraph& H) {
    EdgeIndex idx = build_index(H);
    std::vector<Cycle> cycles;
    for (int a = 0; a + H.n < H.m; ++a) scan_leading(H, idx, a, cycles);
    return assemble(H, std::move(cycles));
}

CycleHyperedgeGraph enumerate_cycles(const UniformHypergraph& H) {
    EdgeIndex idx = build_index(H);
    int last = std::max(0, H.m - H.n);
    std::vector<std::vector<Cycle>> parts(last);
#pragma omp parallel for schedule(dynamic)
    for (int a = 0; a < last; ++a) scan_leading(H, idx, a, parts[a]);
    std::vector<Cycle> cycles;
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    cycles.reserve(total);
    for (auto& p : parts)
        for (auto& c : p) cycles.push_back(std::move(c));
    return assemble(H, std::move(cycles));
}

double cycle_consistency(const UniformHypergraph& H, const Cycle& C) {
    int n1 = static_cast<int>(C.base.size());
    GroupTuple prod = GroupTuple::identity(H.variant, H.n - 1);
    std::vector<int> window(n1 - 1);
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n1 - 1; ++j) window[j] = C.base[(i + j) % n1];
        GroupTuple factor = restrict_ordered(H.hyperedges[C.members[i]],
                                             H.measurements[C.members[i]], window);
        for (int k = 0; k < prod.order(); ++k)
            prod.elements[k] = compose(prod.elements[k], factor.elements[k]);
    }
    return tuple_distance(prod, GroupTuple::identity(H.variant, H.n - 1));
}

void compute_consistency_serial(const UniformHypergraph& H, CycleHyperedgeGraph& chg) {
    for (int i = 0; i < chg.num_cycles(); ++i) chg.d_C[i] = cycle_consistency(H, chg.cycles[i]);
}

void compute_consistency(const UniformHypergraph& H, CycleHyperedgeGraph& chg) {
    int nc = chg.num_cycles();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nc; ++i) chg.d_C[i] = cycle_consistency(H, chg.cycles[i]);
}

bool is_k_connected(const UniformHypergraph& H, int k) {
    if (H.m <= 1) return true;
    int nh = H.num_hyperedges();
    if (nh == 0) return false;
    // union-find over hyperedges joined by >= k shared vertices
    std::vector<int> parent(nh);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < nh; ++i)
        for (int j = i + 1; j < nh; ++j) {
            const auto& a = H.hyperedges[i];
            const auto& b = H.hyperedges[j];
            int overlap = 0;
            std::size_t x = 0, y = 0;
            while (x < a.size() && y < b.size()) {
                if (a[x] < b[y]) ++x;
                else if (a[x] > b[y]) ++y;
                else { ++overlap; ++x; ++y; }
            }
            if (overlap >= k) parent[find(i)] = find(j);
        }
    std::vector<std::vector<char>> covered(H.m, std::vector<char>(H.m, 0));
    std::unordered_map<int, std::vector<int>> comp_vertices;
    for (int i = 0; i < nh; ++i) {
        auto& vs = comp_vertices[find(i)];
        vs.insert(vs.end(), H.hyperedges[i].begin(), H.hyperedges[i].end());
    }
    for (auto& [root, vs] : comp_vertices) {
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        for (std::size_t x = 0; x < vs.size(); ++x)
            for (std::size_t y = x + 1; y < vs.size(); ++y)
                covered[vs[x]][vs[y]] = 1;
    }
    for (int u = 0; u < H.m; ++u)
        for (int v = u + 1; v < H.m; ++v)
            if (!covered[u][v]) return false;
    return true;
}

bool is_connected(const UniformHypergraph& H) { return is_k_connected(H, 1); }

SyncResult synchronize_noiseless(const UniformHypergraph& H) {
    if (!is_connected(H)) throw group_error("synchronize_noiseless: hypergraph not 1-connected");
    // 2-section adjacency with a witnessing hyperedge per edge
    std::vector<std::vector<std::pair<int, int>>> adj(H.m); // (neighbor, hyperedge)
    for (int hi = 0; hi < H.num_hyperedges(); ++hi)
        for (int u : H.hyperedges[hi])
            for (int v : H.hyperedges[hi])
                if (u != v) adj[u].push_back({v, hi});
    SyncResult res;
    res.potential.assign(H.m, GroupElement::identity(H.variant));
    std::vector<char> seen(H.m, 0);
    seen[0] = 1;
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (auto [v, hi] : adj[u]) {
            if (seen[v]) continue;
            seen[v] = 1;
            GroupTuple ratio = restrict_ordered(H.hyperedges[hi], H.measurements[hi], {v, u});
            res.potential[v] = compose(ratio.elements[0], res.potential[u]);
            queue.push_back(v);
        }
    }
    for (int hi = 0; hi < H.num_hyperedges(); ++hi) {
        std::vector<GroupElement> vals;
        for (int v : H.hyperedges[hi]) vals.push_back(res.potential[v]);
        double d = tuple_distance(H.measurements[hi], tau(vals));
        if (d > 1e-9) {
            res.ok = false;
            res.inconsistent_hyperedge = hi;
            res.residual = d;
            return res;
        }
    }
    res.ok = true;
    return res;
}

double objective(const UniformHypergraph& H, const std::vector<GroupElement>& potential) {
    if (static_cast<int>(potential.size()) != H.m)
        throw group_error("objective: potential does not cover all vertices");
    double total = 0.0;
    for (int hi = 0; hi < H.num_hyperedges(); ++hi) {
        std::vector<GroupElement> vals;
        for (int v : H.hyperedges[hi]) vals.push_back(potential[v]);
        total += tuple_distance(H.measurements[hi], tau(vals));
    }
    return total;
}

} // namespace hypersync
