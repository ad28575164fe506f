#pragma once

#include <doctest.h>

#include "hypersync/chmp.hpp"
#include "hypersync/eval.hpp"
#include "hypersync/hypergraph.hpp"
#include "hypersync/model.hpp"
#include "hypersync/recovery.hpp"
#include "hypersync/rng.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace hs = hypersync;

inline hs::GroupElement random_element(hs::Rng& rng, hs::Variant v) {
    return hs::haar_sample(rng, v);
}

inline hs::GroupTuple random_tuple(hs::Rng& rng, hs::Variant v, int order) {
    hs::GroupTuple t;
    for (int i = 0; i < order; ++i) t.elements.push_back(hs::haar_sample(rng, v));
    return t;
}

// complete n-uniform hypergraph with compatible measurements from the
// given vertex potential
inline hs::UniformHypergraph complete_hypergraph(const std::vector<hs::GroupElement>& g, int n) {
    hs::UniformHypergraph H;
    H.m = static_cast<int>(g.size());
    H.n = n;
    H.variant = g.front().variant;
    std::vector<int> c(n);
    for (int i = 0; i < n; ++i) c[i] = i;
    while (true) {
        std::vector<hs::GroupElement> vals;
        for (int v : c) vals.push_back(g[v]);
        H.hyperedges.push_back(c);
        H.measurements.push_back(hs::tau(vals));
        int i = n - 1;
        while (i >= 0 && c[i] == H.m - (n - i)) --i;
        if (i < 0) break;
        ++c[i];
        for (int j = i + 1; j < n; ++j) c[j] = c[j - 1] + 1;
    }
    return H;
}

inline std::vector<hs::GroupElement> random_potential(hs::Rng& rng, hs::Variant v, int m) {
    std::vector<hs::GroupElement> g;
    for (int i = 0; i < m; ++i) g.push_back(hs::haar_sample(rng, v));
    return g;
}
