#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "group.hpp"

namespace hypersync {

struct UniformHypergraph {
    int m = 0;                                  // vertex count
    int n = 2;                                  // hyperedge cardinality
    Variant variant = Variant::SO2;
    std::vector<std::vector<int>> hyperedges;   // sorted vertex ids, no duplicates
    std::vector<GroupTuple> measurements;       // order n-1, relative to sorted order

    int num_hyperedges() const { return static_cast<int>(hyperedges.size()); }
    void validate() const; // throws group_error on malformed input
};

// An (n-1)-cycle of length n+1: base vertices in cycle order; members[i] is the
// hyperedge covering the window {base[i], ..., base[i+n-1]} (indices mod n+1).
// messages[i] is set when that window is monotone in the hyperedge's stored
// vertex order; only those windows carry cycle->hyperedge messages (the cycle
// consistency measure equals the corruption level only along such traversals).
struct Cycle {
    std::vector<int> base;
    std::vector<int> members;
    std::vector<std::uint8_t> messages;
};

struct CycleHyperedgeGraph {
    std::vector<Cycle> cycles;
    std::vector<std::vector<int>> incidence; // N_h: cycle ids messaging hyperedge h
    std::vector<double> d_C;                 // per-cycle consistency, in [0,1]

    int num_cycles() const { return static_cast<int>(cycles.size()); }
};

GroupTuple tau(const std::vector<GroupElement>& coset_rep);
std::vector<GroupElement> tau_inverse(const GroupTuple& t);

GroupTuple restrict_ordered(const std::vector<int>& h_vertices, const GroupTuple& meas,
                            const std::vector<int>& target);

// All dihedral equivalence classes of (n-1)-cycles with n+1 hyperedges over
// n+1 distinct base vertices, with oriented incidence lists (d_C left empty).
CycleHyperedgeGraph enumerate_cycles(const UniformHypergraph& H);
CycleHyperedgeGraph enumerate_cycles_serial(const UniformHypergraph& H);

double cycle_consistency(const UniformHypergraph& H, const Cycle& C);
void compute_consistency(const UniformHypergraph& H, CycleHyperedgeGraph& chg);
void compute_consistency_serial(const UniformHypergraph& H, CycleHyperedgeGraph& chg);

bool is_connected(const UniformHypergraph& H);
bool is_k_connected(const UniformHypergraph& H, int k);

struct SyncResult {
    bool ok = false;
    std::vector<GroupElement> potential; // filled when ok
    int inconsistent_hyperedge = -1;     // first offender when !ok
    double residual = 0.0;
};

// Theorem-style noiseless synchronizability check/constructor: BFS assignment
// from vertex 0 followed by compatibility verification (tolerance 1e-9).
SyncResult synchronize_noiseless(const UniformHypergraph& H);

double objective(const UniformHypergraph& H, const std::vector<GroupElement>& potential);

} // namespace hypersync
