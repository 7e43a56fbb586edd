#pragma once

#include "tkc/temporal_graph.hpp"

namespace tkc {

// k-core times anchored at `anchor`: the smallest t such that the vertex
// (resp. detemporalized edge) belongs to the k-core of the detemporalized
// graph over [anchor, t]; kInfTick when no such t exists. Edge entries are
// indexed by the group ids of the graph they were computed on.
struct CoreTimeMap {
    Tick anchor = 0;
    int k = 1;
    std::vector<Tick> vertex_sigma;
    std::vector<Tick> edge_sigma;

    friend bool operator==(const CoreTimeMap&, const CoreTimeMap&) = default;
};

// Per-group earliest occurrence timestamp.
std::vector<Tick> support_times(const TemporalGraph& g);

// Per-vertex k-th smallest incident support time, kInfTick when the vertex
// has fewer than k incident groups.
std::vector<Tick> k_degree_times(const TemporalGraph& g, const std::vector<Tick>& sup, int k);

// Peeling by maximum k-degree time with a running minimum. The caller is
// responsible for projecting g to the query window first.
CoreTimeMap core_init(const TemporalGraph& g, Tick anchor, int k);

}  // namespace tkc
