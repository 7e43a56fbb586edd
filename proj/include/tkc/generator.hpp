#pragma once

#include <cstdint>

#include "tkc/temporal_graph.hpp"

namespace tkc {

struct GenLimits {
    int32_t max_vertices = 12;
    int32_t max_temporal_edges = 60;
    Tick max_t = 15;
};

// Deterministic random instance for differential testing: Erdős–Rényi pair
// selection with 1-3 occurrences per detemporalized edge at uniform
// timestamps. Densities are tuned so a fair share of instances carry a
// nonempty 2-core.
TemporalGraph random_instance(uint64_t seed, const GenLimits& limits = {});

// Core threshold used alongside random_instance in differential runs.
int random_k(uint64_t seed, int lo = 1, int hi = 4);

// Deterministic desk-scale dataset matching the published shape of the
// CollegeMsg message graph (1,862 vertices, 59,835 temporal edges, every tick
// in 0..58,910 occupied, skewed endpoint distribution). Used by performance
// checks when the real file is not supplied.
TemporalGraph collegemsg_standin();

}  // namespace tkc
