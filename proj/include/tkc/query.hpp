#pragma once

#include "tkc/engine.hpp"

namespace tkc {

struct QuerySummary {
    int64_t cores_emitted = 0;
    int32_t ticks_processed = 0;  // Phase II iterations actually run
    Tick delta = 0;
    int32_t window_vertices = 0;
    int32_t window_groups = 0;
    int64_t window_temporal_edges = 0;
    double refine_ms = 0;
    double init_ms = 0;
    double update_ms = 0;
    double list_ms = 0;
    int64_t max_extractions_per_tick = 0;
    int64_t total_extractions = 0;
};

// End-to-end CoreT: Phase I (refine + init + list) followed by delta - 1
// update/list iterations with one global TTI registry. The sink observes
// every distinct core exactly once.
QuerySummary run_query(const TemporalGraph& g, const QueryInterval& q, PayloadMode mode,
                       const Sink& sink, EngineOptions opts = {});

// Single step of Phase II on explicit values: removes tick-stamped edges from
// g_prev (which must hold sigma_prev's working graph) and returns the refined
// graph plus the map anchored at tick + 1, re-indexed to the refined graph.
std::pair<TemporalGraph, CoreTimeMap> core_update(const TemporalGraph& g_prev,
                                                  const CoreTimeMap& sigma_prev, Tick tick);

// Core over [sigma.anchor, te] read directly off the map (no peeling).
TemporalKCore reconstruct(const CoreTimeMap& sigma, const TemporalGraph& g, Tick te);

// Enumerates cores anchored at x = sigma.anchor over end times up to te,
// deduplicating through the registry; returns the number emitted.
int64_t core_t_list(const CoreTimeMap& sigma, const TemporalGraph& g, Tick te,
                    TTIRegistry& registry, PayloadMode mode, const Sink& sink);

}  // namespace tkc
