#include "tkc/query.hpp"

#include <chrono>
#include <stdexcept>

namespace tkc {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

QuerySummary run_query(const TemporalGraph& g, const QueryInterval& q, PayloadMode mode,
                       const Sink& sink, EngineOptions opts) {
    if (q.k < 1) throw std::invalid_argument("run_query: k < 1");
    if (q.ts < 0 || q.ts > q.te || q.te > g.t_max()) {
        throw std::invalid_argument("run_query: window outside [0, t_max]");
    }

    QuerySummary sum;
    sum.delta = q.delta();

    auto t0 = std::chrono::steady_clock::now();
    TemporalGraph window = g.project(q.ts, q.te);
    sum.refine_ms = ms_since(t0);
    sum.window_vertices = window.num_vertices();
    sum.window_groups = window.num_groups();
    sum.window_temporal_edges = window.num_temporal_edges();

    t0 = std::chrono::steady_clock::now();
    CoreTEngine engine(window, q.ts, q.te, q.k, opts);
    sum.init_ms = ms_since(t0);

    TTIRegistry registry(q.ts, q.te);
    t0 = std::chrono::steady_clock::now();
    sum.cores_emitted += engine.list_cores(registry, mode, sink);
    sum.list_ms += ms_since(t0);

    for (Tick tick = q.ts; tick < q.te; ++tick) {
        if (engine.alive_occurrences() == 0) break;
        t0 = std::chrono::steady_clock::now();
        engine.advance(tick);
        sum.update_ms += ms_since(t0);
        ++sum.ticks_processed;
        sum.max_extractions_per_tick =
            std::max(sum.max_extractions_per_tick, engine.last_extractions());

        t0 = std::chrono::steady_clock::now();
        sum.cores_emitted += engine.list_cores(registry, mode, sink);
        sum.list_ms += ms_since(t0);
    }
    sum.total_extractions = engine.total_extractions();
    return sum;
}

std::pair<TemporalGraph, CoreTimeMap> core_update(const TemporalGraph& g_prev,
                                                  const CoreTimeMap& sigma_prev, Tick tick) {
    if (tick != sigma_prev.anchor) {
        throw std::invalid_argument("core_update: sigma anchored at " +
                                    std::to_string(sigma_prev.anchor) + " but tick is " +
                                    std::to_string(tick));
    }
    CoreTEngine engine(g_prev, g_prev.t_max(), sigma_prev);
    engine.advance(tick);

    std::vector<GroupId> old2new;
    TemporalGraph next = engine.remaining_graph(&old2new);
    CoreTimeMap snap = engine.sigma_snapshot();
    CoreTimeMap out;
    out.anchor = snap.anchor;
    out.k = snap.k;
    out.vertex_sigma = std::move(snap.vertex_sigma);
    out.edge_sigma.assign(static_cast<size_t>(next.num_groups()), kInfTick);
    for (GroupId e = 0; e < static_cast<GroupId>(old2new.size()); ++e) {
        if (old2new[static_cast<size_t>(e)] >= 0) {
            out.edge_sigma[static_cast<size_t>(old2new[static_cast<size_t>(e)])] =
                snap.edge_sigma[static_cast<size_t>(e)];
        }
    }
    return {std::move(next), std::move(out)};
}

TemporalKCore reconstruct(const CoreTimeMap& sigma, const TemporalGraph& g, Tick te) {
    if (te < sigma.anchor) throw std::invalid_argument("reconstruct: te before anchor");
    if (static_cast<int32_t>(sigma.vertex_sigma.size()) != g.num_vertices() ||
        static_cast<int32_t>(sigma.edge_sigma.size()) != g.num_groups()) {
        throw std::invalid_argument("reconstruct: sigma map does not match graph");
    }
    TemporalKCore core;
    for (GroupId e = 0; e < g.num_groups(); ++e) {
        if (sigma.edge_sigma[static_cast<size_t>(e)] > te) continue;
        const auto& gr = g.group(e);
        for (Tick t : g.occurrences(e)) {
            if (t > te) break;
            core.edges.push_back({gr.u, gr.v, t});
        }
    }
    if (core.edges.empty()) return {};
    std::sort(core.edges.begin(), core.edges.end(), edge_time_order);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (sigma.vertex_sigma[static_cast<size_t>(v)] <= te) core.vertices.push_back(v);
    }
    core.tti = Interval{core.edges.front().t, core.edges.back().t};
    return core;
}

int64_t core_t_list(const CoreTimeMap& sigma, const TemporalGraph& g, Tick te,
                    TTIRegistry& registry, PayloadMode mode, const Sink& sink) {
    CoreTEngine engine(g, te, sigma);
    return engine.list_cores(registry, mode, sink);
}

}  // namespace tkc
