#include "tkc/oracle.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

namespace tkc {

namespace {

// Shared peeling core: computes alive vertices and the per-group in-window
// occurrence ranges for project(g, lo, hi).
struct PeelResult {
    std::vector<char> alive;
    std::vector<std::pair<int32_t, int32_t>> range;  // occurrence subrange per group
};

PeelResult peel(const TemporalGraph& g, Tick lo, Tick hi, int k) {
    const int32_t n = g.num_vertices();
    const GroupId m = g.num_groups();
    PeelResult r;
    r.range.resize(static_cast<size_t>(m));
    std::vector<char> present(static_cast<size_t>(m), 0);
    std::vector<int32_t> deg(static_cast<size_t>(n), 0);
    for (GroupId e = 0; e < m; ++e) {
        auto occ = g.occurrences(e);
        const Tick* from = std::lower_bound(occ.data(), occ.data() + occ.size(), lo);
        const Tick* to = std::upper_bound(from, occ.data() + occ.size(), hi);
        r.range[static_cast<size_t>(e)] = {static_cast<int32_t>(from - occ.data()),
                                           static_cast<int32_t>(to - occ.data())};
        if (from != to) {
            present[static_cast<size_t>(e)] = 1;
            ++deg[static_cast<size_t>(g.group(e).u)];
            ++deg[static_cast<size_t>(g.group(e).v)];
        }
    }

    r.alive.assign(static_cast<size_t>(n), 1);
    // Under-degree worklist, processed in ascending vertex id.
    std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> work;
    for (VertexId v = 0; v < n; ++v) {
        if (deg[static_cast<size_t>(v)] < k) work.push(v);
    }
    while (!work.empty()) {
        VertexId v = work.top();
        work.pop();
        if (!r.alive[static_cast<size_t>(v)] || deg[static_cast<size_t>(v)] >= k) continue;
        r.alive[static_cast<size_t>(v)] = 0;
        for (GroupId e : g.incident_groups(v)) {
            if (!present[static_cast<size_t>(e)]) continue;
            VertexId w = g.group(e).u == v ? g.group(e).v : g.group(e).u;
            if (!r.alive[static_cast<size_t>(w)]) continue;
            if (--deg[static_cast<size_t>(w)] < k) work.push(w);
        }
    }
    return r;
}

}  // namespace

TemporalKCore decomp(const TemporalGraph& g, Tick lo, Tick hi, int k) {
    if (lo > hi) throw std::invalid_argument("decomp: lo > hi");
    if (k < 1) throw std::invalid_argument("decomp: k < 1");

    PeelResult r = peel(g, lo, hi, k);
    TemporalKCore core;
    for (GroupId e = 0; e < g.num_groups(); ++e) {
        const auto& gr = g.group(e);
        if (!r.alive[static_cast<size_t>(gr.u)] || !r.alive[static_cast<size_t>(gr.v)]) continue;
        auto occ = g.occurrences(e);
        auto [b, en] = r.range[static_cast<size_t>(e)];
        for (int32_t i = b; i < en; ++i) core.edges.push_back({gr.u, gr.v, occ[static_cast<size_t>(i)]});
    }
    if (core.edges.empty()) return {};
    std::sort(core.edges.begin(), core.edges.end(), edge_time_order);

    std::vector<char> in_core(static_cast<size_t>(g.num_vertices()), 0);
    for (const TemporalEdge& e : core.edges) {
        in_core[static_cast<size_t>(e.u)] = 1;
        in_core[static_cast<size_t>(e.v)] = 1;
    }
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        if (in_core[static_cast<size_t>(v)]) core.vertices.push_back(v);
    }
    core.tti = Interval{core.edges.front().t, core.edges.back().t};
    return core;
}

std::map<Interval, TemporalKCore> enumerate_naive(const TemporalGraph& g, const QueryInterval& q,
                                                  bool check_structural) {
    std::map<Interval, TemporalKCore> out;
    for (Tick ts = q.ts; ts <= q.te; ++ts) {
        for (Tick te = ts; te <= q.te; ++te) {
            TemporalKCore core = decomp(g, ts, te, q.k);
            if (core.empty()) continue;
            auto it = out.find(*core.tti);
            if (it == out.end()) {
                out.emplace(*core.tti, std::move(core));
            } else if (check_structural && !(it->second == core)) {
                throw std::logic_error("two cores share a TTI but differ structurally");
            }
        }
    }
    return out;
}

NaiveCount enumerate_naive_count(const TemporalGraph& g, const QueryInterval& q,
                                 std::chrono::steady_clock::time_point deadline) {
    NaiveCount r;
    std::set<Interval> seen;
    int steps = 0;
    for (Tick ts = q.ts; ts <= q.te; ++ts) {
        for (Tick te = ts; te <= q.te; ++te) {
            if (++steps >= 64) {
                steps = 0;
                if (std::chrono::steady_clock::now() >= deadline) {
                    r.timed_out = true;
                    return r;
                }
            }
            TemporalKCore core = decomp(g, ts, te, q.k);
            if (!core.empty() && seen.insert(*core.tti).second) ++r.distinct_cores;
        }
    }
    r.distinct_cores = static_cast<int64_t>(seen.size());
    return r;
}

}  // namespace tkc
