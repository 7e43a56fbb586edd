#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <utility>

#include "tkc/temporal_graph.hpp"

namespace tkc {

using Interval = std::pair<Tick, Tick>;

// One query answer: the maximal subgraph of a projected window in which every
// vertex keeps at least k distinct neighbors, together with its tightest time
// interval (min/max edge timestamp). An edgeless core is the empty value.
struct TemporalKCore {
    std::vector<VertexId> vertices;          // ascending
    std::vector<TemporalEdge> edges;         // sorted by (t,u,v)
    std::optional<Interval> tti;             // empty iff no edges

    bool empty() const { return edges.empty(); }
    friend bool operator==(const TemporalKCore&, const TemporalKCore&) = default;
};

// Brute-force peeling over the projection of g to [lo, hi].
TemporalKCore decomp(const TemporalGraph& g, Tick lo, Tick hi, int k);

// Runs decomp on every sub-interval of q and deduplicates nonempty results by
// TTI. With check_structural set, a repeated TTI is verified to carry an
// identical core (throws std::logic_error otherwise).
std::map<Interval, TemporalKCore> enumerate_naive(const TemporalGraph& g, const QueryInterval& q,
                                                  bool check_structural = false);

struct NaiveCount {
    int64_t distinct_cores = 0;
    bool timed_out = false;
};

// Counting variant with a cooperative wall-clock deadline; used by the
// benchmark harness where retaining cores would be pointless.
NaiveCount enumerate_naive_count(const TemporalGraph& g, const QueryInterval& q,
                                 std::chrono::steady_clock::time_point deadline);

}  // namespace tkc
