#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tkc {

// Normalized timestamps are consecutive integer ticks in [0, t_max].
// kInfTick is the "never" value and compares greater than every finite tick.
using Tick = int32_t;
using RawTime = int64_t;
using VertexId = int32_t;
using GroupId = int32_t;

inline constexpr Tick kInfTick = std::numeric_limits<Tick>::max();

struct TemporalEdge {
    VertexId u = 0;
    VertexId v = 0;
    Tick t = 0;

    friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

// Sort key (t, u, v) used for canonical edge listings.
inline bool edge_time_order(const TemporalEdge& a, const TemporalEdge& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
}

struct QueryInterval {
    Tick ts = 0;
    Tick te = 0;
    int k = 1;

    Tick delta() const { return te - ts + 1; }
};

// Detemporalized (static) view: one edge per distinct vertex pair.
struct StaticGraph {
    int32_t n = 0;
    std::vector<std::pair<VertexId, VertexId>> edges;  // u < v, sorted
    std::vector<int32_t> degree;                       // distinct-neighbor count
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Immutable temporal multigraph. Stored as the detemporalized edge list where
// each edge carries its ascending list of occurrence timestamps, plus a CSR
// adjacency over detemporalized edges. Safe to share across threads once built.
class TemporalGraph {
public:
    struct Group {
        VertexId u = 0;  // u < v
        VertexId v = 0;
        int32_t occ_begin = 0;  // range into occurrence pool
        int32_t occ_end = 0;
    };

    struct IngestStats {
        int64_t duplicate_edges = 0;  // identical (u,v,t) triples collapsed
        int64_t self_loops = 0;       // dropped
    };

    TemporalGraph() = default;

    // Reads "u v t" lines; '#'/'%' start comments, blank lines are skipped.
    // With normalize, distinct raw timestamps map order-preservingly onto
    // 0..t_max and the inverse is retained; raw vertex ids are always
    // remapped densely with the inverse retained.
    static TemporalGraph parse_edge_list(std::istream& in, bool normalize = true);
    static TemporalGraph parse_file(const std::string& path, bool normalize = true);

    // Builder for graphs that already use dense ids and final ticks.
    // Duplicate triples are collapsed; self-loops are rejected.
    static TemporalGraph from_edges(int32_t n, std::vector<TemporalEdge> edges,
                                    Tick t_max = -1);

    // Restriction to occurrences with timestamp in [lo, hi]; empty groups are
    // dropped, the vertex universe and t_max are kept.
    TemporalGraph project(Tick lo, Tick hi) const;

    StaticGraph detemporalize() const;

    // Emits "u v t" lines sorted by (t, u, v) with original ids and raw
    // timestamps restored where maps exist.
    void serialize(std::ostream& out) const;

    int32_t num_vertices() const { return n_; }
    int32_t num_groups() const { return static_cast<int32_t>(groups_.size()); }
    int64_t num_temporal_edges() const { return static_cast<int64_t>(occ_.size()); }
    Tick t_max() const { return t_max_; }

    const Group& group(GroupId g) const { return groups_[static_cast<size_t>(g)]; }
    std::span<const Tick> occurrences(GroupId g) const {
        const Group& e = groups_[static_cast<size_t>(g)];
        return {occ_.data() + e.occ_begin, static_cast<size_t>(e.occ_end - e.occ_begin)};
    }
    std::span<const GroupId> incident_groups(VertexId v) const {
        return {adj_.data() + adj_off_[static_cast<size_t>(v)],
                static_cast<size_t>(adj_off_[static_cast<size_t>(v) + 1] - adj_off_[static_cast<size_t>(v)])};
    }
    GroupId find_group(VertexId u, VertexId v) const;  // -1 when absent

    int64_t original_vertex_id(VertexId v) const {
        return vertex_names_.empty() ? v : vertex_names_[static_cast<size_t>(v)];
    }
    RawTime raw_time(Tick t) const {
        return raw_times_.empty() ? t : raw_times_[static_cast<size_t>(t)];
    }
    bool has_raw_times() const { return !raw_times_.empty(); }
    int64_t distinct_timestamps() const;
    const IngestStats& ingest_stats() const { return stats_; }

    std::vector<TemporalEdge> all_edges() const;  // sorted by (t,u,v)

    // Structural equality: vertex universe, groups, occurrences, t_max and
    // the id/time maps. Ingest stats are not part of the value.
    bool operator==(const TemporalGraph& o) const;

private:
    static TemporalGraph build(int32_t n, std::vector<TemporalEdge>&& edges, Tick t_max,
                               std::vector<int64_t>&& names, std::vector<RawTime>&& raws,
                               IngestStats stats);

    int32_t n_ = 0;
    Tick t_max_ = 0;
    std::vector<Group> groups_;
    std::vector<Tick> occ_;        // per-group ascending occurrence times
    std::vector<int32_t> adj_off_; // CSR over vertices
    std::vector<GroupId> adj_;
    std::vector<int64_t> vertex_names_;  // internal -> original id (ascending)
    std::vector<RawTime> raw_times_;     // tick -> raw timestamp (when normalized)
    IngestStats stats_;
};

}  // namespace tkc
