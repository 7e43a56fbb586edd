#pragma once

#include <functional>
#include <memory>
#include <unordered_set>

#include "tkc/core_time.hpp"
#include "tkc/oracle.hpp"
#include "tkc/temporal_graph.hpp"

namespace tkc {

// Membership over emitted tightest time intervals. Dense triangular bit
// matrix when the window is small enough, hashed pairs otherwise.
class TTIRegistry {
public:
    TTIRegistry(Tick ts, Tick te);

    // Returns true when (s, e) was not seen before; insertion is idempotent.
    bool insert(Tick s, Tick e);
    bool contains(Tick s, Tick e) const;
    int64_t size() const { return count_; }

private:
    int64_t index(Tick s, Tick e) const;

    Tick ts_;
    Tick delta_;
    int64_t count_ = 0;
    std::vector<uint64_t> bits_;            // triangular, when delta_ <= 2^16
    std::unordered_set<uint64_t> sparse_;   // otherwise
};

enum class PayloadMode { TtiOnly, Vertices, Full };

// One enumerated core. Spans reference the engine's scratch buffers and are
// valid only for the duration of the sink call.
struct Emission {
    Tick anchor = 0;
    Tick te = 0;
    Tick tti_start = 0;
    Tick tti_end = 0;
    std::span<const VertexId> vertices;   // PayloadMode::Vertices and Full
    std::span<const TemporalEdge> edges;  // PayloadMode::Full
};

using Sink = std::function<void(const Emission&)>;

struct EngineOptions {
    // Verification extras: structural comparison when a TTI repeats, and
    // single-extraction accounting on the frontier.
    bool structural_checks = false;
    // Deliberate defect for mutation tests: process frontier levels in
    // ascending instead of descending order.
    bool defect_ascending_frontier = false;
};

// Working state of one query: the window graph with lazily advancing
// occurrence cursors, the current core-time map, and the update frontier.
// Owned by a single thread; independent engines may share the base graph.
class CoreTEngine {
public:
    // Computes sigma at anchor = ts via core_init.
    CoreTEngine(const TemporalGraph& window, Tick ts, Tick te, int k, EngineOptions opts = {});
    // Adopts a precomputed map (anchored anywhere inside [ts, te]).
    CoreTEngine(const TemporalGraph& window, Tick te, const CoreTimeMap& adopt,
                EngineOptions opts = {});

    // Removes all temporal edges at `tick` (which must equal the current
    // anchor) and raises core times in descending tentative order; the anchor
    // advances to tick + 1.
    void advance(Tick tick);

    // Enumerates cores anchored at the current anchor in ascending end time,
    // emitting each one whose TTI is new to the registry.
    int64_t list_cores(TTIRegistry& registry, PayloadMode mode, const Sink& sink);

    // Lemma-2 materialization of the core over [anchor, te] from the current map.
    TemporalKCore reconstruct_at(Tick te) const;

    Tick anchor() const { return anchor_; }
    Tick window_end() const { return te_; }
    int k() const { return k_; }
    int64_t alive_occurrences() const { return alive_occ_; }
    int32_t finite_sigma_vertices() const { return finite_v_; }
    int64_t last_extractions() const { return last_extractions_; }
    int64_t total_extractions() const { return total_extractions_; }

    Tick vertex_sigma(VertexId v) const { return vsig_[static_cast<size_t>(v)]; }
    Tick edge_sigma(GroupId e) const { return esig_[static_cast<size_t>(e)]; }
    CoreTimeMap sigma_snapshot() const;

    // Materializes the remaining graph (alive occurrences only). When old2new
    // is given it receives, per window group id, the new group id or -1.
    TemporalGraph remaining_graph(std::vector<GroupId>* old2new = nullptr) const;

private:
    void build_state();
    void set_edge_sigma(GroupId e, Tick ns);
    void set_vertex_sigma(VertexId v, Tick ns);
    void reposition(VertexId w, GroupId e);
    Tick kth_incident_sigma(VertexId w) const;
    void seed_edge(GroupId e);
    void seed_vertex(VertexId v);
    void bucket_link(GroupId e, Tick sig);
    void bucket_unlink(GroupId e, Tick sig);
    void set_event_bit(Tick t);
    void maybe_clear_event_bit(Tick t);

    const TemporalGraph* g_;
    Tick ts_, te_;
    int k_;
    Tick anchor_;
    int32_t n_;
    GroupId m_;
    EngineOptions opts_;

    // group state
    std::vector<Tick> esig_;
    std::vector<Tick> sup_;
    std::vector<int32_t> cursor_;     // first alive occurrence (flat index)
    std::vector<int32_t> block_end_;  // one past last occurrence <= sigma
    std::vector<GroupId> ebkt_prev_, ebkt_next_;
    std::vector<int32_t> pos_u_, pos_v_;  // entry index in endpoint arrays

    // vertex state
    std::vector<Tick> vsig_;
    std::vector<int32_t> inc_off_;
    std::vector<GroupId> inc_;  // sorted by (edge sigma, group id)

    // edge sigma buckets and sweep index (slot = value - ts_)
    std::vector<GroupId> ebkt_head_;
    std::vector<int32_t> nrider_;
    std::vector<uint64_t> event_bits_;

    // occurrences grouped by timestamp
    std::vector<int32_t> tick_off_;
    std::vector<GroupId> tick_groups_;

    // frontier: per-level lazy buckets plus a bitmap over non-empty levels;
    // vertices drain before edges, slot delta holds the infinite level
    std::vector<std::vector<VertexId>> fr_vtx_;
    std::vector<std::vector<GroupId>> fr_edge_;
    std::vector<uint64_t> fr_bits_;
    int64_t fr_pending_ = 0;

    int64_t alive_occ_ = 0;
    int32_t finite_v_ = 0;
    int64_t last_extractions_ = 0;
    int64_t total_extractions_ = 0;
    int32_t advance_epoch_ = 0;
    std::vector<int32_t> v_extracted_epoch_, e_extracted_epoch_;

    // scratch for emissions
    std::vector<VertexId> scratch_vertices_;
    std::vector<TemporalEdge> scratch_edges_;
    std::unique_ptr<std::map<Interval, TemporalKCore>> tti_payloads_;  // structural checks
};

}  // namespace tkc
