#include "tkc/engine.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace tkc {

// ---------------------------------------------------------------------------
// TTIRegistry

TTIRegistry::TTIRegistry(Tick ts, Tick te) : ts_(ts), delta_(te - ts + 1) {
    if (delta_ < 1) throw std::invalid_argument("TTIRegistry: empty window");
    if (delta_ <= (1 << 16)) {
        size_t pairs = static_cast<size_t>(delta_) * (static_cast<size_t>(delta_) + 1) / 2;
        bits_.assign((pairs + 63) / 64, 0);
    }
}

int64_t TTIRegistry::index(Tick s, Tick e) const {
    // Triangular layout: row r = s - ts holds delta - r entries.
    int64_t row = s - ts_;
    int64_t col = e - s;
    int64_t before = row * delta_ - row * (row - 1) / 2;
    return before + col;
}

bool TTIRegistry::insert(Tick s, Tick e) {
    if (s < ts_ || e < s || e - ts_ >= delta_) {
        throw std::invalid_argument("TTIRegistry: interval out of window");
    }
    if (!bits_.empty()) {
        int64_t i = index(s, e);
        uint64_t& w = bits_[static_cast<size_t>(i >> 6)];
        uint64_t mask = 1ULL << (i & 63);
        if (w & mask) return false;
        w |= mask;
        ++count_;
        return true;
    }
    bool fresh = sparse_.insert((static_cast<uint64_t>(static_cast<uint32_t>(s)) << 32) |
                                static_cast<uint32_t>(e))
                     .second;
    if (fresh) ++count_;
    return fresh;
}

bool TTIRegistry::contains(Tick s, Tick e) const {
    if (s < ts_ || e < s || e - ts_ >= delta_) return false;
    if (!bits_.empty()) {
        int64_t i = index(s, e);
        return (bits_[static_cast<size_t>(i >> 6)] >> (i & 63)) & 1;
    }
    return sparse_.count((static_cast<uint64_t>(static_cast<uint32_t>(s)) << 32) |
                         static_cast<uint32_t>(e)) > 0;
}

// ---------------------------------------------------------------------------
// CoreTEngine

CoreTEngine::CoreTEngine(const TemporalGraph& window, Tick ts, Tick te, int k, EngineOptions opts)
    : g_(&window), ts_(ts), te_(te), k_(k), anchor_(ts), opts_(opts) {
    if (k < 1) throw std::invalid_argument("CoreTEngine: k < 1");
    if (ts < 0 || ts > te) throw std::invalid_argument("CoreTEngine: bad window");
    CoreTimeMap init = core_init(window, ts, k);
    vsig_ = std::move(init.vertex_sigma);
    esig_ = std::move(init.edge_sigma);
    build_state();
}

CoreTEngine::CoreTEngine(const TemporalGraph& window, Tick te, const CoreTimeMap& adopt,
                         EngineOptions opts)
    : g_(&window),
      ts_(adopt.anchor),
      te_(te),
      k_(adopt.k),
      anchor_(adopt.anchor),
      opts_(opts) {
    if (k_ < 1) throw std::invalid_argument("CoreTEngine: k < 1");
    if (ts_ < 0 || ts_ > te_) throw std::invalid_argument("CoreTEngine: bad window");
    if (static_cast<int32_t>(adopt.vertex_sigma.size()) != window.num_vertices() ||
        static_cast<int32_t>(adopt.edge_sigma.size()) != window.num_groups()) {
        throw std::invalid_argument("CoreTEngine: sigma map does not match graph");
    }
    vsig_ = adopt.vertex_sigma;
    esig_ = adopt.edge_sigma;
    build_state();
}

void CoreTEngine::build_state() {
    n_ = g_->num_vertices();
    m_ = g_->num_groups();
    const Tick delta = te_ - ts_ + 1;

    sup_.assign(static_cast<size_t>(m_), kInfTick);
    cursor_.assign(static_cast<size_t>(m_), 0);
    block_end_.assign(static_cast<size_t>(m_), 0);
    ebkt_prev_.assign(static_cast<size_t>(m_), -1);
    ebkt_next_.assign(static_cast<size_t>(m_), -1);
    pos_u_.assign(static_cast<size_t>(m_), 0);
    pos_v_.assign(static_cast<size_t>(m_), 0);
    ebkt_head_.assign(static_cast<size_t>(delta), -1);
    nrider_.assign(static_cast<size_t>(delta), 0);
    event_bits_.assign((static_cast<size_t>(delta) + 63) / 64, 0);
    tick_off_.assign(static_cast<size_t>(delta) + 1, 0);
    fr_vtx_.assign(static_cast<size_t>(delta) + 1, {});
    fr_edge_.assign(static_cast<size_t>(delta) + 1, {});
    fr_bits_.assign((static_cast<size_t>(delta) + 64) / 64, 0);
    v_extracted_epoch_.assign(static_cast<size_t>(n_), -1);
    e_extracted_epoch_.assign(static_cast<size_t>(m_), -1);
    if (opts_.structural_checks) {
        tti_payloads_ = std::make_unique<std::map<Interval, TemporalKCore>>();
    }

    alive_occ_ = 0;
    for (GroupId e = 0; e < m_; ++e) {
        auto occ = g_->occurrences(e);
        if (occ.front() < anchor_ || occ.back() > te_) {
            throw std::invalid_argument("CoreTEngine: occurrence outside [anchor, te]");
        }
        alive_occ_ += static_cast<int64_t>(occ.size());
        const auto& gr = g_->group(e);
        cursor_[static_cast<size_t>(e)] = gr.occ_begin;
        sup_[static_cast<size_t>(e)] = occ.front();
        Tick sig = esig_[static_cast<size_t>(e)];
        if (sig != kInfTick) {
            const Tick* ub = std::upper_bound(occ.data(), occ.data() + occ.size(), sig);
            block_end_[static_cast<size_t>(e)] =
                gr.occ_begin + static_cast<int32_t>(ub - occ.data());
            for (const Tick* r = ub; r != occ.data() + occ.size(); ++r) {
                ++nrider_[static_cast<size_t>(*r - ts_)];
                set_event_bit(*r);
            }
            bucket_link(e, sig);
        } else {
            block_end_[static_cast<size_t>(e)] = gr.occ_begin;
        }
        for (Tick t : occ) ++tick_off_[static_cast<size_t>(t - ts_) + 1];
    }
    for (size_t i = 1; i < tick_off_.size(); ++i) tick_off_[i] += tick_off_[i - 1];
    tick_groups_.resize(static_cast<size_t>(tick_off_.back()));
    {
        std::vector<int32_t> fill(tick_off_.begin(), tick_off_.end() - 1);
        for (GroupId e = 0; e < m_; ++e) {
            for (Tick t : g_->occurrences(e)) {
                tick_groups_[static_cast<size_t>(fill[static_cast<size_t>(t - ts_)]++)] = e;
            }
        }
    }

    finite_v_ = 0;
    for (VertexId v = 0; v < n_; ++v) {
        if (vsig_[static_cast<size_t>(v)] != kInfTick) ++finite_v_;
    }

    // Incident arrays sorted by (edge sigma, group id), infinite entries last.
    inc_off_.assign(static_cast<size_t>(n_) + 1, 0);
    for (VertexId v = 0; v < n_; ++v) {
        inc_off_[static_cast<size_t>(v) + 1] =
            inc_off_[static_cast<size_t>(v)] + static_cast<int32_t>(g_->incident_groups(v).size());
    }
    inc_.resize(static_cast<size_t>(inc_off_.back()));
    for (VertexId v = 0; v < n_; ++v) {
        auto src = g_->incident_groups(v);
        GroupId* dst = inc_.data() + inc_off_[static_cast<size_t>(v)];
        std::copy(src.begin(), src.end(), dst);
        std::sort(dst, dst + src.size(), [this](GroupId a, GroupId b) {
            Tick sa = esig_[static_cast<size_t>(a)];
            Tick sb = esig_[static_cast<size_t>(b)];
            if (sa != sb) return sa < sb;
            return a < b;
        });
        for (size_t i = 0; i < src.size(); ++i) {
            GroupId e = dst[i];
            int32_t idx = inc_off_[static_cast<size_t>(v)] + static_cast<int32_t>(i);
            (g_->group(e).u == v ? pos_u_ : pos_v_)[static_cast<size_t>(e)] = idx;
        }
    }
}

void CoreTEngine::bucket_link(GroupId e, Tick sig) {
    int32_t slot = sig - ts_;
    ebkt_next_[static_cast<size_t>(e)] = ebkt_head_[static_cast<size_t>(slot)];
    if (ebkt_head_[static_cast<size_t>(slot)] >= 0) {
        ebkt_prev_[static_cast<size_t>(ebkt_head_[static_cast<size_t>(slot)])] = e;
    }
    ebkt_head_[static_cast<size_t>(slot)] = e;
    ebkt_prev_[static_cast<size_t>(e)] = -1;
    set_event_bit(sig);
}

void CoreTEngine::bucket_unlink(GroupId e, Tick sig) {
    int32_t slot = sig - ts_;
    GroupId p = ebkt_prev_[static_cast<size_t>(e)];
    GroupId n = ebkt_next_[static_cast<size_t>(e)];
    if (p >= 0) {
        ebkt_next_[static_cast<size_t>(p)] = n;
    } else {
        ebkt_head_[static_cast<size_t>(slot)] = n;
    }
    if (n >= 0) ebkt_prev_[static_cast<size_t>(n)] = p;
    ebkt_prev_[static_cast<size_t>(e)] = ebkt_next_[static_cast<size_t>(e)] = -1;
    maybe_clear_event_bit(sig);
}

void CoreTEngine::set_event_bit(Tick t) {
    size_t slot = static_cast<size_t>(t - ts_);
    event_bits_[slot >> 6] |= 1ULL << (slot & 63);
}

void CoreTEngine::maybe_clear_event_bit(Tick t) {
    size_t slot = static_cast<size_t>(t - ts_);
    if (ebkt_head_[slot] < 0 && nrider_[slot] == 0) {
        event_bits_[slot >> 6] &= ~(1ULL << (slot & 63));
    }
}

Tick CoreTEngine::kth_incident_sigma(VertexId w) const {
    int32_t off = inc_off_[static_cast<size_t>(w)];
    int32_t deg = inc_off_[static_cast<size_t>(w) + 1] - off;
    if (deg < k_) return kInfTick;
    return esig_[static_cast<size_t>(inc_[static_cast<size_t>(off + k_ - 1)])];
}

void CoreTEngine::reposition(VertexId w, GroupId e) {
    int32_t idx = (g_->group(e).u == w ? pos_u_ : pos_v_)[static_cast<size_t>(e)];
    int32_t end = inc_off_[static_cast<size_t>(w) + 1];
    Tick ks = esig_[static_cast<size_t>(e)];
    while (idx + 1 < end) {
        GroupId nx = inc_[static_cast<size_t>(idx + 1)];
        Tick kn = esig_[static_cast<size_t>(nx)];
        if (kn < ks || (kn == ks && nx < e)) {
            inc_[static_cast<size_t>(idx)] = nx;
            inc_[static_cast<size_t>(idx + 1)] = e;
            (g_->group(nx).u == w ? pos_u_ : pos_v_)[static_cast<size_t>(nx)] = idx;
            (g_->group(e).u == w ? pos_u_ : pos_v_)[static_cast<size_t>(e)] = idx + 1;
            ++idx;
        } else {
            break;
        }
    }
}

void CoreTEngine::set_edge_sigma(GroupId e, Tick ns) {
    Tick old = esig_[static_cast<size_t>(e)];
    if (ns <= old) throw std::logic_error("edge sigma must increase");
    if (old != kInfTick) bucket_unlink(e, old);
    esig_[static_cast<size_t>(e)] = ns;

    const auto& gr = g_->group(e);
    auto occ = g_->occurrences(e);
    int32_t& be = block_end_[static_cast<size_t>(e)];
    if (ns != kInfTick) {
        // Absorb riders now covered by the block.
        while (be < gr.occ_end) {
            Tick t = occ[static_cast<size_t>(be - gr.occ_begin)];
            if (t > ns) break;
            --nrider_[static_cast<size_t>(t - ts_)];
            maybe_clear_event_bit(t);
            ++be;
        }
        bucket_link(e, ns);
    } else {
        // The group left every core; its pending riders go with it.
        for (int32_t i = be; i < gr.occ_end; ++i) {
            Tick t = occ[static_cast<size_t>(i - gr.occ_begin)];
            --nrider_[static_cast<size_t>(t - ts_)];
            maybe_clear_event_bit(t);
        }
        be = gr.occ_end;
    }
    reposition(gr.u, e);
    reposition(gr.v, e);
}

void CoreTEngine::set_vertex_sigma(VertexId v, Tick ns) {
    Tick old = vsig_[static_cast<size_t>(v)];
    if (ns <= old) throw std::logic_error("vertex sigma must increase");
    vsig_[static_cast<size_t>(v)] = ns;
    if (old != kInfTick && ns == kInfTick) --finite_v_;
}

void CoreTEngine::seed_edge(GroupId e) {
    Tick s = esig_[static_cast<size_t>(e)];
    size_t lvl = s == kInfTick ? static_cast<size_t>(te_ - ts_ + 1) : static_cast<size_t>(s - ts_);
    fr_edge_[lvl].push_back(e);
    fr_bits_[lvl >> 6] |= 1ULL << (lvl & 63);
    ++fr_pending_;
}

void CoreTEngine::seed_vertex(VertexId v) {
    Tick s = vsig_[static_cast<size_t>(v)];
    size_t lvl = s == kInfTick ? static_cast<size_t>(te_ - ts_ + 1) : static_cast<size_t>(s - ts_);
    fr_vtx_[lvl].push_back(v);
    fr_bits_[lvl >> 6] |= 1ULL << (lvl & 63);
    ++fr_pending_;
}

void CoreTEngine::advance(Tick tick) {
    if (tick != anchor_) {
        throw std::invalid_argument("core_update: sigma anchored at " + std::to_string(anchor_) +
                                    " but tick is " + std::to_string(tick));
    }
    if (tick >= te_) throw std::invalid_argument("core_update: tick beyond window end");
    ++advance_epoch_;
    last_extractions_ = 0;

    // Drop every occurrence stamped `tick`; an edge whose support moved past
    // its core time seeds the frontier at the new support.
    int32_t slot = tick - ts_;
    for (int32_t i = tick_off_[static_cast<size_t>(slot)];
         i < tick_off_[static_cast<size_t>(slot) + 1]; ++i) {
        GroupId e = tick_groups_[static_cast<size_t>(i)];
        const auto& gr = g_->group(e);
        int32_t& cur = cursor_[static_cast<size_t>(e)];
        if (g_->occurrences(e)[static_cast<size_t>(cur - gr.occ_begin)] != tick) {
            throw std::logic_error("occurrence cursor out of step");
        }
        ++cur;
        --alive_occ_;
        Tick newsup = cur < gr.occ_end
                          ? g_->occurrences(e)[static_cast<size_t>(cur - gr.occ_begin)]
                          : kInfTick;
        sup_[static_cast<size_t>(e)] = newsup;
        Tick sig = esig_[static_cast<size_t>(e)];
        if (sig == kInfTick) continue;
        if (newsup > sig) {
            set_edge_sigma(e, newsup);
            seed_edge(e);
        }
    }

    const size_t inf_lvl = static_cast<size_t>(te_ - ts_ + 1);
    std::vector<GroupId> inc_copy;
    auto process_vertex = [&](VertexId v) {
        if (v_extracted_epoch_[static_cast<size_t>(v)] == advance_epoch_) {
            throw std::logic_error("vertex extracted twice in one update");
        }
        v_extracted_epoch_[static_cast<size_t>(v)] = advance_epoch_;
        ++last_extractions_;
        ++total_extractions_;
        Tick sv = vsig_[static_cast<size_t>(v)];
        // Copy the slice: raising an edge reorders the array under us.
        inc_copy.assign(inc_.begin() + inc_off_[static_cast<size_t>(v)],
                        inc_.begin() + inc_off_[static_cast<size_t>(v) + 1]);
        for (GroupId e : inc_copy) {
            const auto& gr = g_->group(e);
            VertexId w = gr.u == v ? gr.v : gr.u;
            Tick want = std::max(sv, vsig_[static_cast<size_t>(w)]);
            if (esig_[static_cast<size_t>(e)] < want) {
                set_edge_sigma(e, want);
                seed_edge(e);
            }
        }
    };
    auto process_edge = [&](GroupId e) {
        if (e_extracted_epoch_[static_cast<size_t>(e)] == advance_epoch_) {
            throw std::logic_error("edge extracted twice in one update");
        }
        e_extracted_epoch_[static_cast<size_t>(e)] = advance_epoch_;
        ++last_extractions_;
        ++total_extractions_;
        const auto& gr = g_->group(e);
        for (VertexId w : {gr.u, gr.v}) {
            Tick want = kth_incident_sigma(w);
            if (vsig_[static_cast<size_t>(w)] < want) {
                set_vertex_sigma(w, want);
                seed_vertex(w);
            }
        }
    };

    // Drains one level completely; stale entries (sigma moved since they were
    // queued) are discarded on pop. Vertices go before edges.
    auto drain_level = [&](size_t lvl) {
        Tick want = lvl == inf_lvl ? kInfTick : ts_ + static_cast<Tick>(lvl);
        for (;;) {
            bool any = false;
            while (!fr_vtx_[lvl].empty()) {
                VertexId v = fr_vtx_[lvl].back();
                fr_vtx_[lvl].pop_back();
                --fr_pending_;
                if (vsig_[static_cast<size_t>(v)] != want) continue;
                process_vertex(v);
                any = true;
            }
            while (!fr_edge_[lvl].empty()) {
                GroupId e = fr_edge_[lvl].back();
                fr_edge_[lvl].pop_back();
                --fr_pending_;
                if (esig_[static_cast<size_t>(e)] != want) continue;
                process_edge(e);
                any = true;
            }
            if (!any) break;
        }
        fr_bits_[lvl >> 6] &= ~(1ULL << (lvl & 63));
    };

    if (!opts_.defect_ascending_frontier) {
        // Descending scan over the level bitmap. New seeds never appear above
        // the level being drained.
        size_t word = inf_lvl >> 6;
        uint64_t bits = fr_bits_[word] & (~0ULL >> (63 - (inf_lvl & 63)));
        while (fr_pending_ > 0) {
            while (bits == 0) {
                if (word == 0) throw std::logic_error("frontier bookkeeping out of sync");
                bits = fr_bits_[--word];
            }
            size_t lvl = (word << 6) + (63 - static_cast<size_t>(std::countl_zero(bits)));
            drain_level(lvl);
            bits = fr_bits_[word];
            if (word == (inf_lvl >> 6)) bits &= ~0ULL >> (63 - (inf_lvl & 63));
        }
    } else {
        // Mutation hook for differential tests: ascending order, wrong on purpose.
        while (fr_pending_ > 0) {
            for (size_t lvl = 0; lvl <= inf_lvl && fr_pending_ > 0; ++lvl) drain_level(lvl);
        }
    }

    anchor_ = tick + 1;
}

int64_t CoreTEngine::list_cores(TTIRegistry& registry, PayloadMode mode, const Sink& sink) {
    if (finite_v_ == 0) return 0;
    int64_t emitted = 0;
    Tick s = kInfTick;
    Tick e = -1;

    const size_t lo = static_cast<size_t>(anchor_ - ts_);
    const size_t hi = static_cast<size_t>(te_ - ts_);
    size_t word = lo >> 6;
    uint64_t bits = event_bits_[word] & (~0ULL << (lo & 63));
    for (;;) {
        while (bits == 0) {
            if (++word >= event_bits_.size()) return emitted;
            bits = event_bits_[word];
        }
        size_t slot = (word << 6) + static_cast<size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        if (slot > hi) return emitted;

        Tick kappa = ts_ + static_cast<Tick>(slot);
        for (GroupId g = ebkt_head_[slot]; g >= 0; g = ebkt_next_[static_cast<size_t>(g)]) {
            s = std::min(s, sup_[static_cast<size_t>(g)]);
            const auto& gr = g_->group(g);
            Tick btail = g_->occurrences(g)[static_cast<size_t>(
                block_end_[static_cast<size_t>(g)] - 1 - gr.occ_begin)];
            e = std::max(e, btail);
        }
        if (nrider_[slot] > 0) e = std::max(e, kappa);

        bool fresh = registry.insert(s, e);
        if (opts_.structural_checks) {
            TemporalKCore core = reconstruct_at(kappa);
            if (fresh) {
                tti_payloads_->emplace(Interval{s, e}, std::move(core));
            } else if (auto it = tti_payloads_->find(Interval{s, e});
                       it != tti_payloads_->end() && !(it->second == core)) {
                throw std::logic_error("TTI repeated with a structurally different core");
            }
        }
        if (fresh) {
            ++emitted;
            Emission em;
            em.anchor = anchor_;
            em.te = kappa;
            em.tti_start = s;
            em.tti_end = e;
            if (mode != PayloadMode::TtiOnly) {
                TemporalKCore core = reconstruct_at(kappa);
                scratch_vertices_ = std::move(core.vertices);
                scratch_edges_ = std::move(core.edges);
                em.vertices = scratch_vertices_;
                if (mode == PayloadMode::Full) em.edges = scratch_edges_;
            }
            if (sink) sink(em);
        }
    }
}

TemporalKCore CoreTEngine::reconstruct_at(Tick te) const {
    if (te < anchor_) throw std::invalid_argument("reconstruct: te before anchor");
    if (te > te_) throw std::invalid_argument("reconstruct: te beyond window end");
    TemporalKCore core;
    for (GroupId e = 0; e < m_; ++e) {
        if (esig_[static_cast<size_t>(e)] > te) continue;
        const auto& gr = g_->group(e);
        auto occ = g_->occurrences(e);
        for (int32_t i = cursor_[static_cast<size_t>(e)]; i < gr.occ_end; ++i) {
            Tick t = occ[static_cast<size_t>(i - gr.occ_begin)];
            if (t > te) break;
            core.edges.push_back({gr.u, gr.v, t});
        }
    }
    if (core.edges.empty()) return {};
    std::sort(core.edges.begin(), core.edges.end(), edge_time_order);
    for (VertexId v = 0; v < n_; ++v) {
        if (vsig_[static_cast<size_t>(v)] <= te) core.vertices.push_back(v);
    }
    core.tti = Interval{core.edges.front().t, core.edges.back().t};
    return core;
}

CoreTimeMap CoreTEngine::sigma_snapshot() const {
    CoreTimeMap m;
    m.anchor = anchor_;
    m.k = k_;
    m.vertex_sigma = vsig_;
    m.edge_sigma = esig_;
    return m;
}

TemporalGraph CoreTEngine::remaining_graph(std::vector<GroupId>* old2new) const {
    TemporalGraph rest = g_->project(anchor_, te_);
    if (old2new) {
        old2new->assign(static_cast<size_t>(m_), -1);
        GroupId next = 0;
        for (GroupId e = 0; e < m_; ++e) {
            if (cursor_[static_cast<size_t>(e)] < g_->group(e).occ_end) {
                (*old2new)[static_cast<size_t>(e)] = next++;
            }
        }
    }
    return rest;
}

}  // namespace tkc
