#include "tkc/core_time.hpp"

#include <algorithm>
#include <stdexcept>

namespace tkc {

std::vector<Tick> support_times(const TemporalGraph& g) {
    std::vector<Tick> sup(static_cast<size_t>(g.num_groups()), kInfTick);
    for (GroupId e = 0; e < g.num_groups(); ++e) {
        auto occ = g.occurrences(e);
        if (!occ.empty()) sup[static_cast<size_t>(e)] = occ.front();
    }
    return sup;
}

std::vector<Tick> k_degree_times(const TemporalGraph& g, const std::vector<Tick>& sup, int k) {
    if (k < 1) throw std::invalid_argument("k_degree_times: k < 1");
    std::vector<Tick> d(static_cast<size_t>(g.num_vertices()), kInfTick);
    std::vector<Tick> tmp;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        auto inc = g.incident_groups(v);
        if (static_cast<int>(inc.size()) < k) continue;
        tmp.clear();
        for (GroupId e : inc) tmp.push_back(sup[static_cast<size_t>(e)]);
        std::nth_element(tmp.begin(), tmp.begin() + (k - 1), tmp.end());
        d[static_cast<size_t>(v)] = tmp[static_cast<size_t>(k - 1)];
    }
    return d;
}

CoreTimeMap core_init(const TemporalGraph& g, Tick anchor, int k) {
    if (k < 1) throw std::invalid_argument("core_init: k < 1");
    const int32_t n = g.num_vertices();
    const GroupId m = g.num_groups();
    std::vector<Tick> sup = support_times(g);

    // Per-vertex incident entries sorted by (support, group id), with the
    // position of each group in both endpoint arrays for O(1) removal.
    std::vector<int32_t> off(static_cast<size_t>(n) + 1, 0);
    for (VertexId v = 0; v < n; ++v) {
        off[static_cast<size_t>(v) + 1] =
            off[static_cast<size_t>(v)] + static_cast<int32_t>(g.incident_groups(v).size());
    }
    std::vector<GroupId> inc(static_cast<size_t>(off.back()));
    std::vector<int32_t> pos_u(static_cast<size_t>(m)), pos_v(static_cast<size_t>(m));
    for (VertexId v = 0; v < n; ++v) {
        auto src = g.incident_groups(v);
        GroupId* dst = inc.data() + off[static_cast<size_t>(v)];
        std::copy(src.begin(), src.end(), dst);
        std::sort(dst, dst + src.size(), [&sup](GroupId a, GroupId b) {
            if (sup[static_cast<size_t>(a)] != sup[static_cast<size_t>(b)]) {
                return sup[static_cast<size_t>(a)] < sup[static_cast<size_t>(b)];
            }
            return a < b;
        });
        for (size_t i = 0; i < src.size(); ++i) {
            GroupId e = dst[i];
            int32_t idx = off[static_cast<size_t>(v)] + static_cast<int32_t>(i);
            (g.group(e).u == v ? pos_u : pos_v)[static_cast<size_t>(e)] = idx;
        }
    }

    std::vector<char> entry_dead(inc.size(), 0);
    // ptr[v]: flat index of the k-th smallest alive incident support, or -1.
    std::vector<int32_t> ptr(static_cast<size_t>(n), -1);
    std::vector<Tick> d(static_cast<size_t>(n), kInfTick);
    for (VertexId v = 0; v < n; ++v) {
        int32_t deg = off[static_cast<size_t>(v) + 1] - off[static_cast<size_t>(v)];
        if (deg >= k) {
            ptr[static_cast<size_t>(v)] = off[static_cast<size_t>(v)] + k - 1;
            d[static_cast<size_t>(v)] = sup[static_cast<size_t>(inc[static_cast<size_t>(
                ptr[static_cast<size_t>(v)])])];
        }
    }

    std::vector<char> alive(static_cast<size_t>(n), 1);
    CoreTimeMap out;
    out.anchor = anchor;
    out.k = k;
    out.vertex_sigma.assign(static_cast<size_t>(n), kInfTick);
    out.edge_sigma.assign(static_cast<size_t>(m), kInfTick);

    // Kills the entry of group e in w's sorted incident array and refreshes
    // d(w); returns true when d(w) changed.
    auto kill_entry = [&](VertexId w, GroupId e) -> bool {
        int32_t idx = (g.group(e).u == w ? pos_u : pos_v)[static_cast<size_t>(e)];
        entry_dead[static_cast<size_t>(idx)] = 1;
        int32_t& p = ptr[static_cast<size_t>(w)];
        if (p < 0 || idx > p) return false;
        int32_t end = off[static_cast<size_t>(w) + 1];
        do {
            ++p;
        } while (p < end && entry_dead[static_cast<size_t>(p)]);
        Tick nd = p < end ? sup[static_cast<size_t>(inc[static_cast<size_t>(p)])] : kInfTick;
        if (p >= end) p = -1;
        if (nd == d[static_cast<size_t>(w)]) return false;
        d[static_cast<size_t>(w)] = nd;
        return true;
    };

    int32_t alive_count = n;
    auto remove_vertex = [&](VertexId v, auto&& on_neighbor_change) {
        alive[static_cast<size_t>(v)] = 0;
        --alive_count;
        for (GroupId e : g.incident_groups(v)) {
            VertexId w = g.group(e).u == v ? g.group(e).v : g.group(e).u;
            if (!alive[static_cast<size_t>(w)]) continue;
            if (kill_entry(w, e)) on_neighbor_change(w);
        }
    };

    // Vertices that can never reach degree k are outside every k-core; peel
    // them (and anything they drag to infinite degree time) up front.
    {
        std::vector<VertexId> work;
        for (VertexId v = 0; v < n; ++v) {
            if (d[static_cast<size_t>(v)] == kInfTick) work.push_back(v);
        }
        while (!work.empty()) {
            VertexId v = work.back();
            work.pop_back();
            if (!alive[static_cast<size_t>(v)]) continue;
            remove_vertex(v, [&](VertexId w) {
                if (d[static_cast<size_t>(w)] == kInfTick) work.push_back(w);
            });
        }
    }

    // Max-degree-time extraction via timestamp buckets with a descending
    // cursor. Updates can push a vertex above the cursor (its k-th smallest
    // support may jump past the current level); those land on `pile` and are
    // drained first, which matches true max-first extraction because the
    // running minimum absorbs any late value.
    std::vector<std::vector<VertexId>> bucket(static_cast<size_t>(g.t_max()) + 1);
    std::vector<VertexId> pile;
    for (VertexId v = 0; v < n; ++v) {
        if (alive[static_cast<size_t>(v)]) bucket[static_cast<size_t>(d[static_cast<size_t>(v)])].push_back(v);
    }

    Tick t_run = kInfTick;
    Tick cur = g.t_max();
    auto on_change = [&](VertexId w) {
        Tick nd = d[static_cast<size_t>(w)];
        if (nd == kInfTick || nd > cur) {
            pile.push_back(w);
        } else {
            bucket[static_cast<size_t>(nd)].push_back(w);
        }
    };
    while (alive_count > 0) {
        VertexId v = -1;
        while (!pile.empty()) {
            VertexId c = pile.back();
            pile.pop_back();
            if (alive[static_cast<size_t>(c)]) {
                v = c;
                break;
            }
        }
        while (v < 0) {
            auto& b = bucket[static_cast<size_t>(cur)];
            while (!b.empty()) {
                VertexId c = b.back();
                b.pop_back();
                if (alive[static_cast<size_t>(c)] && d[static_cast<size_t>(c)] == cur) {
                    v = c;
                    break;
                }
            }
            if (v < 0) --cur;
        }
        t_run = std::min(t_run, d[static_cast<size_t>(v)]);
        out.vertex_sigma[static_cast<size_t>(v)] = t_run;
        remove_vertex(v, on_change);
    }

    for (GroupId e = 0; e < m; ++e) {
        Tick a = out.vertex_sigma[static_cast<size_t>(g.group(e).u)];
        Tick b = out.vertex_sigma[static_cast<size_t>(g.group(e).v)];
        out.edge_sigma[static_cast<size_t>(e)] = std::max({sup[static_cast<size_t>(e)], a, b});
    }
    return out;
}

}  // namespace tkc
