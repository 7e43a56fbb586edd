#include "tkc/temporal_graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tkc {

namespace {

struct RawTriple {
    int64_t u;
    int64_t v;
    int64_t t;
};

bool parse_int(std::string_view tok, int64_t& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

}  // namespace

TemporalGraph TemporalGraph::parse_edge_list(std::istream& in, bool normalize) {
    std::vector<RawTriple> triples;
    IngestStats stats;
    std::string line;
    int64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t p = line.find_first_not_of(" \t\r");
        if (p == std::string::npos) continue;  // blank
        if (line[p] == '#' || line[p] == '%') continue;

        std::string_view rest(line.data() + p, line.size() - p);
        int64_t vals[3];
        int nfields = 0;
        while (!rest.empty()) {
            size_t e = rest.find_first_of(" \t\r");
            std::string_view tok = rest.substr(0, e);
            if (!tok.empty()) {
                if (nfields == 3) {
                    throw ParseError("line " + std::to_string(line_no) +
                                     ": expected 3 fields, found more");
                }
                if (!parse_int(tok, vals[nfields])) {
                    throw ParseError("line " + std::to_string(line_no) +
                                     ": non-integer field '" + std::string(tok) + "'");
                }
                ++nfields;
            }
            if (e == std::string_view::npos) break;
            rest.remove_prefix(e + 1);
        }
        if (nfields != 3) {
            throw ParseError("line " + std::to_string(line_no) + ": expected 3 fields, found " +
                             std::to_string(nfields));
        }
        auto [u, v, t] = RawTriple{vals[0], vals[1], vals[2]};
        if (u < 0 || v < 0) {
            throw ParseError("line " + std::to_string(line_no) + ": negative vertex id");
        }
        if (!normalize && t < 0) {
            throw ParseError("line " + std::to_string(line_no) +
                             ": negative timestamp (pass normalize to relabel)");
        }
        if (u == v) {
            ++stats.self_loops;
            continue;
        }
        triples.push_back({u, v, t});
    }

    // Dense vertex relabeling, order-preserving.
    std::vector<int64_t> names;
    names.reserve(triples.size() * 2);
    for (const RawTriple& e : triples) {
        names.push_back(e.u);
        names.push_back(e.v);
    }
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    auto vertex_of = [&names](int64_t raw) {
        return static_cast<VertexId>(std::lower_bound(names.begin(), names.end(), raw) -
                                     names.begin());
    };

    // Timestamp relabeling.
    std::vector<RawTime> raws;
    Tick t_max = 0;
    if (normalize) {
        raws.reserve(triples.size());
        for (const RawTriple& e : triples) raws.push_back(e.t);
        std::sort(raws.begin(), raws.end());
        raws.erase(std::unique(raws.begin(), raws.end()), raws.end());
        t_max = raws.empty() ? 0 : static_cast<Tick>(raws.size() - 1);
    } else {
        for (const RawTriple& e : triples) {
            if (e.t >= kInfTick) {
                throw ParseError("timestamp " + std::to_string(e.t) +
                                 " out of tick range; use normalization");
            }
            t_max = std::max(t_max, static_cast<Tick>(e.t));
        }
    }
    auto tick_of = [&raws, normalize](int64_t raw) {
        if (!normalize) return static_cast<Tick>(raw);
        return static_cast<Tick>(std::lower_bound(raws.begin(), raws.end(), raw) - raws.begin());
    };

    std::vector<TemporalEdge> edges;
    edges.reserve(triples.size());
    for (const RawTriple& e : triples) {
        VertexId a = vertex_of(e.u);
        VertexId b = vertex_of(e.v);
        if (a > b) std::swap(a, b);
        edges.push_back({a, b, tick_of(e.t)});
    }

    return build(static_cast<int32_t>(names.size()), std::move(edges), t_max, std::move(names),
                 std::move(raws), stats);
}

TemporalGraph TemporalGraph::parse_file(const std::string& path, bool normalize) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return parse_edge_list(in, normalize);
}

TemporalGraph TemporalGraph::from_edges(int32_t n, std::vector<TemporalEdge> edges, Tick t_max) {
    Tick seen_max = 0;
    for (TemporalEdge& e : edges) {
        if (e.u == e.v) throw std::invalid_argument("from_edges: self-loop");
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
            throw std::invalid_argument("from_edges: vertex id out of range");
        }
        if (e.t < 0 || e.t == kInfTick) throw std::invalid_argument("from_edges: bad timestamp");
        if (e.u > e.v) std::swap(e.u, e.v);
        seen_max = std::max(seen_max, e.t);
    }
    if (t_max < 0) t_max = seen_max;
    if (seen_max > t_max) throw std::invalid_argument("from_edges: timestamp beyond t_max");
    return build(n, std::move(edges), t_max, {}, {}, {});
}

TemporalGraph TemporalGraph::build(int32_t n, std::vector<TemporalEdge>&& edges, Tick t_max,
                                   std::vector<int64_t>&& names, std::vector<RawTime>&& raws,
                                   IngestStats stats) {
    std::sort(edges.begin(), edges.end(), [](const TemporalEdge& a, const TemporalEdge& b) {
        if (a.u != b.u) return a.u < b.u;
        if (a.v != b.v) return a.v < b.v;
        return a.t < b.t;
    });
    // Collapse duplicate (u,v,t) triples.
    size_t kept = 0;
    for (size_t i = 0; i < edges.size(); ++i) {
        if (kept > 0 && edges[i] == edges[kept - 1]) {
            ++stats.duplicate_edges;
            continue;
        }
        edges[kept++] = edges[i];
    }
    edges.resize(kept);

    TemporalGraph g;
    g.n_ = n;
    g.t_max_ = t_max;
    g.vertex_names_ = std::move(names);
    g.raw_times_ = std::move(raws);
    g.stats_ = stats;
    g.occ_.reserve(edges.size());
    for (size_t i = 0; i < edges.size();) {
        size_t j = i;
        while (j < edges.size() && edges[j].u == edges[i].u && edges[j].v == edges[i].v) ++j;
        Group grp;
        grp.u = edges[i].u;
        grp.v = edges[i].v;
        grp.occ_begin = static_cast<int32_t>(g.occ_.size());
        for (size_t r = i; r < j; ++r) g.occ_.push_back(edges[r].t);
        grp.occ_end = static_cast<int32_t>(g.occ_.size());
        g.groups_.push_back(grp);
        i = j;
    }

    g.adj_off_.assign(static_cast<size_t>(n) + 1, 0);
    for (const Group& e : g.groups_) {
        ++g.adj_off_[static_cast<size_t>(e.u) + 1];
        ++g.adj_off_[static_cast<size_t>(e.v) + 1];
    }
    for (size_t i = 1; i < g.adj_off_.size(); ++i) g.adj_off_[i] += g.adj_off_[i - 1];
    g.adj_.resize(static_cast<size_t>(g.adj_off_.back()));
    std::vector<int32_t> fill(g.adj_off_.begin(), g.adj_off_.end() - 1);
    for (GroupId id = 0; id < g.num_groups(); ++id) {
        const Group& e = g.groups_[static_cast<size_t>(id)];
        g.adj_[static_cast<size_t>(fill[static_cast<size_t>(e.u)]++)] = id;
        g.adj_[static_cast<size_t>(fill[static_cast<size_t>(e.v)]++)] = id;
    }
    return g;
}

TemporalGraph TemporalGraph::project(Tick lo, Tick hi) const {
    if (lo > hi) throw std::invalid_argument("project: lo > hi");
    TemporalGraph g;
    g.n_ = n_;
    g.t_max_ = t_max_;
    g.vertex_names_ = vertex_names_;
    g.raw_times_ = raw_times_;
    for (const Group& e : groups_) {
        const Tick* b = occ_.data() + e.occ_begin;
        const Tick* en = occ_.data() + e.occ_end;
        const Tick* from = std::lower_bound(b, en, lo);
        const Tick* to = std::upper_bound(from, en, hi);
        if (from == to) continue;
        Group kept = e;
        kept.occ_begin = static_cast<int32_t>(g.occ_.size());
        g.occ_.insert(g.occ_.end(), from, to);
        kept.occ_end = static_cast<int32_t>(g.occ_.size());
        g.groups_.push_back(kept);
    }
    g.adj_off_.assign(static_cast<size_t>(n_) + 1, 0);
    for (const Group& e : g.groups_) {
        ++g.adj_off_[static_cast<size_t>(e.u) + 1];
        ++g.adj_off_[static_cast<size_t>(e.v) + 1];
    }
    for (size_t i = 1; i < g.adj_off_.size(); ++i) g.adj_off_[i] += g.adj_off_[i - 1];
    g.adj_.resize(static_cast<size_t>(g.adj_off_.back()));
    std::vector<int32_t> fill(g.adj_off_.begin(), g.adj_off_.end() - 1);
    for (GroupId id = 0; id < g.num_groups(); ++id) {
        const Group& e = g.groups_[static_cast<size_t>(id)];
        g.adj_[static_cast<size_t>(fill[static_cast<size_t>(e.u)]++)] = id;
        g.adj_[static_cast<size_t>(fill[static_cast<size_t>(e.v)]++)] = id;
    }
    return g;
}

StaticGraph TemporalGraph::detemporalize() const {
    StaticGraph s;
    s.n = n_;
    s.edges.reserve(groups_.size());
    for (const Group& e : groups_) s.edges.emplace_back(e.u, e.v);
    s.degree.assign(static_cast<size_t>(n_), 0);
    for (VertexId v = 0; v < n_; ++v) {
        s.degree[static_cast<size_t>(v)] = static_cast<int32_t>(incident_groups(v).size());
    }
    return s;
}

GroupId TemporalGraph::find_group(VertexId u, VertexId v) const {
    if (u > v) std::swap(u, v);
    for (GroupId g : incident_groups(u)) {
        const Group& e = groups_[static_cast<size_t>(g)];
        if (e.u == u && e.v == v) return g;
    }
    return -1;
}

int64_t TemporalGraph::distinct_timestamps() const {
    if (!raw_times_.empty()) return static_cast<int64_t>(raw_times_.size());
    std::set<Tick> ts(occ_.begin(), occ_.end());
    return static_cast<int64_t>(ts.size());
}

std::vector<TemporalEdge> TemporalGraph::all_edges() const {
    std::vector<TemporalEdge> out;
    out.reserve(occ_.size());
    for (GroupId g = 0; g < num_groups(); ++g) {
        const Group& e = groups_[static_cast<size_t>(g)];
        for (Tick t : occurrences(g)) out.push_back({e.u, e.v, t});
    }
    std::sort(out.begin(), out.end(), edge_time_order);
    return out;
}

void TemporalGraph::serialize(std::ostream& out) const {
    for (const TemporalEdge& e : all_edges()) {
        out << original_vertex_id(e.u) << ' ' << original_vertex_id(e.v) << ' ' << raw_time(e.t)
            << '\n';
    }
}

bool TemporalGraph::operator==(const TemporalGraph& o) const {
    if (n_ != o.n_ || t_max_ != o.t_max_) return false;
    if (groups_.size() != o.groups_.size() || occ_ != o.occ_) return false;
    for (size_t i = 0; i < groups_.size(); ++i) {
        if (groups_[i].u != o.groups_[i].u || groups_[i].v != o.groups_[i].v ||
            groups_[i].occ_begin != o.groups_[i].occ_begin ||
            groups_[i].occ_end != o.groups_[i].occ_end) {
            return false;
        }
    }
    return vertex_names_ == o.vertex_names_ && raw_times_ == o.raw_times_;
}

}  // namespace tkc
