#include "tkc/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <unordered_set>

namespace tkc {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

TemporalGraph random_instance(uint64_t seed, const GenLimits& limits) {
    std::mt19937_64 rng(splitmix64(seed));
    auto draw = [&rng](int64_t lo, int64_t hi) {  // inclusive
        return lo + static_cast<int64_t>(rng() % static_cast<uint64_t>(hi - lo + 1));
    };

    int32_t n = static_cast<int32_t>(draw(3, limits.max_vertices));
    Tick t_max = static_cast<Tick>(draw(1, limits.max_t));
    // Edge probability in a band that leaves roughly half the instances with
    // a nonempty 2-core.
    double p = 0.25 + 0.30 * (static_cast<double>(rng() % 1000) / 1000.0);

    std::vector<TemporalEdge> edges;
    for (VertexId u = 0; u < n && static_cast<int32_t>(edges.size()) < limits.max_temporal_edges;
         ++u) {
        for (VertexId v = u + 1;
             v < n && static_cast<int32_t>(edges.size()) < limits.max_temporal_edges; ++v) {
            if (static_cast<double>(rng() % 1000000) / 1000000.0 >= p) continue;
            int occ = static_cast<int>(draw(1, 3));
            std::set<Tick> at;
            for (int i = 0; i < occ; ++i) at.insert(static_cast<Tick>(draw(0, t_max)));
            for (Tick t : at) {
                if (static_cast<int32_t>(edges.size()) >= limits.max_temporal_edges) break;
                edges.push_back({u, v, t});
            }
        }
    }
    return TemporalGraph::from_edges(n, std::move(edges), t_max);
}

int random_k(uint64_t seed, int lo, int hi) {
    std::mt19937_64 rng(splitmix64(seed ^ 0xabcdef1234567890ULL));
    return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

TemporalGraph collegemsg_standin() {
    constexpr int32_t kVertices = 1862;
    constexpr int64_t kTemporalEdges = 59835;
    constexpr Tick kTMax = 58910;

    std::mt19937_64 rng(0xC0113965ULL);
    // Skewed endpoint sampling: low ids act as hubs.
    auto vertex = [&rng]() {
        double r = static_cast<double>(rng() % (1ULL << 30)) / static_cast<double>(1ULL << 30);
        return static_cast<VertexId>(static_cast<double>(kVertices) * r * r);
    };
    auto key = [](VertexId u, VertexId v, Tick t) {
        return (static_cast<uint64_t>(static_cast<uint32_t>(u)) << 43) |
               (static_cast<uint64_t>(static_cast<uint32_t>(v)) << 32) |
               static_cast<uint64_t>(static_cast<uint32_t>(t));
    };

    std::vector<TemporalEdge> edges;
    edges.reserve(static_cast<size_t>(kTemporalEdges));
    std::unordered_set<uint64_t> seen;
    seen.reserve(static_cast<size_t>(kTemporalEdges) * 2);
    // One interaction per tick keeps every timestamp occupied, matching a
    // normalized message log.
    for (Tick t = 0; t <= kTMax; ++t) {
        VertexId u = vertex();
        VertexId v = vertex();
        while (v == u) v = vertex();
        if (u > v) std::swap(u, v);
        edges.push_back({u, v, t});
        seen.insert(key(u, v, t));
    }
    while (static_cast<int64_t>(edges.size()) < kTemporalEdges) {
        VertexId u = vertex();
        VertexId v = vertex();
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        Tick t = static_cast<Tick>(rng() % static_cast<uint64_t>(kTMax + 1));
        if (!seen.insert(key(u, v, t)).second) continue;
        edges.push_back({u, v, t});
    }
    return TemporalGraph::from_edges(kVertices, std::move(edges), kTMax);
}

}  // namespace tkc
