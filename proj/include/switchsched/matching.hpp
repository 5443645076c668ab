#pragma once

#include <vector>

namespace switchsched::matching {

// Bipartite multigraph; parallel edges are allowed and distinguished by
// position. `id` is caller payload (flow index) and never interpreted here
// beyond deterministic tie-breaking.
struct BipartiteMultigraph {
    int left = 0;
    int right = 0;
    struct Edge {
        int left = 0;
        int right = 0;
        long long id = 0;
    };
    std::vector<Edge> edges;

    int add_edge(int l, int r, long long id) {
        edges.push_back({l, r, id});
        return static_cast<int>(edges.size()) - 1;
    }
};

using Matching = std::vector<int>;  // edge indices, sorted

struct MatchingSet {
    std::vector<Matching> matchings;
};

// Maximum-cardinality matching (layered augmentation). Deterministic: edges
// are processed in (left, right, id) order.
Matching max_cardinality_matching(const BipartiteMultigraph& g);

// Maximum-weight matching, any cardinality; weights must be finite and
// nonnegative. Zero-weight edges may or may not appear in the result.
Matching max_weight_matching(const BipartiteMultigraph& g, const std::vector<double>& weight);

// Partitions the edges into exactly max-degree many matchings
// (alternating-path recoloring; bipartite graphs never need more).
MatchingSet edge_color_bipartite(const BipartiteMultigraph& g);

struct UnitExpansion {
    BipartiteMultigraph graph;       // same edge order as the input
    std::vector<int> left_origin;    // copy vertex -> original vertex
    std::vector<int> right_origin;
};

// Replaces vertex v by capacity(v) copies and assigns edges to copies
// round-robin in input order, so each copy ends with degree at most
// ceil(deg(v) / capacity(v)).
UnitExpansion expand_to_unit_graph(const BipartiteMultigraph& g,
                                   const std::vector<long long>& left_capacity,
                                   const std::vector<long long>& right_capacity);

}  // namespace switchsched::matching
