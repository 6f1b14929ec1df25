// Copyright 2026 the diskmatch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License is
// distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and limitations under the License.

#ifndef DISKMATCH_INTERSECTION_GRAPH_HPP
#define DISKMATCH_INTERSECTION_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diskmatch/matching.hpp"

namespace diskmatch {

/// Explicit undirected graph over vertex indices 0..n-1 with sorted
/// adjacency lists, no self-loops and no duplicate edges.
struct IntersectionGraph {
    int n = 0;
    std::vector<std::vector<int>> adj;
    std::size_t m = 0;

    static IntersectionGraph from_edges(int n, std::vector<std::pair<int, int>> edges) {
        IntersectionGraph g;
        g.n = n;
        g.adj.assign(n, {});
        for (auto& [u, v] : edges) {
            if (u == v) throw std::invalid_argument("IntersectionGraph: self-loop rejected");
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw std::out_of_range("IntersectionGraph: vertex out of range");
            if (u > v) std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        for (auto [u, v] : edges) {
            g.adj[u].push_back(v);
            g.adj[v].push_back(u);
        }
        for (auto& a : g.adj) std::sort(a.begin(), a.end());
        g.m = edges.size();
        return g;
    }

    bool has_edge(int u, int v) const {
        if (u < 0 || v < 0 || u >= n || v >= n || u == v) return false;
        const auto& a = adj[u];
        return std::binary_search(a.begin(), a.end(), v);
    }

    std::vector<std::pair<int, int>> edge_list() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(m);
        for (int u = 0; u < n; ++u)
            for (int v : adj[u])
                if (u < v) out.emplace_back(u, v);
        return out;
    }
};

inline bool is_valid_matching(const Matching& mt, const IntersectionGraph& g) {
    if (!is_vertex_disjoint(mt)) return false;
    for (auto [u, v] : mt.edges)
        if (!g.has_edge(u, v)) return false;
    return true;
}

/// Induced subgraph over `vertices` (local indices follow the given order).
inline IntersectionGraph induced_subgraph(const IntersectionGraph& g, const std::vector<int>& vertices) {
    std::vector<int> local(g.n, -1);
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i) local[vertices[i]] = i;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
        for (int w : g.adj[vertices[i]])
            if (local[w] > i) edges.emplace_back(i, local[w]);
    return IntersectionGraph::from_edges(static_cast<int>(vertices.size()), std::move(edges));
}

}  // namespace diskmatch

#endif  // DISKMATCH_INTERSECTION_GRAPH_HPP
