// Copyright 2026 the diskmatch authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License is
// distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and limitations under the License.

#ifndef DISKMATCH_MATCH_ENGINE_HPP
#define DISKMATCH_MATCH_ENGINE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "diskmatch/intersection_graph.hpp"
#include "diskmatch/matching.hpp"

namespace diskmatch {

/// Odd-length alternating path whose two endpoints are free.
struct AugmentingPath {
    std::vector<int> vertices;

    int length() const { return static_cast<int>(vertices.size()) - 1; }
};

inline bool is_augmenting_path(const AugmentingPath& p, const IntersectionGraph& g, const Matching& m) {
    const auto& vs = p.vertices;
    if (vs.size() < 2 || vs.size() % 2 != 0) return false;
    auto mate = m.to_mate(g.n);
    if (mate[vs.front()] != -1 || mate[vs.back()] != -1) return false;
    std::vector<char> seen(g.n, 0);
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
        if (seen[vs[i]]) return false;
        seen[vs[i]] = 1;
        if (!g.has_edge(vs[i], vs[i + 1])) return false;
        const bool matched_edge = (mate[vs[i]] == vs[i + 1]);
        if (matched_edge != (i % 2 == 1)) return false;  // alternate starting unmatched
    }
    return !seen[vs.back()];
}

inline void apply_augmenting_path(std::vector<int>& mate, const std::vector<int>& path) {
    for (std::size_t i = 0; i + 1 < path.size(); i += 2) {
        mate[path[i]] = path[i + 1];
        mate[path[i + 1]] = path[i];
    }
}

/// Maximal matching: each free vertex in index order grabs its first free
/// neighbor.
inline Matching greedy_matching_on_graph(const IntersectionGraph& g) {
    std::vector<int> mate(g.n, -1);
    for (int u = 0; u < g.n; ++u) {
        if (mate[u] != -1) continue;
        for (int v : g.adj[u]) {
            if (mate[v] == -1) {
                mate[u] = v;
                mate[v] = u;
                break;
            }
        }
    }
    return Matching::from_mate(mate);
}

namespace detail {

/// Alternating-tree search with blossom contraction (Edmonds). Scratch
/// arrays are version-stamped so a search costs only what it touches;
/// bases live in a union-find that is reset the same way.
class BlossomSearch {
public:
    explicit BlossomSearch(const IntersectionGraph& g)
        : g_(g),
          n_(g.n),
          stamp_(g.n, 0),
          dsu_(g.n, 0),
          parent_(g.n, -1),
          even_(g.n, 0),
          dist_(g.n, 0),
          lca_mark_(g.n, 0) {}

    /// Grows an alternating tree from `root` and returns the vertex sequence
    /// of an augmenting path (root last), or empty if none was reached.
    /// Tree growth stops at depth `maxlen`; blocked vertices are invisible.
    std::vector<int> search(int root, int maxlen, const std::vector<int>& mate,
                            const std::vector<char>* blocked = nullptr) {
        ++cur_;
        depth_limited_ = false;
        touched_blocked_ = false;
        queue_.clear();
        ensure(root);
        even_[root] = 1;
        dist_[root] = 0;
        queue_.push_back(root);

        for (std::size_t head = 0; head < queue_.size(); ++head) {
            const int v = queue_[head];
            if (dist_[v] + 1 > maxlen) {
                depth_limited_ = true;
                continue;
            }
            for (int to : g_.adj[v]) {
                if (blocked && (*blocked)[to]) {
                    touched_blocked_ = true;
                    continue;
                }
                ensure(to);
                if (mate[v] == to || find(v) == find(to)) continue;
                if (even_[to]) {
                    contract(v, to, mate);
                } else if (parent_[to] == -1) {
                    parent_[to] = v;
                    if (mate[to] == -1) return extract_path(to, mate);
                    const int w = mate[to];
                    ensure(w);
                    even_[w] = 1;
                    dist_[w] = dist_[v] + 2;
                    queue_.push_back(w);
                }
            }
        }
        return {};
    }

    bool depth_limited() const { return depth_limited_; }
    bool touched_blocked() const { return touched_blocked_; }

private:
    void ensure(int v) {
        if (stamp_[v] != cur_) {
            stamp_[v] = cur_;
            dsu_[v] = v;
            parent_[v] = -1;
            even_[v] = 0;
            dist_[v] = 0;
        }
    }

    int find(int v) {
        ensure(v);
        while (dsu_[v] != v) {
            dsu_[v] = dsu_[dsu_[v]];
            v = dsu_[v];
        }
        return v;
    }

    int lowest_common_base(int a, int b, const std::vector<int>& mate) {
        ++lca_cur_;
        int x = find(a);
        while (true) {
            lca_mark_[x] = lca_cur_;
            if (mate[x] == -1) break;  // reached the tree root
            x = find(parent_[mate[x]]);
        }
        int y = find(b);
        while (lca_mark_[y] != lca_cur_) y = find(parent_[mate[y]]);
        return y;
    }

    // Absorbs the two tree paths of the discovered odd cycle into one base.
    // Bridge pointers on the even side make the augmenting walk below able
    // to thread in and out of the contracted cycle.
    void contract(int v, int to, const std::vector<int>& mate) {
        const int b = lowest_common_base(v, to, mate);
        mark_path(v, b, to, mate);
        mark_path(to, b, v, mate);
    }

    void mark_path(int v, int b, int child, const std::vector<int>& mate) {
        while (find(v) != b) {
            const int o = mate[v];
            parent_[v] = child;
            dsu_[find(v)] = b;
            dsu_[find(o)] = b;
            if (!even_[o]) {
                even_[o] = 1;
                dist_[o] = dist_[b];
                queue_.push_back(o);
            }
            child = o;
            v = parent_[o];
        }
    }

    // Walks parent/mate pointers from the free endpoint back to the root.
    std::vector<int> extract_path(int endpoint, const std::vector<int>& mate) const {
        std::vector<int> path;
        int x = endpoint;
        while (true) {
            const int px = parent_[x];
            path.push_back(x);
            path.push_back(px);
            const int nxt = mate[px];
            if (nxt == -1) break;
            x = nxt;
        }
        return path;
    }

    const IntersectionGraph& g_;
    int n_;
    std::uint64_t cur_ = 0;
    std::uint64_t lca_cur_ = 0;
    std::vector<std::uint64_t> stamp_;
    std::vector<int> dsu_;
    std::vector<int> parent_;
    std::vector<char> even_;
    std::vector<int> dist_;
    std::vector<std::uint64_t> lca_mark_;
    std::vector<int> queue_;
    bool depth_limited_ = false;
    bool touched_blocked_ = false;
};

// Exhaustive search for a simple alternating path of at most `maxlen` edges
// from `root`. Exponential in maxlen, so callers keep the bound small; the
// matched step is forced, so branching happens only on unmatched edges.
class BoundedPathEnumerator {
public:
    BoundedPathEnumerator(const IntersectionGraph& g, const std::vector<int>& mate,
                          const std::vector<char>* blocked)
        : g_(g), mate_(mate), blocked_(blocked), on_path_(g.n, 0) {}

    std::vector<int> from(int root, int maxlen) {
        maxlen_ = maxlen;
        path_.clear();
        path_.push_back(root);
        on_path_[root] = 1;
        const bool ok = extend(root, 0);
        on_path_[root] = 0;
        if (!ok) path_.clear();
        return path_;
    }

private:
    bool extend(int v, int used_edges) {
        if (used_edges + 1 > maxlen_) return false;
        for (int to : g_.adj[v]) {
            if (on_path_[to] || (blocked_ && (*blocked_)[to])) continue;
            if (mate_[to] == -1) {
                path_.push_back(to);
                return true;
            }
            const int w = mate_[to];
            if (on_path_[w] || (blocked_ && (*blocked_)[w])) continue;
            if (used_edges + 3 > maxlen_) continue;
            on_path_[to] = on_path_[w] = 1;
            path_.push_back(to);
            path_.push_back(w);
            if (extend(w, used_edges + 2)) return true;
            path_.pop_back();
            path_.pop_back();
            on_path_[to] = on_path_[w] = 0;
        }
        return false;
    }

    const IntersectionGraph& g_;
    const std::vector<int>& mate_;
    const std::vector<char>* blocked_;
    std::vector<char> on_path_;
    std::vector<int> path_;
    int maxlen_ = 0;
};

// Blossom detours can hand back a path longer than the tree depth bound;
// below this limit a rejected path is retried with the exact enumerator.
inline constexpr int kEnumeratorFallbackLen = 12;

}  // namespace detail

/// True iff some augmenting path of at most `maxlen` edges exists.
/// Decided by exhaustive enumeration; keep `maxlen` small.
inline bool has_augmenting_path_at_most(const IntersectionGraph& g, const Matching& m, int maxlen) {
    auto mate = m.to_mate(g.n);
    detail::BoundedPathEnumerator enumerator(g, mate, nullptr);
    for (int root = 0; root < g.n; ++root) {
        if (mate[root] != -1) continue;
        if (!enumerator.from(root, maxlen).empty()) return true;
    }
    return false;
}

/// One sweep over the free vertices in index order, collecting a maximal set
/// of vertex-disjoint augmenting paths of length at most `maxlen` each.
/// The input matching is not modified; callers augment and re-run until the
/// result is empty to clear out every path of that length.
inline std::vector<AugmentingPath> find_disjoint_augmenting_paths(const IntersectionGraph& g,
                                                                  const Matching& m, int maxlen) {
    if (maxlen < 1) throw std::invalid_argument("find_disjoint_augmenting_paths: maxlen must be >= 1");
    auto mate = m.to_mate(g.n);
    std::vector<char> blocked(g.n, 0);
    detail::BlossomSearch search(g);
    std::vector<AugmentingPath> out;
    for (int root = 0; root < g.n; ++root) {
        if (mate[root] != -1 || blocked[root]) continue;
        auto path = search.search(root, maxlen, mate, &blocked);
        if (!path.empty() && static_cast<int>(path.size()) - 1 > maxlen) {
            path.clear();
            if (maxlen <= detail::kEnumeratorFallbackLen) {
                detail::BoundedPathEnumerator enumerator(g, mate, &blocked);
                path = enumerator.from(root, maxlen);
            }
        }
        if (path.empty()) continue;
        for (int v : path) blocked[v] = 1;
        out.push_back(AugmentingPath{std::move(path)});
    }
    return out;
}

/// Maximum-cardinality matching (Edmonds). One augmentation attempt per free
/// vertex suffices: a vertex with no augmenting path stays exposed under any
/// later augmentations.
inline Matching exact_maximum_matching(const IntersectionGraph& g) {
    auto mate = greedy_matching_on_graph(g).to_mate(g.n);
    detail::BlossomSearch search(g);
    const int unbounded = g.n + 1;
    for (int root = 0; root < g.n; ++root) {
        if (mate[root] != -1) continue;
        auto path = search.search(root, unbounded, mate);
        if (!path.empty()) apply_augmenting_path(mate, path);
    }
    return Matching::from_mate(mate);
}

/// (1 - eps)-approximate maximum matching: clears out augmenting paths of
/// odd length k = 1, 3, ... up to ceil(4/eps). Once no path of length at
/// most ceil(4/eps) remains, the matching is (1 - eps)-optimal.
///
/// A root whose search exhausts its alternating reachable set without being
/// cut off by the depth bound has no augmenting path at any length, and a
/// vertex with no augmenting path stays exposed under later augmentations,
/// so such roots are skipped for the rest of the ladder.
inline Matching approx_matching_eps(const IntersectionGraph& g, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("approx_matching_eps: eps must be in (0,1)");
    auto mate = greedy_matching_on_graph(g).to_mate(g.n);
    detail::BlossomSearch search(g);
    const long long k_target = static_cast<long long>(std::ceil(4.0 / eps));
    const int k_max = static_cast<int>(std::min<long long>(k_target, g.n + 1));
    std::vector<char> hopeless(g.n, 0);

    for (int k = 1; k <= k_max; k += 2) {
        while (true) {
            int found = 0;
            int open_roots = 0;
            bool limited = false;
            for (int root = 0; root < g.n; ++root) {
                if (mate[root] != -1 || hopeless[root]) continue;
                ++open_roots;
                auto path = search.search(root, k, mate);
                if (path.empty()) {
                    if (search.depth_limited()) {
                        limited = true;
                    } else {
                        hopeless[root] = 1;
                    }
                    continue;
                }
                if (static_cast<int>(path.size()) - 1 > k) {
                    limited = true;  // a longer path exists; optimality is not certified
                    continue;
                }
                apply_augmenting_path(mate, path);
                ++found;
            }
            if (open_roots == 0 || (found == 0 && !limited)) return Matching::from_mate(mate);
            if (found == 0) break;
        }
    }
    return Matching::from_mate(mate);
}

/// Outcome of one Hopcroft-Karp phase.
struct HkPhase {
    Matching matching;
    int shortest_length = -1;  // -1 when no augmenting path exists
    int augmented = 0;
};

/// One Hopcroft-Karp phase: augments along a maximal set of vertex-disjoint
/// shortest augmenting paths. `side` labels each vertex 0 or 1; edges must
/// cross sides.
inline HkPhase hopcroft_karp_phase(const IntersectionGraph& g, const std::vector<int>& side,
                                   const Matching& m) {
    if (static_cast<int>(side.size()) != g.n)
        throw std::invalid_argument("hopcroft_karp_phase: side label per vertex required");
    for (int v = 0; v < g.n; ++v) {
        if (side[v] != 0 && side[v] != 1) throw std::invalid_argument("hopcroft_karp_phase: labels must be 0/1");
        for (int w : g.adj[v])
            if (side[w] == side[v]) throw std::invalid_argument("hopcroft_karp_phase: graph is not bipartite for these labels");
    }

    auto mate = m.to_mate(g.n);
    constexpr int kInf = std::numeric_limits<int>::max();
    std::vector<int> dist(g.n, kInf);
    std::vector<int> queue;
    for (int v = 0; v < g.n; ++v) {
        if (side[v] == 0 && mate[v] == -1) {
            dist[v] = 0;
            queue.push_back(v);
        }
    }
    int shortest = kInf;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int u = queue[head];
        if (2 * dist[u] + 1 >= shortest) continue;
        for (int v : g.adj[u]) {
            if (mate[v] == -1) {
                shortest = std::min(shortest, 2 * dist[u] + 1);
            } else if (dist[mate[v]] == kInf) {
                dist[mate[v]] = dist[u] + 1;
                queue.push_back(mate[v]);
            }
        }
    }
    HkPhase out;
    if (shortest == kInf) {
        out.matching = m;
        return out;
    }
    out.shortest_length = shortest;

    std::vector<char> visited(g.n, 0);
    std::vector<std::size_t> arc(g.n, 0);
    std::vector<int> via(g.n, -1);
    // Iterative layered DFS; only paths of exactly the shortest length are taken.
    auto try_augment = [&](int start) -> bool {
        std::vector<int> stack{start};
        while (!stack.empty()) {
            const int u = stack.back();
            bool descended = false;
            for (std::size_t& idx = arc[u]; idx < g.adj[u].size(); ++idx) {
                const int v = g.adj[u][idx];
                if (visited[v]) continue;
                if (mate[v] == -1) {
                    if (2 * dist[u] + 1 != shortest) continue;
                    visited[v] = 1;
                    int a = u, b = v;  // flip along the DFS stack
                    while (true) {
                        const int prev = mate[a];
                        mate[a] = b;
                        mate[b] = a;
                        if (via[a] == -1) break;
                        b = prev;
                        a = via[a];
                    }
                    return true;
                }
                const int w = mate[v];
                if (dist[w] == dist[u] + 1 && !visited[w]) {
                    visited[v] = visited[w] = 1;
                    via[w] = u;
                    stack.push_back(w);
                    descended = true;
                    ++idx;
                    break;
                }
            }
            if (!descended) stack.pop_back();
        }
        return false;
    };
    for (int v = 0; v < g.n; ++v)
        if (side[v] == 0 && mate[v] == -1 && try_augment(v)) ++out.augmented;

    out.matching = Matching::from_mate(mate);
    return out;
}

}  // namespace diskmatch

#endif  // DISKMATCH_MATCH_ENGINE_HPP
