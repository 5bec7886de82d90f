#pragma once

#include <algorithm>
#include <queue>
#include <utility>
#include <vector>

#include "ssmc/rng.hpp"
#include "ssmc/skew_graph.hpp"

// Reference machinery for the test suites: plain BFS/flow/enumeration code
// that shares nothing with the separator implementation it checks.

namespace ssmc::test {

inline SkewGraph random_graph(SplitMix64& rng, int pairs, int arc_pairs) {
  std::vector<std::pair<Vertex, Vertex>> aps;
  auto rv = [&] { return vertex_of_dense(static_cast<int>(rng.below(2 * pairs))); };
  for (int i = 0; i < arc_pairs; ++i) aps.push_back({rv(), rv()});
  return SkewGraph::build(pairs, aps);
}

// Nonempty regular vertex set, or empty when the dice never cooperate.
inline VertexSet random_regular_set(SplitMix64& rng, int pairs, int max_size) {
  VertexSet s;
  int want = 1 + static_cast<int>(rng.below(max_size));
  for (int tries = 0; tries < 50 && static_cast<int>(s.size()) < want; ++tries) {
    Vertex v = vertex_of_dense(static_cast<int>(rng.below(2 * pairs)));
    if (!set_contains(s, v) && !set_contains(s, -v)) {
      s.push_back(v);
      normalize(s);
    }
  }
  return s;
}

// True iff some vertex of `to` is reachable from `from` with the masked
// arcs and `removed` dropped.
inline bool bf_connects(const SkewGraph& g, const VertexSet& from,
                        const VertexSet& to, const std::vector<char>& removed) {
  std::vector<char> target(g.vertex_count(), 0), seen(g.vertex_count(), 0);
  for (Vertex v : to) target[dense_index(v)] = 1;
  std::queue<Vertex> q;
  for (Vertex v : from) {
    if (target[dense_index(v)]) return true;
    if (!seen[dense_index(v)]) {
      seen[dense_index(v)] = 1;
      q.push(v);
    }
  }
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop();
    for (ArcId a : g.out_arcs(u)) {
      if (g.is_deleted(a) || removed[a]) continue;
      int h = dense_index(g.head(a));
      if (target[h]) return true;
      if (!seen[h]) {
        seen[h] = 1;
        q.push(g.head(a));
      }
    }
  }
  return false;
}

inline bool bf_separates(const SkewGraph& g, const VertexSet& L,
                         const ArcSet& cut) {
  std::vector<char> removed(g.arc_count(), 0);
  for (ArcId a : cut) removed[a] = 1;
  return !bf_connects(g, L, conjugate_set(L), removed);
}

// Unit-capacity max flow from L to L' on an explicit residual copy.
inline int bf_max_flow(const SkewGraph& g, const VertexSet& X,
                       const VertexSet& Y) {
  int n = g.vertex_count();
  int s = n, t = n + 1;
  std::vector<int> tail, head, cap;
  auto add = [&](int u, int v, int c) {
    tail.push_back(u);
    head.push_back(v);
    cap.push_back(c);
  };
  for (ArcId a = 0; a < g.arc_count(); ++a)
    if (!g.is_deleted(a))
      add(dense_index(g.tail(a)), dense_index(g.head(a)), 1);
  int inf = g.arc_count() + 1;
  for (Vertex v : X) add(s, dense_index(v), inf);
  for (Vertex v : Y) add(dense_index(v), t, inf);

  std::vector<int> flow(tail.size(), 0);
  int value = 0;
  while (true) {
    std::vector<int> par(n + 2, -1);
    std::vector<char> back(tail.size(), 0), seen(n + 2, 0);
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty() && !seen[t]) {
      int u = q.front();
      q.pop();
      for (size_t a = 0; a < tail.size(); ++a) {
        if (tail[a] == u && flow[a] < cap[a] && !seen[head[a]]) {
          seen[head[a]] = 1;
          par[head[a]] = static_cast<int>(a);
          back[a] = 0;
          q.push(head[a]);
        }
        if (head[a] == u && flow[a] > 0 && !seen[tail[a]]) {
          seen[tail[a]] = 1;
          par[tail[a]] = static_cast<int>(a);
          back[a] = 1;
          q.push(tail[a]);
        }
      }
    }
    if (!seen[t]) break;
    for (int v = t; v != s;) {
      int a = par[v];
      if (back[a]) {
        flow[a]--;
        v = head[a];
      } else {
        flow[a]++;
        v = tail[a];
      }
    }
    ++value;
  }
  return value;
}

inline int bf_lambda(const SkewGraph& g, const VertexSet& L) {
  return bf_max_flow(g, L, conjugate_set(L));
}

// Arcs that can appear in a minimal L-L' separator: on some live L-L' path.
inline ArcSet separator_candidates(const SkewGraph& g, const VertexSet& L) {
  std::vector<char> none(g.arc_count(), 0);
  VertexSet from_l = reachable(g, L);
  VertexSet to_lc = co_reachable(g, conjugate_set(L));
  ArcSet out;
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    if (g.is_deleted(a)) continue;
    if (set_contains(from_l, g.tail(a)) && set_contains(to_lc, g.head(a)))
      out.push_back(a);
  }
  return out;
}

// Every minimum L-L' separator, by exhaustive combination search.
inline std::vector<ArcSet> enumerate_min_separators(const SkewGraph& g,
                                                    const VertexSet& L,
                                                    int lambda) {
  std::vector<ArcSet> found;
  if (lambda == 0) return found;
  ArcSet cand = separator_candidates(g, L);
  int n = static_cast<int>(cand.size());
  if (lambda > n) return found;
  std::vector<int> comb(lambda);
  for (int i = 0; i < lambda; ++i) comb[i] = i;
  std::vector<char> removed(g.arc_count(), 0);
  while (true) {
    std::fill(removed.begin(), removed.end(), 0);
    ArcSet cut;
    for (int i : comb) {
      removed[cand[i]] = 1;
      cut.push_back(cand[i]);
    }
    if (!bf_connects(g, L, conjugate_set(L), removed)) found.push_back(cut);
    int i = lambda - 1;
    while (i >= 0 && comb[i] == n - lambda + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < lambda; ++j) comb[j] = comb[j - 1] + 1;
  }
  return found;
}

}  // namespace ssmc::test
