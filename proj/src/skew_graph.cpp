#include "ssmc/skew_graph.hpp"

#include <algorithm>
#include <queue>

namespace ssmc {

SkewGraph SkewGraph::build(
    int n_pairs, const std::vector<std::pair<Vertex, Vertex>>& arc_pairs) {
  if (n_pairs < 0) throw MalformedInputError("negative vertex pair count");
  SkewGraph g;
  g.n_pairs_ = n_pairs;
  g.tail_.reserve(2 * arc_pairs.size());
  g.head_.reserve(2 * arc_pairs.size());
  for (auto [u, v] : arc_pairs) {
    if (!g.valid_vertex(u) || !g.valid_vertex(v))
      throw MalformedInputError("arc endpoint out of range: (" +
                                std::to_string(u) + ", " + std::to_string(v) +
                                ")");
    // Requested arc and its conjugate, at indices 2i and 2i+1.
    g.tail_.push_back(u);
    g.head_.push_back(v);
    g.tail_.push_back(-v);
    g.head_.push_back(-u);
  }
  g.deleted_.assign(g.tail_.size(), 0);
  g.build_adjacency();
  g.validate();
  return g;
}

void SkewGraph::build_adjacency() {
  int n = vertex_count();
  int m = arc_count();
  out_start_.assign(n + 1, 0);
  in_start_.assign(n + 1, 0);
  for (ArcId a = 0; a < m; ++a) {
    out_start_[dense_index(tail_[a]) + 1]++;
    in_start_[dense_index(head_[a]) + 1]++;
  }
  for (int i = 0; i < n; ++i) {
    out_start_[i + 1] += out_start_[i];
    in_start_[i + 1] += in_start_[i];
  }
  out_arcs_.resize(m);
  in_arcs_.resize(m);
  std::vector<std::int32_t> opos(out_start_.begin(), out_start_.end() - 1);
  std::vector<std::int32_t> ipos(in_start_.begin(), in_start_.end() - 1);
  // Arcs scanned in ascending id, so every adjacency list is ascending.
  for (ArcId a = 0; a < m; ++a) {
    out_arcs_[opos[dense_index(tail_[a])]++] = a;
    in_arcs_[ipos[dense_index(head_[a])]++] = a;
  }
}

void SkewGraph::mask_restore(std::vector<std::uint8_t> saved) {
  internal_check(saved.size() == deleted_.size(), "mask size mismatch");
  deleted_ = std::move(saved);
}

void SkewGraph::validate() const {
  int m = arc_count();
  internal_check(m % 2 == 0, "arc count must be even");
  for (ArcId a = 0; a < m; ++a) {
    ArcId c = conjugate_arc(a);
    internal_check(conjugate_arc(c) == a && c != a, "arc conjugation broken");
    internal_check(tail_[c] == -head_[a] && head_[c] == -tail_[a],
                   "arc endpoint symmetry broken");
    internal_check(deleted_[a] == deleted_[c], "deletion mask not self-conjugate");
    internal_check(valid_vertex(tail_[a]) && valid_vertex(head_[a]),
                   "arc endpoint out of range");
  }
}

namespace {

std::vector<std::uint8_t> arc_bitmap(const SkewGraph& g, const ArcSet& arcs) {
  std::vector<std::uint8_t> bits(g.arc_count(), 0);
  for (ArcId a : arcs) bits[a] = 1;
  return bits;
}

VertexSet bitmap_to_set(const std::vector<std::uint8_t>& visited) {
  VertexSet out;
  for (int i = 0; i < static_cast<int>(visited.size()); ++i)
    if (visited[i]) out.push_back(vertex_of_dense(i));
  return out;
}

}  // namespace

VertexSet reachable(const SkewGraph& g, const VertexSet& from,
                    const ArcSet& extra_deleted) {
  std::vector<std::uint8_t> visited(g.vertex_count(), 0);
  std::vector<std::uint8_t> blocked =
      extra_deleted.empty() ? std::vector<std::uint8_t>()
                            : arc_bitmap(g, extra_deleted);
  std::queue<Vertex> q;
  for (Vertex v : from) {
    int i = dense_index(v);
    if (!visited[i]) {
      visited[i] = 1;
      q.push(v);
    }
  }
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop();
    for (ArcId a : g.out_arcs(u)) {
      if (g.is_deleted(a)) continue;
      if (!blocked.empty() && blocked[a]) continue;
      int h = dense_index(g.head(a));
      if (!visited[h]) {
        visited[h] = 1;
        q.push(g.head(a));
      }
    }
  }
  return bitmap_to_set(visited);
}

VertexSet co_reachable(const SkewGraph& g, const VertexSet& to,
                       const ArcSet& extra_deleted) {
  std::vector<std::uint8_t> visited(g.vertex_count(), 0);
  std::vector<std::uint8_t> blocked =
      extra_deleted.empty() ? std::vector<std::uint8_t>()
                            : arc_bitmap(g, extra_deleted);
  std::queue<Vertex> q;
  for (Vertex v : to) {
    int i = dense_index(v);
    if (!visited[i]) {
      visited[i] = 1;
      q.push(v);
    }
  }
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop();
    for (ArcId a : g.in_arcs(u)) {
      if (g.is_deleted(a)) continue;
      if (!blocked.empty() && blocked[a]) continue;
      int t = dense_index(g.tail(a));
      if (!visited[t]) {
        visited[t] = 1;
        q.push(g.tail(a));
      }
    }
  }
  return bitmap_to_set(visited);
}

// Iterative Tarjan. Component labels are assigned in completion order, so
// they are a reverse topological numbering of the condensation.
std::vector<std::int32_t> scc_labels(const SkewGraph& g) {
  int n = g.vertex_count();
  std::vector<std::int32_t> labels(n, -1), index(n, -1), lowlink(n, 0);
  std::vector<std::uint8_t> on_stack(n, 0);
  std::vector<std::int32_t> scc_stack;
  int next_index = 0, next_label = 0;

  struct Frame {
    int v;
    size_t arc_pos;
  };
  std::vector<Frame> stack;

  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    stack.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    scc_stack.push_back(root);
    on_stack[root] = 1;
    while (!stack.empty()) {
      Frame& f = stack.back();
      auto arcs = g.out_arcs(vertex_of_dense(f.v));
      bool descended = false;
      while (f.arc_pos < arcs.size()) {
        ArcId a = arcs[f.arc_pos++];
        if (g.is_deleted(a)) continue;
        int w = dense_index(g.head(a));
        if (index[w] == -1) {
          index[w] = lowlink[w] = next_index++;
          scc_stack.push_back(w);
          on_stack[w] = 1;
          stack.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) lowlink[f.v] = std::min(lowlink[f.v], index[w]);
      }
      if (descended) continue;
      int v = f.v;
      stack.pop_back();
      if (!stack.empty())
        lowlink[stack.back().v] = std::min(lowlink[stack.back().v], lowlink[v]);
      if (lowlink[v] == index[v]) {
        while (true) {
          int w = scc_stack.back();
          scc_stack.pop_back();
          on_stack[w] = 0;
          labels[w] = next_label;
          if (w == v) break;
        }
        ++next_label;
      }
    }
  }
  return labels;
}

SetSymmetry set_symmetry(const VertexSet& s) {
  SetSymmetry r{true, true};
  for (Vertex v : s) {
    if (set_contains(s, -v))
      r.regular = false;
    else
      r.self_conjugate = false;
  }
  return r;
}

SetSymmetry arc_set_symmetry(const ArcSet& s) {
  SetSymmetry r{true, true};
  for (ArcId a : s) {
    if (arc_set_contains(s, conjugate_arc(a)))
      r.regular = false;
    else
      r.self_conjugate = false;
  }
  return r;
}

void normalize(VertexSet& s) {
  std::sort(s.begin(), s.end(), [](Vertex a, Vertex b) {
    return dense_index(a) < dense_index(b);
  });
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

bool set_contains(const VertexSet& s, Vertex v) {
  int key = dense_index(v);
  auto it = std::lower_bound(s.begin(), s.end(), key, [](Vertex a, int k) {
    return dense_index(a) < k;
  });
  return it != s.end() && *it == v;
}

VertexSet conjugate_set(const VertexSet& s) {
  VertexSet out;
  out.reserve(s.size());
  for (Vertex v : s) out.push_back(-v);
  normalize(out);
  return out;
}

ArcSet conjugate_arc_set(const ArcSet& s) {
  ArcSet out;
  out.reserve(s.size());
  for (ArcId a : s) out.push_back(conjugate_arc(a));
  std::sort(out.begin(), out.end());
  return out;
}

bool arc_set_contains(const ArcSet& s, ArcId a) {
  return std::binary_search(s.begin(), s.end(), a);
}

ArcSet out_cut(const SkewGraph& g, const VertexSet& s) {
  std::vector<std::uint8_t> in_set(g.vertex_count(), 0);
  for (Vertex v : s) in_set[dense_index(v)] = 1;
  ArcSet cut;
  for (Vertex v : s) {
    for (ArcId a : g.out_arcs(v)) {
      if (g.is_deleted(a)) continue;
      if (!in_set[dense_index(g.head(a))]) cut.push_back(a);
    }
  }
  std::sort(cut.begin(), cut.end());
  return cut;
}

}  // namespace ssmc
