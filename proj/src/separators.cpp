#include "ssmc/separators.hpp"

#include <algorithm>
#include <deque>
#include <queue>

namespace ssmc {

namespace {

// Flow network over the undeleted arcs plus an implicit super source s and
// super sink t. Gadget arcs carry capacity cap+1 so they can never saturate
// while the flow of interest is at most cap.
struct FlowNet {
  int n_nodes = 0;
  int s = 0, t = 0;
  std::vector<std::int32_t> tail, head, cap, flow;
  std::vector<ArcId> orig;  // graph arc id, -1 for gadget arcs
  std::vector<std::int32_t> out_start, out_list, in_start, in_list;

  FlowNet(const SkewGraph& g, const VertexSet& L, int gadget_cap) {
    int n = g.vertex_count();
    n_nodes = n + 2;
    s = n;
    t = n + 1;
    int m = g.arc_count();
    for (ArcId a = 0; a < m; ++a) {
      if (g.is_deleted(a)) continue;
      add(dense_index(g.tail(a)), dense_index(g.head(a)), 1, a);
    }
    for (Vertex u : L) add(s, dense_index(u), gadget_cap, -1);
    for (Vertex u : L) add(dense_index(-u), t, gadget_cap, -1);
    build_adjacency();
  }

  void add(int u, int v, int c, ArcId a) {
    tail.push_back(u);
    head.push_back(v);
    cap.push_back(c);
    flow.push_back(0);
    orig.push_back(a);
  }

  void build_adjacency() {
    int m = static_cast<int>(tail.size());
    out_start.assign(n_nodes + 1, 0);
    in_start.assign(n_nodes + 1, 0);
    for (int a = 0; a < m; ++a) {
      out_start[tail[a] + 1]++;
      in_start[head[a] + 1]++;
    }
    for (int i = 0; i < n_nodes; ++i) {
      out_start[i + 1] += out_start[i];
      in_start[i + 1] += in_start[i];
    }
    out_list.resize(m);
    in_list.resize(m);
    auto opos = std::vector<std::int32_t>(out_start.begin(), out_start.end() - 1);
    auto ipos = std::vector<std::int32_t>(in_start.begin(), in_start.end() - 1);
    for (int a = 0; a < m; ++a) {
      out_list[opos[tail[a]]++] = a;
      in_list[ipos[head[a]]++] = a;
    }
  }

  // One augmentation: BFS over the residual network. Returns false when t
  // is unreachable. Unit real arcs make every augmentation worth 1.
  bool augment() {
    std::vector<std::int32_t> parent_arc(n_nodes, -1);
    std::vector<std::uint8_t> parent_back(n_nodes, 0), seen(n_nodes, 0);
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty() && !seen[t]) {
      int u = q.front();
      q.pop();
      for (int i = out_start[u]; i < out_start[u + 1]; ++i) {
        int a = out_list[i];
        int v = head[a];
        if (!seen[v] && flow[a] < cap[a]) {
          seen[v] = 1;
          parent_arc[v] = a;
          parent_back[v] = 0;
          q.push(v);
        }
      }
      for (int i = in_start[u]; i < in_start[u + 1]; ++i) {
        int a = in_list[i];
        int v = tail[a];
        if (!seen[v] && flow[a] > 0) {
          seen[v] = 1;
          parent_arc[v] = a;
          parent_back[v] = 1;
          q.push(v);
        }
      }
    }
    if (!seen[t]) return false;
    for (int v = t; v != s;) {
      int a = parent_arc[v];
      if (parent_back[v]) {
        flow[a]--;
        v = head[a];
      } else {
        flow[a]++;
        v = tail[a];
      }
    }
    return true;
  }

  // Runs at most `limit` augmentations; returns the flow value reached.
  int max_flow(int limit) {
    int value = 0;
    while (value < limit && augment()) ++value;
    return value;
  }

  std::vector<std::uint8_t> residual_reachable() const {
    std::vector<std::uint8_t> seen(n_nodes, 0);
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int i = out_start[u]; i < out_start[u + 1]; ++i) {
        int a = out_list[i];
        if (flow[a] < cap[a] && !seen[head[a]]) {
          seen[head[a]] = 1;
          q.push(head[a]);
        }
      }
      for (int i = in_start[u]; i < in_start[u + 1]; ++i) {
        int a = in_list[i];
        if (flow[a] > 0 && !seen[tail[a]]) {
          seen[tail[a]] = 1;
          q.push(tail[a]);
        }
      }
    }
    return seen;
  }

  ArcSet cut_arcs_from(const std::vector<std::uint8_t>& source_side) const {
    ArcSet cut;
    for (size_t a = 0; a < tail.size(); ++a) {
      if (orig[a] < 0) continue;
      if (source_side[tail[a]] && !source_side[head[a]])
        cut.push_back(orig[a]);
    }
    std::sort(cut.begin(), cut.end());
    return cut;
  }

  // Strongly connected components of the residual network, numbered so that
  // arcs of the condensation go from lower to higher index.
  std::vector<std::int32_t> residual_scc_order() const {
    std::vector<std::int32_t> labels(n_nodes, -1), index(n_nodes, -1),
        lowlink(n_nodes, 0);
    std::vector<std::uint8_t> on_stack(n_nodes, 0);
    std::vector<std::int32_t> scc_stack;
    int next_index = 0, next_label = 0;

    struct Frame {
      int v;
      int phase;  // 0 = out arcs, 1 = in arcs
      int pos;
    };
    std::vector<Frame> stack;

    auto residual_next = [&](Frame& f) -> int {
      while (f.phase == 0) {
        if (f.pos >= out_start[f.v + 1] - out_start[f.v]) {
          f.phase = 1;
          f.pos = 0;
          break;
        }
        int a = out_list[out_start[f.v] + f.pos++];
        if (flow[a] < cap[a]) return head[a];
      }
      while (f.pos < in_start[f.v + 1] - in_start[f.v]) {
        int a = in_list[in_start[f.v] + f.pos++];
        if (flow[a] > 0) return tail[a];
      }
      return -1;
    };

    for (int root = 0; root < n_nodes; ++root) {
      if (index[root] != -1) continue;
      stack.push_back({root, 0, 0});
      index[root] = lowlink[root] = next_index++;
      scc_stack.push_back(root);
      on_stack[root] = 1;
      while (!stack.empty()) {
        Frame& f = stack.back();
        int w = residual_next(f);
        if (w >= 0) {
          if (index[w] == -1) {
            index[w] = lowlink[w] = next_index++;
            scc_stack.push_back(w);
            on_stack[w] = 1;
            stack.push_back({w, 0, 0});
          } else if (on_stack[w]) {
            lowlink[f.v] = std::min(lowlink[f.v], index[w]);
          }
          continue;
        }
        int v = f.v;
        stack.pop_back();
        if (!stack.empty())
          lowlink[stack.back().v] =
              std::min(lowlink[stack.back().v], lowlink[v]);
        if (lowlink[v] == index[v]) {
          while (true) {
            int u = scc_stack.back();
            scc_stack.pop_back();
            on_stack[u] = 0;
            labels[u] = next_label;
            if (u == v) break;
          }
          ++next_label;
        }
      }
    }
    // Tarjan finishes sinks first; flip so condensation arcs ascend.
    for (auto& l : labels) l = next_label - 1 - l;
    return labels;
  }
};

}  // namespace

std::optional<SeparatorResult> min_separator(const SkewGraph& g,
                                             const VertexSet& L, int cap) {
  if (L.empty()) throw ContractError("min_separator: empty terminal set");
  if (!set_symmetry(L).regular)
    throw ContractError("min_separator: irregular terminal set");
  if (cap < 0) throw ContractError("min_separator: negative cap");

  FlowNet net(g, L, cap + 1);
  int value = net.max_flow(cap + 1);
  if (value > cap) return std::nullopt;

  SeparatorResult res;
  res.lambda = value;
  res.cut_arcs = net.cut_arcs_from(net.residual_reachable());
  res.source_side = reachable(g, L, res.cut_arcs);
  internal_check(static_cast<int>(res.cut_arcs.size()) == value,
                 "min_separator: cut size differs from flow value");
  internal_check(out_cut(g, res.source_side) == res.cut_arcs,
                 "min_separator: cut is not the out-cut of the source side");
  return res;
}

LayeredCollection separator_collection(const SkewGraph& g, const VertexSet& L,
                                       int lambda) {
  if (lambda <= 0)
    throw ContractError("separator_collection: lambda must be positive");

  FlowNet net(g, L, lambda + 1);
  int value = net.max_flow(lambda + 1);
  internal_check(value == lambda,
                 "separator_collection: lambda is not the separator value");

  std::vector<std::int32_t> alpha = net.residual_scc_order();
  int alpha_s = alpha[net.s];
  int alpha_t = alpha[net.t];
  internal_check(alpha_t < alpha_s,
                 "separator_collection: sink not before source");

  // beta'(v): largest in-neighbor component index above alpha(v), clamped to
  // alpha(s). A vertex is i-forbidden for alpha(v) < i <= beta'(v); the
  // lower end of the interval is alpha(v)+1, which is what makes a parked
  // vertex rejoin the search exactly when the sweep reaches its component.
  std::vector<std::int32_t> beta_prime(net.n_nodes, -1);
  for (int v = 0; v < net.n_nodes; ++v) {
    if (alpha[v] >= alpha_s) continue;
    int best = -1;
    for (int i = net.in_start[v]; i < net.in_start[v + 1]; ++i) {
      int u = net.tail[net.in_list[i]];
      if (alpha[u] > alpha[v]) best = std::max(best, alpha[u]);
    }
    if (best >= 0) beta_prime[v] = std::min(best, alpha_s);
  }
  auto forbidden = [&](int v, int i) {
    return alpha[v] < i && i <= beta_prime[v];
  };

  // Modified BFS from s over original-direction arcs, with the forbidden
  // queue holding frontier vertices whose component the sweep has not
  // reached yet.
  std::vector<std::uint8_t> visited(net.n_nodes, 0), parked(net.n_nodes, 0);
  std::deque<int> bfs, forb;
  visited[net.s] = 1;
  bfs.push_back(net.s);

  LayeredCollection coll;
  coll.lambda = lambda;
  VertexSet layer;

  for (int i = alpha_s;; --i) {
    while (!bfs.empty()) {
      int u = bfs.front();
      bfs.pop_front();
      for (int j = net.out_start[u]; j < net.out_start[u + 1]; ++j) {
        int v = net.head[net.out_list[j]];
        if (visited[v] || v == net.t) continue;
        if (forbidden(v, i)) {
          if (!parked[v]) {
            parked[v] = 1;
            forb.push_back(v);
          }
        } else {
          visited[v] = 1;
          if (v != net.s) layer.push_back(vertex_of_dense(v));
          bfs.push_back(v);
        }
      }
    }
    if (!layer.empty()) {
      normalize(layer);
      coll.layer_diffs.push_back(layer);
      layer.clear();
    }
    if (i - 1 == alpha_t) break;
    for (size_t k = 0; k < forb.size();) {
      int v = forb[k];
      if (!forbidden(v, i - 1)) {
        forb.erase(forb.begin() + k);
        parked[v] = 0;
        visited[v] = 1;
        layer.push_back(vertex_of_dense(v));
        bfs.push_back(v);
      } else {
        ++k;
      }
    }
  }

  internal_check(!coll.layer_diffs.empty(),
                 "separator_collection: no layers produced");
  for (Vertex v : L)
    internal_check(set_contains(coll.layer_diffs.front(), v),
                   "separator_collection: first layer misses a terminal");

  // Out-cut per prefix, maintained incrementally; every arc enters and
  // leaves the cut at most once.
  std::vector<std::uint8_t> in_prefix(g.vertex_count(), 0);
  std::vector<std::uint8_t> in_cut(g.arc_count(), 0);
  std::vector<ArcId> cut_members;
  for (const VertexSet& diff : coll.layer_diffs) {
    for (Vertex v : diff) in_prefix[dense_index(v)] = 1;
    for (Vertex v : diff)
      for (ArcId a : g.in_arcs(v))
        if (in_cut[a]) in_cut[a] = 0;
    for (Vertex v : diff)
      for (ArcId a : g.out_arcs(v)) {
        if (g.is_deleted(a)) continue;
        if (!in_prefix[dense_index(g.head(a))]) {
          in_cut[a] = 1;
          cut_members.push_back(a);
        }
      }
    std::erase_if(cut_members, [&](ArcId a) { return !in_cut[a]; });
    ArcSet snapshot = cut_members;
    std::sort(snapshot.begin(), snapshot.end());
    internal_check(static_cast<int>(snapshot.size()) == lambda,
                   "separator_collection: layer out-cut size differs from lambda");
    coll.layer_cuts.push_back(std::move(snapshot));
  }
  return coll;
}

std::optional<ArcSet> min_separator_containing_pair(SkewGraph& g,
                                                    const VertexSet& L,
                                                    ArcId y, int lambda) {
  ArcId yc = conjugate_arc(y);
  if (g.is_deleted(y) || g.is_deleted(yc))
    throw ContractError("pair membership test on deleted arc");
  if (lambda < 2) return std::nullopt;

  g.delete_pair(y);
  std::optional<SeparatorResult> r;
  try {
    r = min_separator(g, L, lambda - 2);
  } catch (...) {
    g.restore_pair(y);
    throw;
  }
  g.restore_pair(y);
  if (!r) return std::nullopt;
  internal_check(r->lambda == lambda - 2,
                 "pair deletion lowered the separator value by more than 2");
  ArcSet sep = r->cut_arcs;
  sep.push_back(y);
  sep.push_back(yc);
  std::sort(sep.begin(), sep.end());
  return sep;
}

bool has_min_separator_with_pair(SkewGraph& g, const VertexSet& L, ArcId y,
                                 int lambda) {
  return min_separator_containing_pair(g, L, y, lambda).has_value();
}

}  // namespace ssmc
