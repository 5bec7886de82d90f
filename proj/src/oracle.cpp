#include "ssmc/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>

namespace ssmc {

namespace {

// Ascending fixed-size combinations over {0..n-1}.
bool next_combination(std::vector<int>& c, int n) {
  int r = static_cast<int>(c.size());
  for (int i = r - 1; i >= 0; --i) {
    if (c[i] < n - (r - i)) {
      ++c[i];
      for (int j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Kosaraju over plain adjacency lists; kept local so the reference path
// shares nothing with scc_labels.
std::vector<int> kosaraju(int n, const std::vector<std::pair<int, int>>& arcs) {
  std::vector<std::vector<int>> fwd(n), rev(n);
  for (auto [u, v] : arcs) {
    fwd[u].push_back(v);
    rev[v].push_back(u);
  }
  std::vector<int> order;
  order.reserve(n);
  std::vector<char> seen(n, 0);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::pair<int, size_t>> stack{{s, 0}};
    seen[s] = 1;
    while (!stack.empty()) {
      auto& [u, pos] = stack.back();
      if (pos < fwd[u].size()) {
        int w = fwd[u][pos++];
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back({w, 0});
        }
      } else {
        order.push_back(u);
        stack.pop_back();
      }
    }
  }
  std::vector<int> label(n, -1);
  int next = 0;
  for (int i = n - 1; i >= 0; --i) {
    int s = order[i];
    if (label[s] != -1) continue;
    std::vector<int> stack{s};
    label[s] = next;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : rev[u])
        if (label[w] == -1) {
          label[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  return label;
}

bool multicut_ok(const SkewGraph& g, const std::vector<VertexSet>& family,
                 const std::vector<char>& pair_removed) {
  std::vector<std::pair<int, int>> arcs;
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    if (g.is_deleted(a) || pair_removed[a / 2]) continue;
    arcs.push_back({dense_index(g.tail(a)), dense_index(g.head(a))});
  }
  std::vector<int> label = kosaraju(g.vertex_count(), arcs);
  for (const VertexSet& j : family) {
    bool split = false;
    for (Vertex v : j)
      if (label[dense_index(v)] != label[dense_index(-v)]) {
        split = true;
        break;
      }
    if (!split) return false;
  }
  return true;
}

}  // namespace

std::optional<ArcSet> bf_multicut(const SkewGraph& g,
                                  const std::vector<VertexSet>& family,
                                  int k) {
  int pairs = g.arc_pair_count();
  if (pairs > 32 || k > 4)
    throw BudgetError("bf_multicut: instance beyond the brute-force budget");
  if (k < 0) throw ContractError("bf_multicut: negative budget");

  std::vector<int> candidates;
  for (int p = 0; p < pairs; ++p)
    if (!g.is_deleted(2 * p)) candidates.push_back(p);

  std::vector<char> removed(pairs, 0);
  for (int size = 0; size <= std::min<int>(k, candidates.size()); ++size) {
    std::vector<int> comb(size);
    for (int i = 0; i < size; ++i) comb[i] = i;
    bool more = true;
    while (more) {
      std::fill(removed.begin(), removed.end(), 0);
      for (int i : comb) removed[candidates[i]] = 1;
      if (multicut_ok(g, family, removed)) {
        ArcSet witness;
        for (int i : comb) {
          witness.push_back(2 * candidates[i]);
          witness.push_back(2 * candidates[i] + 1);
        }
        std::sort(witness.begin(), witness.end());
        return witness;
      }
      more = size > 0 && next_combination(comb, static_cast<int>(candidates.size()));
    }
  }
  return std::nullopt;
}

namespace {

bool truth_table_satisfiable(const CnfFormula& f,
                             const std::vector<char>& clause_removed) {
  std::uint64_t limit = 1ull << f.n_vars;
  for (std::uint64_t assign = 0; assign < limit; ++assign) {
    bool ok = true;
    for (size_t ci = 0; ci < f.clauses.size() && ok; ++ci) {
      if (clause_removed[ci]) continue;
      bool sat = false;
      for (int lit : f.clauses[ci]) {
        int v = std::abs(lit) - 1;
        bool val = (assign >> v) & 1;
        if ((lit > 0) == val) {
          sat = true;
          break;
        }
      }
      ok = sat;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> bf_almost2sat(const CnfFormula& f, int k) {
  f.check();
  if (f.n_vars > 20 || static_cast<int>(f.clauses.size()) > 16 || k > 4)
    throw BudgetError("bf_almost2sat: instance beyond the brute-force budget");
  if (k < 0) throw ContractError("bf_almost2sat: negative budget");

  int m = static_cast<int>(f.clauses.size());
  std::vector<char> removed(m, 0);
  for (int size = 0; size <= std::min(k, m); ++size) {
    std::vector<int> comb(size);
    for (int i = 0; i < size; ++i) comb[i] = i;
    bool more = true;
    while (more) {
      std::fill(removed.begin(), removed.end(), 0);
      for (int i : comb) removed[i] = 1;
      if (truth_table_satisfiable(f, removed))
        return std::vector<int>(comb.begin(), comb.end());
      more = size > 0 && next_combination(comb, m);
    }
  }
  return std::nullopt;
}

namespace {

bool two_colorable(const UndirectedGraph& g, const std::vector<char>& v_gone,
                   const std::vector<char>& e_gone) {
  std::vector<std::vector<int>> adj(g.n + 1);
  for (size_t e = 0; e < g.edges.size(); ++e) {
    if (e_gone[e]) continue;
    auto [u, v] = g.edges[e];
    if (v_gone[u] || v_gone[v]) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> color(g.n + 1, -1);
  for (int s = 1; s <= g.n; ++s) {
    if (v_gone[s] || color[s] != -1) continue;
    color[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : adj[u]) {
        if (color[w] == -1) {
          color[w] = color[u] ^ 1;
          q.push(w);
        } else if (color[w] == color[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

std::optional<std::vector<int>> bf_bipartization(const UndirectedGraph& g,
                                                 int k,
                                                 BipartizationMode mode) {
  g.check();
  if (g.n > 12)
    throw BudgetError("bf_bipartization: instance beyond the brute-force budget");
  if (k < 0) throw ContractError("bf_bipartization: negative budget");

  int universe = mode == BipartizationMode::Vertex
                     ? g.n
                     : static_cast<int>(g.edges.size());
  std::vector<char> v_gone(g.n + 1, 0), e_gone(g.edges.size(), 0);
  for (int size = 0; size <= std::min(k, universe); ++size) {
    std::vector<int> comb(size);
    for (int i = 0; i < size; ++i) comb[i] = i;
    bool more = true;
    while (more) {
      std::fill(v_gone.begin(), v_gone.end(), 0);
      std::fill(e_gone.begin(), e_gone.end(), 0);
      for (int i : comb) {
        if (mode == BipartizationMode::Vertex)
          v_gone[i + 1] = 1;
        else
          e_gone[i] = 1;
      }
      if (two_colorable(g, v_gone, e_gone)) {
        std::vector<int> witness;
        for (int i : comb)
          witness.push_back(mode == BipartizationMode::Vertex ? i + 1 : i);
        return witness;
      }
      more = size > 0 && next_combination(comb, universe);
    }
  }
  return std::nullopt;
}

bool bf_qhorn(const CnfFormula& f) {
  f.check();
  if (f.n_vars > 12)
    throw BudgetError("bf_qhorn: instance beyond the brute-force budget");
  // beta values doubled to {0,1,2} so the per-clause sum test stays integral.
  int n = f.n_vars;
  std::vector<int> beta(n + 1, 0);
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int v = 1; v <= n; ++v) {
      beta[v] = static_cast<int>(c % 3);
      c /= 3;
    }
    bool ok = true;
    for (const auto& clause : f.clauses) {
      int sum = 0;
      for (int lit : clause)
        sum += lit > 0 ? beta[lit] : 2 - beta[-lit];
      if (sum > 2) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

std::optional<std::vector<int>> bf_qhorn_backdoor(const CnfFormula& f, int k) {
  f.check();
  if (f.n_vars > 10 || k > 3)
    throw BudgetError("bf_qhorn_backdoor: instance beyond the brute-force budget");
  if (k < 0) throw ContractError("bf_qhorn_backdoor: negative budget");

  int n = f.n_vars;
  for (int size = 0; size <= std::min(k, n); ++size) {
    std::vector<int> comb(size);
    for (int i = 0; i < size; ++i) comb[i] = i;
    bool more = true;
    while (more) {
      std::vector<int> vars;
      for (int i : comb) vars.push_back(i + 1);
      if (bf_qhorn(remove_variables(f, vars))) return vars;
      more = size > 0 && next_combination(comb, n);
    }
  }
  return std::nullopt;
}

}  // namespace ssmc
