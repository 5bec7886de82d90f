#include "ssmc/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>

namespace ssmc {

namespace {

// Stable clause-literal order: ascending variable, negative literal first
// on a tie. The quadratic cover and the triple oracle both rely on it.
std::vector<int> ordered_literals(const std::vector<int>& clause) {
  std::vector<int> lits = clause;
  std::sort(lits.begin(), lits.end(), [](int a, int b) {
    int va = std::abs(a), vb = std::abs(b);
    return va != vb ? va < vb : a < b;
  });
  return lits;
}

std::vector<int> distinct_literals(const std::vector<int>& clause) {
  std::vector<int> lits = ordered_literals(clause);
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  return lits;
}

}  // namespace

Vertex LiteralMap::literal_vertex(int lit) const {
  int v = std::abs(lit);
  if (!split) return lit;
  return lit > 0 ? 2 * v : -(2 * v - 1);  // out-side vertex
}

Vertex LiteralMap::literal_in_vertex(int lit) const {
  int v = std::abs(lit);
  if (!split) return lit;
  return lit > 0 ? 2 * v - 1 : -(2 * v);
}

std::pair<SkewGraph, LiteralMap> implication_graph(const CnfFormula& f) {
  f.check();
  LiteralMap map;
  map.n_vars = f.n_vars;
  std::vector<std::pair<Vertex, Vertex>> arcs;
  arcs.reserve(f.clauses.size());
  for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
    const auto& c = f.clauses[ci];
    if (c.size() > 2)
      throw MalformedInputError("implication graph needs clause width <= 2");
    int l1 = c[0];
    int l2 = c.size() == 2 ? c[1] : c[0];  // unit clause {l} acts as {l, l}
    arcs.push_back({-l1, l2});
    map.pair_to_clause.push_back(static_cast<int>(ci));
    map.pair_to_var.push_back(0);
  }
  return {SkewGraph::build(f.n_vars, arcs), std::move(map)};
}

bool two_sat_satisfiable(const CnfFormula& f) {
  auto [g, map] = implication_graph(f);
  std::vector<std::int32_t> labels = scc_labels(g);
  for (int v = 1; v <= f.n_vars; ++v)
    if (labels[dense_index(v)] == labels[dense_index(-v)]) return false;
  return true;
}

std::optional<std::vector<int>> almost_2sat(const CnfFormula& f, int k,
                                            SolveStats* stats) {
  if (k < 0) throw ContractError("almost_2sat: negative budget");
  auto [g, map] = implication_graph(f);
  std::vector<VertexSet> family;
  family.reserve(f.n_vars);
  for (int v = 1; v <= f.n_vars; ++v) family.push_back({v});
  ExplicitOracle oracle(std::move(family));
  auto sol = solve(g, oracle, k, stats);
  if (!sol) return std::nullopt;
  std::vector<int> clauses;
  for (ArcId a : *sol) clauses.push_back(map.pair_to_clause[a / 2]);
  std::sort(clauses.begin(), clauses.end());
  clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
  internal_check(static_cast<int>(clauses.size()) <= k,
                 "almost_2sat witness exceeds the budget");
  internal_check(two_sat_satisfiable(remove_clauses(f, clauses)),
                 "almost_2sat residual formula is unsatisfiable");
  return clauses;
}

bool is_bipartite(const UndirectedGraph& g,
                  const std::vector<int>& removed_vertices,
                  const std::vector<int>& removed_edges) {
  std::vector<char> v_gone(g.n + 1, 0);
  for (int v : removed_vertices) v_gone[v] = 1;
  std::vector<char> e_gone(g.edges.size(), 0);
  for (int e : removed_edges) e_gone[e] = 1;

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

std::optional<std::vector<int>> edge_bipartization(const UndirectedGraph& g,
                                                   int k, SolveStats* stats) {
  g.check();
  if (k < 0) throw ContractError("edge_bipartization: negative budget");
  // Edge uv becomes the clauses {x_u, x_v} and {-x_u, -x_v}; a 2-coloring
  // violates exactly one of them per monochromatic edge, so clause deletion
  // and edge deletion cost the same.
  CnfFormula f;
  f.n_vars = g.n;
  for (auto [u, v] : g.edges) {
    f.clauses.push_back({u, v});
    f.clauses.push_back({-u, -v});
  }
  auto clauses = almost_2sat(f, k, stats);
  if (!clauses) return std::nullopt;
  std::vector<int> edges;
  for (int c : *clauses) edges.push_back(c / 2);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  internal_check(is_bipartite(g, {}, edges),
                 "edge bipartization output is not bipartite");
  return edges;
}

std::optional<std::vector<int>> odd_cycle_transversal(const UndirectedGraph& g,
                                                      int k,
                                                      SolveStats* stats) {
  g.check();
  if (k < 0) throw ContractError("odd_cycle_transversal: negative budget");

  // Implication graph of the edge clauses with every literal vertex split
  // into (in, out); only the internal arcs are affordable, the clause arcs
  // are replicated k+1 times. Deleting an internal pair acts exactly like
  // deleting the vertex.
  LiteralMap map;
  map.n_vars = g.n;
  map.split = true;
  std::vector<std::pair<Vertex, Vertex>> arcs;
  for (int v = 1; v <= g.n; ++v) {
    arcs.push_back({map.literal_in_vertex(v), map.literal_vertex(v)});
    map.pair_to_clause.push_back(-1);
    map.pair_to_var.push_back(v);
  }
  for (auto [u, v] : g.edges) {
    for (int copy = 0; copy <= k; ++copy) {
      arcs.push_back({map.literal_vertex(-u), map.literal_in_vertex(v)});
      map.pair_to_clause.push_back(-1);
      map.pair_to_var.push_back(0);
    }
    for (int copy = 0; copy <= k; ++copy) {
      arcs.push_back({map.literal_vertex(u), map.literal_in_vertex(-v)});
      map.pair_to_clause.push_back(-1);
      map.pair_to_var.push_back(0);
    }
  }
  SkewGraph d = SkewGraph::build(2 * g.n, arcs);

  std::vector<VertexSet> family;
  family.reserve(g.n);
  for (int v = 1; v <= g.n; ++v) family.push_back({map.literal_vertex(v)});
  ExplicitOracle oracle(std::move(family));

  auto sol = solve(d, oracle, k, stats);
  if (!sol) return std::nullopt;
  std::vector<int> vertices;
  for (ArcId a : *sol)
    if (int v = map.pair_to_var[a / 2]; v != 0) vertices.push_back(v);
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  internal_check(static_cast<int>(vertices.size()) <= k,
                 "odd cycle transversal exceeds the budget");
  internal_check(is_bipartite(g, vertices, {}),
                 "odd cycle transversal output is not bipartite");
  return vertices;
}

QuadraticCover quadratic_cover(const CnfFormula& f) {
  f.check();
  QuadraticCover out;
  out.original_vars = f.n_vars;
  out.cover.n_vars = f.n_vars;
  for (const auto& clause : f.clauses) {
    std::vector<int> lits = ordered_literals(clause);
    int w = static_cast<int>(lits.size());
    if (w <= 1) continue;  // width-1 clauses contribute no cover clauses
    std::vector<int> fresh(w - 1);
    for (int i = 0; i < w - 1; ++i) fresh[i] = ++out.cover.n_vars;
    for (int i = 0; i < w - 1; ++i) {
      out.cover.clauses.push_back({lits[i], fresh[i]});
      out.cover.clauses.push_back({-fresh[i], lits[i + 1]});
    }
    for (int i = 0; i < w - 2; ++i)
      out.cover.clauses.push_back({-fresh[i], fresh[i + 1]});
  }
  return out;
}

bool is_qhorn(const CnfFormula& f) {
  QuadraticCover qc = quadratic_cover(f);
  auto [d, map] = implication_graph(qc.cover);
  std::vector<std::int32_t> labels = scc_labels(d);
  for (const auto& clause : f.clauses) {
    std::vector<int> lits = distinct_literals(clause);
    if (lits.size() < 3) continue;
    int flagged = 0;
    for (int lit : lits)
      if (labels[dense_index(lit)] == labels[dense_index(-lit)]) ++flagged;
    if (flagged >= 3) return false;
  }
  return true;
}

namespace {

// Scans the original clauses against the current strongly connected
// components of the gadget and reports the first triple of literals that
// all meet their complements.
class QhornTripleOracle final : public ViolationOracle {
 public:
  QhornTripleOracle(const CnfFormula& f, const LiteralMap& map) {
    for (const auto& clause : f.clauses) {
      std::vector<int> lits = distinct_literals(clause);
      if (lits.size() < 3) continue;
      std::vector<Vertex> vs;
      vs.reserve(lits.size());
      for (int lit : lits) vs.push_back(map.literal_vertex(lit));
      clause_vertices_.push_back(std::move(vs));
    }
  }

  int d() const override { return 3; }

  std::optional<VertexSet> find_violated(const SkewGraph& g) override {
    std::vector<std::int32_t> labels = scc_labels(g);
    for (const auto& vs : clause_vertices_) {
      VertexSet triple;
      for (Vertex v : vs) {
        if (labels[dense_index(v)] == labels[dense_index(-v)]) {
          triple.push_back(v);
          if (triple.size() == 3) break;
        }
      }
      if (triple.size() == 3) {
        normalize(triple);
        return triple;
      }
    }
    return std::nullopt;
  }

 private:
  std::vector<std::vector<Vertex>> clause_vertices_;
};

}  // namespace

QhornGadget qhorn_gadget(const CnfFormula& f, int k) {
  f.check();
  if (k < 0) throw ContractError("qhorn_gadget: negative budget");
  QuadraticCover qc = quadratic_cover(f);
  const int n = f.n_vars;
  const int fresh = qc.cover.n_vars - n;

  LiteralMap map;
  map.n_vars = n;
  map.split = true;

  // Fresh cover variables stay unsplit; their single pair sits after the
  // 2n split pairs.
  auto tail_node = [&](int lit) -> Vertex {
    int v = std::abs(lit);
    if (v <= n) return map.literal_vertex(lit);
    int p = 2 * n + (v - n);
    return lit > 0 ? p : -p;
  };
  auto head_node = [&](int lit) -> Vertex {
    int v = std::abs(lit);
    if (v <= n) return map.literal_in_vertex(lit);
    int p = 2 * n + (v - n);
    return lit > 0 ? p : -p;
  };

  std::vector<std::pair<Vertex, Vertex>> arcs;
  for (int v = 1; v <= n; ++v) {
    arcs.push_back({map.literal_in_vertex(v), map.literal_vertex(v)});
    map.pair_to_clause.push_back(-1);
    map.pair_to_var.push_back(v);
  }
  for (size_t ci = 0; ci < qc.cover.clauses.size(); ++ci) {
    const auto& c = qc.cover.clauses[ci];
    internal_check(c.size() == 2, "quadratic cover produced a non-2 clause");
    for (int copy = 0; copy <= k; ++copy) {
      arcs.push_back({tail_node(-c[0]), head_node(c[1])});
      map.pair_to_clause.push_back(static_cast<int>(ci));
      map.pair_to_var.push_back(0);
    }
  }

  QhornGadget out{SkewGraph::build(2 * n + fresh, arcs), map,
                  std::make_unique<QhornTripleOracle>(f, map)};
  return out;
}

std::optional<std::vector<int>> qhorn_backdoor(const CnfFormula& f, int k,
                                               SolveStats* stats) {
  if (k < 0) throw ContractError("qhorn_backdoor: negative budget");
  QhornGadget gadget = qhorn_gadget(f, k);
  auto sol = solve(gadget.graph, *gadget.oracle, k, stats);
  if (!sol) return std::nullopt;
  std::vector<int> vars;
  for (ArcId a : *sol)
    if (int v = gadget.map.pair_to_var[a / 2]; v != 0) vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  internal_check(static_cast<int>(vars.size()) <= k,
                 "backdoor set exceeds the budget");
  internal_check(is_qhorn(remove_variables(f, vars)),
                 "residual formula is not q-Horn");
  return vars;
}

}  // namespace ssmc
