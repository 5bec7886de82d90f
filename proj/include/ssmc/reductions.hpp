#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "ssmc/cnf.hpp"
#include "ssmc/skew_graph.hpp"
#include "ssmc/solver.hpp"

namespace ssmc {

// Correspondence between formula literals and gadget vertices. For plain
// implication graphs the literal IS the vertex; split gadgets route a
// literal through an (in, out) vertex pair joined by an internal arc pair.
struct LiteralMap {
  int n_vars = 0;
  bool split = false;
  std::vector<int> pair_to_clause;  // arc pair index -> clause index, -1 none
  std::vector<int> pair_to_var;     // arc pair index -> original variable, 0 none

  Vertex literal_vertex(int lit) const;  // out-side vertex when split
  Vertex literal_in_vertex(int lit) const;
};

struct UndirectedGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // 1-based vertices, no self-loops

  void check() const {
    for (auto [u, v] : edges) {
      if (u < 1 || u > n || v < 1 || v > n)
        throw MalformedInputError("edge endpoint out of range");
      if (u == v) throw MalformedInputError("self-loop");
    }
  }
};

// Implication graph of a width-<=2 formula: one vertex pair per variable,
// one conjugate arc pair per clause (unit clauses count as {l, l}).
std::pair<SkewGraph, LiteralMap> implication_graph(const CnfFormula& f);

bool two_sat_satisfiable(const CnfFormula& f);

// Clause indices (ascending) whose removal leaves f satisfiable, of size at
// most k, or nullopt.
std::optional<std::vector<int>> almost_2sat(const CnfFormula& f, int k,
                                            SolveStats* stats = nullptr);

// Edge indices into g.edges whose removal makes g bipartite.
std::optional<std::vector<int>> edge_bipartization(const UndirectedGraph& g,
                                                   int k,
                                                   SolveStats* stats = nullptr);

// Vertices whose removal makes g bipartite.
std::optional<std::vector<int>> odd_cycle_transversal(const UndirectedGraph& g,
                                                      int k,
                                                      SolveStats* stats = nullptr);

// Width-<=2 cover of f: chains each clause through fresh variables.
struct QuadraticCover {
  CnfFormula cover;
  int original_vars = 0;
};
QuadraticCover quadratic_cover(const CnfFormula& f);

bool is_qhorn(const CnfFormula& f);

// Split gadget over the quadratic cover plus the violated-triple oracle.
struct QhornGadget {
  SkewGraph graph;
  LiteralMap map;
  std::unique_ptr<ViolationOracle> oracle;
};
QhornGadget qhorn_gadget(const CnfFormula& f, int k);

// Deletion backdoor set into the q-Horn class, of size at most k.
std::optional<std::vector<int>> qhorn_backdoor(const CnfFormula& f, int k,
                                               SolveStats* stats = nullptr);

// 2-coloring test used to re-check bipartization outputs.
bool is_bipartite(const UndirectedGraph& g,
                  const std::vector<int>& removed_vertices,
                  const std::vector<int>& removed_edges);

}  // namespace ssmc
