#pragma once

#include <optional>
#include <vector>

#include "ssmc/cnf.hpp"
#include "ssmc/reductions.hpp"
#include "ssmc/skew_graph.hpp"

namespace ssmc {

// Exhaustive reference implementations, independent of the solver path they
// verify. Each routine refuses inputs beyond its hard budget by throwing
// BudgetError so CI runs stay bounded. Witnesses come out in lexicographic
// order, smallest first, so results are reproducible byte for byte.

// All self-conjugate arc sets of at most k conjugate pairs; SCC condition
// checked with a local Kosaraju pass. Budget: 32 arc pairs, k <= 4.
std::optional<ArcSet> bf_multicut(const SkewGraph& g,
                                  const std::vector<VertexSet>& family, int k);

// Clause subsets of size at most k; satisfiability by exhaustive truth
// assignment. Budget: 20 variables, 16 clauses, k <= 4.
std::optional<std::vector<int>> bf_almost2sat(const CnfFormula& f, int k);

enum class BipartizationMode { Vertex, Edge };

// Vertex or edge subsets of size at most k; bipartiteness by 2-coloring.
// Budget: 12 vertices.
std::optional<std::vector<int>> bf_bipartization(const UndirectedGraph& g,
                                                 int k, BipartizationMode mode);

// Certifying-function enumeration over {0, 1/2, 1}^n. Budget: 12 variables.
bool bf_qhorn(const CnfFormula& f);

// Variable subsets of size at most k, each residual checked with bf_qhorn.
// Budget: 10 variables, k <= 3.
std::optional<std::vector<int>> bf_qhorn_backdoor(const CnfFormula& f, int k);

}  // namespace ssmc
