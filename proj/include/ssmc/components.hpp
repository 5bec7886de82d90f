#pragma once

#include "ssmc/separators.hpp"
#include "ssmc/skew_graph.hpp"

namespace ssmc {

// Result of the (L,k)-component search. Exactly one of the three cases:
//  - NoComponent: the minimum L-L' separator exceeds 2k.
//  - Component: a maximal regular superset Z of L, reachable from L inside
//    itself, whose minimum Z-Z' separator equals lambda(L,L').
//  - IrregularSeparator: a minimum L-L' separator meeting its own conjugate.
struct ComponentOutcome {
  enum class Kind { NoComponent, Component, IrregularSeparator };
  Kind kind = Kind::NoComponent;
  VertexSet component;
  ArcSet separator;
  int lambda = 0;  // lambda(L,L') for the Component / IrregularSeparator cases

  static ComponentOutcome none() { return {}; }
};

// Runs the iterative case analysis over the layered collection. L must be
// regular, nonempty, and have a path to L'. The deletion mask is used as
// scratch space internally but is restored before returning.
ComponentOutcome find_lk_component(SkewGraph& g, const VertexSet& L, int k);

}  // namespace ssmc
