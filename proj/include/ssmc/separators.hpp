#pragma once

#include <optional>
#include <vector>

#include "ssmc/skew_graph.hpp"

namespace ssmc {

struct SeparatorResult {
  int lambda = 0;         // minimum L-L' separator size
  ArcSet cut_arcs;        // = out_cut(source_side), |cut_arcs| == lambda
  VertexSet source_side;  // R(L, cut_arcs)
};

// The nested chain X_1 c X_2 c ... c X_q of source-side sets whose
// out-cuts jointly contain every arc of every minimum L-L' separator.
// Stored as disjoint layer differences; prefix unions give the X_i.
struct LayeredCollection {
  int lambda = 0;
  std::vector<VertexSet> layer_diffs;  // X_1, X_2 - X_1, ...
  std::vector<ArcSet> layer_cuts;      // out_cut of each prefix, size lambda each

  int size() const { return static_cast<int>(layer_diffs.size()); }
};

// Unit-capacity augmenting-path min cut between L and its conjugate set.
// Returns nullopt (Exceeded) after cap+1 augmentations when the separator
// value is above cap. The super-source/sink attachment is implicit, so
// gadget arcs can never appear in the cut. L must be regular and nonempty.
std::optional<SeparatorResult> min_separator(const SkewGraph& g,
                                             const VertexSet& L, int cap);

// Builds the layered collection for terminals L given the true minimum
// separator value lambda > 0, via the forbidden-queue BFS over the
// residual strongly connected components.
LayeredCollection separator_collection(const SkewGraph& g, const VertexSet& L,
                                       int lambda);

// True iff some minimum L-L' separator contains both y and conjugate(y).
// Tested by the lambda-drop criterion: deleting the pair must lower the
// separator value by exactly 2. Both arcs must be undeleted.
bool has_min_separator_with_pair(SkewGraph& g, const VertexSet& L, ArcId y,
                                 int lambda);

// Witness version: the containing separator when one exists.
std::optional<ArcSet> min_separator_containing_pair(SkewGraph& g,
                                                    const VertexSet& L,
                                                    ArcId y, int lambda);

}  // namespace ssmc
