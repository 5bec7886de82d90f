#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ssmc/components.hpp"
#include "ssmc/skew_graph.hpp"

namespace ssmc {

struct SolveStats {
  std::uint64_t nodes = 0;   // search frames entered
  std::uint64_t leaves = 0;  // frames that produced no children
  std::uint64_t rule_applications = 0;
  std::uint64_t component_calls = 0;
  int max_depth = 0;
  double wall_ms = 0.0;
};

// Source of violated family members. A member is violated when each of its
// vertices sits in the same strongly connected component as its conjugate
// under the current deletion mask.
class ViolationOracle {
 public:
  virtual ~ViolationOracle() = default;
  virtual int d() const = 0;
  virtual std::optional<VertexSet> find_violated(const SkewGraph& g) = 0;
};

// Explicit family of d-sets, scanned in input order against one SCC pass.
class ExplicitOracle final : public ViolationOracle {
 public:
  explicit ExplicitOracle(std::vector<VertexSet> family);
  int d() const override { return d_; }
  std::optional<VertexSet> find_violated(const SkewGraph& g) override;
  const std::vector<VertexSet>& family() const { return family_; }

 private:
  std::vector<VertexSet> family_;
  int d_ = 1;
};

// Branching search for a self-conjugate multicut of at most 2k arcs, or
// nullopt when none exists. The deletion mask doubles as the search state
// and is restored before returning.
std::optional<ArcSet> solve(SkewGraph& g, ViolationOracle& oracle, int k,
                            SolveStats* stats = nullptr);

// True iff s is self-conjugate and every family member has a vertex split
// from its conjugate across strongly connected components of g minus s.
bool validate_multicut(SkewGraph& g, const std::vector<VertexSet>& family,
                       const ArcSet& s);

// Given an irregular minimum L-L' separator, picks the conjugate arc pair
// on the boundary of R(L, S + S') that some optimal solution contains.
// The caller deletes the pair and lowers the budget by one.
std::pair<ArcId, ArcId> apply_reduction_rule(const SkewGraph& g,
                                             const VertexSet& L,
                                             const ArcSet& s);

}  // namespace ssmc
