#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ssmc/errors.hpp"

namespace ssmc {

// Vertices are signed nonzero ids: the pair i is the two vertices {+i, -i}
// and conjugation is negation. Arcs are allocated in conjugate pairs at
// adjacent indices, so the conjugate of arc a is a ^ 1.
using Vertex = std::int32_t;
using ArcId = std::int32_t;

using VertexSet = std::vector<Vertex>;  // sorted by dense index
using ArcSet = std::vector<ArcId>;      // sorted ascending

constexpr Vertex conjugate(Vertex v) { return -v; }
constexpr ArcId conjugate_arc(ArcId a) { return a ^ 1; }

// Dense layout interleaves pairs: +1,-1,+2,-2,...
constexpr int dense_index(Vertex v) {
  return v > 0 ? 2 * (v - 1) : 2 * (-v - 1) + 1;
}
constexpr Vertex vertex_of_dense(int idx) {
  return (idx & 1) ? -(idx / 2 + 1) : (idx / 2 + 1);
}

struct SetSymmetry {
  bool regular;         // s and conj(s) disjoint
  bool self_conjugate;  // s == conj(s)
};

// Directed multigraph with a fixed-point-free involution on vertices and
// arcs. Deletions are a self-conjugate mask so the solver can backtrack by
// unmasking; the underlying arcs are never removed.
class SkewGraph {
 public:
  static SkewGraph build(int n_pairs,
                         const std::vector<std::pair<Vertex, Vertex>>& arc_pairs);

  int pair_count() const { return n_pairs_; }
  int vertex_count() const { return 2 * n_pairs_; }
  int arc_count() const { return static_cast<int>(tail_.size()); }
  int arc_pair_count() const { return arc_count() / 2; }

  Vertex tail(ArcId a) const { return tail_[a]; }
  Vertex head(ArcId a) const { return head_[a]; }

  bool valid_vertex(Vertex v) const {
    return v != 0 && v >= -n_pairs_ && v <= n_pairs_;
  }

  std::span<const ArcId> out_arcs(Vertex v) const {
    int i = dense_index(v);
    return {out_arcs_.data() + out_start_[i],
            static_cast<size_t>(out_start_[i + 1] - out_start_[i])};
  }
  std::span<const ArcId> in_arcs(Vertex v) const {
    int i = dense_index(v);
    return {in_arcs_.data() + in_start_[i],
            static_cast<size_t>(in_start_[i + 1] - in_start_[i])};
  }

  bool is_deleted(ArcId a) const { return deleted_[a] != 0; }
  // Masks or unmasks an arc together with its conjugate; the mask is
  // self-conjugate at all times.
  void delete_pair(ArcId a) {
    deleted_[a] = 1;
    deleted_[conjugate_arc(a)] = 1;
  }
  void restore_pair(ArcId a) {
    deleted_[a] = 0;
    deleted_[conjugate_arc(a)] = 0;
  }

  const std::vector<std::uint8_t>& mask() const { return deleted_; }
  std::vector<std::uint8_t> mask_checkpoint() const { return deleted_; }
  void mask_restore(std::vector<std::uint8_t> saved);

  // Checks the involution axioms; throws InternalError on violation.
  void validate() const;

 private:
  int n_pairs_ = 0;
  std::vector<Vertex> tail_, head_;
  std::vector<std::uint8_t> deleted_;
  std::vector<std::int32_t> out_start_, in_start_;
  std::vector<ArcId> out_arcs_, in_arcs_;

  void build_adjacency();
};

// Restores the graph's deletion mask when leaving scope.
class MaskGuard {
 public:
  explicit MaskGuard(SkewGraph& g) : graph_(&g), saved_(g.mask_checkpoint()) {}
  ~MaskGuard() {
    if (graph_) graph_->mask_restore(std::move(saved_));
  }
  MaskGuard(const MaskGuard&) = delete;
  MaskGuard& operator=(const MaskGuard&) = delete;

  // Restores now instead of at scope exit.
  void restore() {
    graph_->mask_restore(std::move(saved_));
    graph_ = nullptr;
  }

 private:
  SkewGraph* graph_;
  std::vector<std::uint8_t> saved_;
};

// R(L, deleted + extra_deleted): vertices reachable from L, BFS in
// ascending arc order.
VertexSet reachable(const SkewGraph& g, const VertexSet& from,
                    const ArcSet& extra_deleted = {});

// Vertices with a directed path TO `to` (co-reachability), same masking rules.
VertexSet co_reachable(const SkewGraph& g, const VertexSet& to,
                       const ArcSet& extra_deleted = {});

// Strongly connected component label per dense vertex index, respecting the
// deletion mask. Labels are deterministic for a given graph and mask.
std::vector<std::int32_t> scc_labels(const SkewGraph& g);

SetSymmetry set_symmetry(const VertexSet& s);
SetSymmetry arc_set_symmetry(const ArcSet& s);

// Sorted-set helpers (VertexSets are ordered by dense index).
void normalize(VertexSet& s);
bool set_contains(const VertexSet& s, Vertex v);
VertexSet conjugate_set(const VertexSet& s);
ArcSet conjugate_arc_set(const ArcSet& s);
bool arc_set_contains(const ArcSet& s, ArcId a);

// Arcs leaving s: tail in s, head outside, undeleted.
ArcSet out_cut(const SkewGraph& g, const VertexSet& s);

}  // namespace ssmc
