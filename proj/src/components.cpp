#include "ssmc/components.hpp"

#include <algorithm>
#include <queue>

namespace ssmc {

namespace {

using Bitmap = std::vector<std::uint8_t>;

Bitmap bitmap_of(const SkewGraph& g, const VertexSet& s) {
  Bitmap bits(g.vertex_count(), 0);
  for (Vertex v : s) bits[dense_index(v)] = 1;
  return bits;
}

VertexSet set_of(const Bitmap& bits) {
  VertexSet out;
  for (int i = 0; i < static_cast<int>(bits.size()); ++i)
    if (bits[i]) out.push_back(vertex_of_dense(i));
  return out;
}

bool bitmap_irregular(const Bitmap& bits) {
  for (size_t i = 0; i < bits.size(); i += 2)
    if (bits[i] && bits[i ^ 1]) return true;
  return false;
}

// Every vertex of Z reachable from L inside D[Z]?
bool reachable_within(const SkewGraph& g, const VertexSet& L, const VertexSet& Z) {
  Bitmap in_z = bitmap_of(g, Z);
  for (Vertex v : L)
    if (!in_z[dense_index(v)]) return false;
  Bitmap visited(g.vertex_count(), 0);
  std::queue<Vertex> q;
  size_t seen = 0;
  for (Vertex v : L) {
    int i = dense_index(v);
    if (!visited[i]) {
      visited[i] = 1;
      q.push(v);
      ++seen;
    }
  }
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop();
    for (ArcId a : g.out_arcs(u)) {
      if (g.is_deleted(a)) continue;
      int h = dense_index(g.head(a));
      if (in_z[h] && !visited[h]) {
        visited[h] = 1;
        q.push(g.head(a));
        ++seen;
      }
    }
  }
  return seen == Z.size();
}

}  // namespace

ComponentOutcome find_lk_component(SkewGraph& g, const VertexSet& L, int k) {
  if (L.empty()) throw ContractError("find_lk_component: empty terminal set");
  if (!set_symmetry(L).regular)
    throw ContractError("find_lk_component: irregular terminal set");
  if (k < 0) throw ContractError("find_lk_component: negative budget");

  MaskGuard guard(g);

  auto first = min_separator(g, L, 2 * k);
  if (!first) return ComponentOutcome::none();
  int lambda = first->lambda;
  if (lambda == 0)
    throw ContractError("find_lk_component: no path from L to its conjugate");
  const int lambda_orig = lambda;

  VertexSet cur_terminals = L;
  ArcSet lifted;  // arcs re-added to separators found deeper in the recursion

  auto finish_component = [&](VertexSet z) -> ComponentOutcome {
    guard.restore();
    internal_check(set_symmetry(z).regular, "component is irregular");
    for (Vertex v : L)
      internal_check(set_contains(z, v), "component misses a terminal");
    internal_check(reachable_within(g, L, z),
                   "component not reachable from terminals inside itself");
    auto sep = min_separator(g, z, lambda_orig);
    internal_check(sep.has_value() && sep->lambda == lambda_orig,
                   "component separator value differs from lambda(L,L')");
    ComponentOutcome out;
    out.kind = ComponentOutcome::Kind::Component;
    out.component = std::move(z);
    out.lambda = lambda_orig;
    return out;
  };

  auto finish_separator = [&](ArcSet s) -> ComponentOutcome {
    s.insert(s.end(), lifted.begin(), lifted.end());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    guard.restore();
    internal_check(static_cast<int>(s.size()) == lambda_orig,
                   "irregular separator has the wrong size");
    internal_check(!arc_set_symmetry(s).regular,
                   "separator reported irregular is regular");
    VertexSet reached = reachable(g, L, s);
    for (Vertex v : L)
      internal_check(!set_contains(reached, -v),
                     "irregular separator does not separate L from L'");
    ComponentOutcome out;
    out.kind = ComponentOutcome::Kind::IrregularSeparator;
    out.separator = std::move(s);
    out.lambda = lambda_orig;
    return out;
  };

  int iterations = 0;
  const int iteration_budget = 2 * k + g.pair_count() + 2;
  while (true) {
    internal_check(++iterations <= iteration_budget,
                   "component search failed to converge");
    internal_check(lambda + static_cast<int>(lifted.size()) == lambda_orig,
                   "separator bookkeeping out of sync");
    if (lambda == 0) return finish_component(reachable(g, cur_terminals));

    LayeredCollection coll = separator_collection(g, cur_terminals, lambda);
    int q = coll.size();

    // Locate the last regular prefix; regularity is monotone down the chain.
    int first_irregular = -1;
    {
      Bitmap seen(g.vertex_count(), 0);
      for (int i = 0; i < q && first_irregular < 0; ++i) {
        for (Vertex v : coll.layer_diffs[i]) {
          if (seen[dense_index(-v)]) {
            first_irregular = i;
            break;
          }
          seen[dense_index(v)] = 1;
        }
      }
    }

    if (first_irregular < 0) {
      VertexSet z;
      for (const VertexSet& d : coll.layer_diffs)
        z.insert(z.end(), d.begin(), d.end());
      normalize(z);
      return finish_component(std::move(z));
    }
    internal_check(first_irregular >= 1,
                   "first layer of the collection is irregular");

    Bitmap a_bits(g.vertex_count(), 0), b_bits(g.vertex_count(), 0);
    for (int i = 0; i <= first_irregular; ++i)
      for (Vertex v : coll.layer_diffs[i]) {
        b_bits[dense_index(v)] = 1;
        if (i < first_irregular) a_bits[dense_index(v)] = 1;
      }

    bool organic = true;  // B straight from the collection, not an inserted K
    while (true) {
      // Q = B \ B'
      Bitmap q_bits(g.vertex_count(), 0);
      for (size_t i = 0; i < b_bits.size(); ++i)
        if (b_bits[i] && !b_bits[i ^ 1]) q_bits[i] = 1;
      VertexSet q_set = set_of(q_bits);
      ArcSet dq = out_cut(g, q_set);
      internal_check(static_cast<int>(dq.size()) == lambda,
                     "out-cut of B minus B' is not minimum");

      // An arc from Q straight into Q' forces its conjugate into the same
      // cut, so the cut itself is the irregular separator.
      for (ArcId x : dq) {
        if (q_bits[dense_index(-g.head(x))]) {
          internal_check(arc_set_contains(dq, conjugate_arc(x)),
                         "conjugate of a Q-to-Q' arc missing from the cut");
          return finish_separator(dq);
        }
      }

      bool a_meets_b_conj = false;
      for (size_t i = 0; i < a_bits.size(); ++i)
        if (a_bits[i] && b_bits[i ^ 1]) {
          a_meets_b_conj = true;
          break;
        }

      if (!a_meets_b_conj) {
        // Case I. Q° = arcs from Q into B cap B'.
        Bitmap bb(g.vertex_count(), 0);
        bool bb_nonempty = false;
        for (size_t i = 0; i < b_bits.size(); ++i)
          if (b_bits[i] && b_bits[i ^ 1]) {
            bb[i] = 1;
            bb_nonempty = true;
          }
        internal_check(bb_nonempty, "case I entered with regular B");
        ArcSet q_out;
        for (ArcId x : dq)
          if (bb[dense_index(g.head(x))]) q_out.push_back(x);
        if (organic)
          internal_check(!q_out.empty(), "case I with no arcs into B cap B'");

        if (lambda >= 2) {
          for (ArcId y : q_out) {
            auto witness =
                min_separator_containing_pair(g, cur_terminals, y, lambda);
            if (witness) return finish_separator(std::move(*witness));
          }
        }

        // Recurse on (Q, lambda - |Q°|) in the graph without B cap B'.
        for (int i = 0; i < g.vertex_count(); ++i) {
          if (!bb[i]) continue;
          Vertex v = vertex_of_dense(i);
          for (ArcId x : g.out_arcs(v))
            if (!g.is_deleted(x)) g.delete_pair(x);
          for (ArcId x : g.in_arcs(v))
            if (!g.is_deleted(x)) g.delete_pair(x);
        }
        lifted.insert(lifted.end(), q_out.begin(), q_out.end());
        lambda -= static_cast<int>(q_out.size());
        cur_terminals = std::move(q_set);
        break;
      }

      // Case II: A meets B'. Case III (A inside B cap B') cannot happen
      // because L is in A and never in B'.
      {
        bool a_escapes = false;
        for (size_t i = 0; i < a_bits.size(); ++i)
          if (a_bits[i] && !b_bits[i ^ 1]) {
            a_escapes = true;
            break;
          }
        internal_check(a_escapes, "case III reached");
      }

      Bitmap k_bits(g.vertex_count(), 0);
      for (size_t i = 0; i < b_bits.size(); ++i)
        if (b_bits[i] && !a_bits[i ^ 1]) k_bits[i] = 1;

      if (bitmap_irregular(k_bits)) {
        // Insert K into the collection: A keeps its role, K becomes the
        // least irregular set, and A is disjoint from K', so the next pass
        // lands in Case I.
        b_bits = std::move(k_bits);
        organic = false;
        continue;
      }

      VertexSet k_set = set_of(k_bits);
      ArcSet dk = out_cut(g, k_set);
      internal_check(static_cast<int>(dk.size()) == lambda,
                     "out-cut of B minus A' is not minimum");
      for (ArcId x : dk)
        if (arc_set_contains(dk, conjugate_arc(x)))
          return finish_separator(dk);
      if (lambda >= 2) {
        for (ArcId y : dk) {
          auto witness =
              min_separator_containing_pair(g, cur_terminals, y, lambda);
          if (witness) return finish_separator(std::move(*witness));
        }
      }
      throw InternalError(
          "case II with regular K produced no irregular separator");
    }
  }
}

}  // namespace ssmc
