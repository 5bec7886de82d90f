#include "ssmc/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "ssmc/separators.hpp"

namespace ssmc {

ExplicitOracle::ExplicitOracle(std::vector<VertexSet> family)
    : family_(std::move(family)) {
  for (VertexSet& j : family_) {
    if (j.empty())
      throw MalformedInputError("violation family contains an empty set");
    normalize(j);
    d_ = std::max(d_, static_cast<int>(j.size()));
  }
}

std::optional<VertexSet> ExplicitOracle::find_violated(const SkewGraph& g) {
  std::vector<std::int32_t> labels = scc_labels(g);
  for (const VertexSet& j : family_) {
    bool violated = true;
    for (Vertex v : j) {
      if (!g.valid_vertex(v))
        throw MalformedInputError("violation family vertex out of range");
      if (labels[dense_index(v)] != labels[dense_index(-v)]) {
        violated = false;
        break;
      }
    }
    if (violated) return j;
  }
  return std::nullopt;
}

std::pair<ArcId, ArcId> apply_reduction_rule(const SkewGraph& g,
                                             const VertexSet& L,
                                             const ArcSet& s) {
  if (arc_set_symmetry(s).regular)
    throw ContractError("reduction rule requires an irregular separator");
  ArcSet blocked = s;
  for (ArcId a : s) blocked.push_back(conjugate_arc(a));
  std::sort(blocked.begin(), blocked.end());
  blocked.erase(std::unique(blocked.begin(), blocked.end()), blocked.end());

  VertexSet z = reachable(g, L, blocked);
  ArcSet dz = out_cut(g, z);
  internal_check(dz.size() == s.size(),
                 "boundary of R(L, S+S') is not a minimum separator");
  for (ArcId a : dz)
    if (arc_set_contains(dz, conjugate_arc(a))) return {a, conjugate_arc(a)};
  throw InternalError("no conjugate pair on the boundary of R(L, S+S')");
}

bool validate_multicut(SkewGraph& g, const std::vector<VertexSet>& family,
                       const ArcSet& s) {
  for (ArcId a : s) {
    if (a < 0 || a >= g.arc_count()) return false;
    if (!arc_set_contains(s, conjugate_arc(a))) return false;
  }
  MaskGuard guard(g);
  for (ArcId a : s)
    if (!g.is_deleted(a)) g.delete_pair(a);
  std::vector<std::int32_t> labels = scc_labels(g);
  for (const VertexSet& j : family) {
    bool split = false;
    for (Vertex v : j) {
      if (labels[dense_index(v)] != labels[dense_index(-v)]) {
        split = true;
        break;
      }
    }
    if (!split) return false;
  }
  return true;
}

namespace {

enum class NodeKind { Root, OracleBranch, RuleChild, DeleteBranch, GrowBranch };

struct NodeInit {
  NodeKind kind = NodeKind::Root;
  VertexSet terminals;
  int k = 0;
  std::optional<ArcId> delete_pair;
  int parent_lambda = 0;
};

struct Frame {
  NodeInit init;
  bool entered = false;
  std::vector<NodeInit> children;
  size_t next = 0;
};

}  // namespace

std::optional<ArcSet> solve(SkewGraph& g, ViolationOracle& oracle, int k,
                            SolveStats* stats_out) {
  if (k < 0) throw ContractError("solve: negative budget");
  auto t0 = std::chrono::steady_clock::now();
  SolveStats stats;
  MaskGuard guard(g);

  const int d = std::max(1, oracle.d());
  const double leaf_budget = std::pow(2.0 * d, 2.0 * k);

  std::vector<Frame> stack;
  Frame root;
  root.init = NodeInit{NodeKind::Root, {}, k, std::nullopt, 0};
  stack.push_back(std::move(root));
  std::optional<ArcSet> solution;

  while (!stack.empty()) {
    Frame& f = stack.back();
    if (!f.entered) {
      f.entered = true;
      if (f.init.delete_pair) g.delete_pair(*f.init.delete_pair);
      stats.nodes++;
      stats.max_depth = std::max(stats.max_depth, static_cast<int>(stack.size()));

      int lambda = 0;
      if (!f.init.terminals.empty()) {
        int cap = std::max(2 * f.init.k, f.init.parent_lambda);
        auto r = min_separator(g, f.init.terminals, cap);
        lambda = r ? r->lambda : cap + 1;
      }

      // The measure 2k - lambda(L,L') must fall by at least one across every
      // branching edge and stay fixed across a rule application.
      switch (f.init.kind) {
        case NodeKind::Root:
          break;
        case NodeKind::OracleBranch:
          internal_check(lambda >= 1,
                         "branch terminal already separated from conjugate");
          break;
        case NodeKind::RuleChild:
          internal_check(lambda == f.init.parent_lambda - 2,
                         "rule application must lower lambda by exactly 2");
          break;
        case NodeKind::DeleteBranch:
          internal_check(lambda == f.init.parent_lambda - 1,
                         "boundary deletion must lower lambda by exactly 1");
          break;
        case NodeKind::GrowBranch:
          internal_check(lambda > f.init.parent_lambda,
                         "terminal growth must raise lambda");
          break;
      }

      if (f.init.terminals.empty() || lambda == 0) {
        auto violated = oracle.find_violated(g);
        if (!violated) {
          ArcSet sol;
          for (const Frame& fr : stack)
            if (fr.init.delete_pair) {
              sol.push_back(*fr.init.delete_pair);
              sol.push_back(conjugate_arc(*fr.init.delete_pair));
            }
          std::sort(sol.begin(), sol.end());
          stats.leaves++;
          solution = std::move(sol);
          break;
        }
        VertexSet j = *violated;
        normalize(j);
        internal_check(!j.empty() && static_cast<int>(j.size()) <= d,
                       "oracle returned a set outside its declared width");
        if (f.init.k == 0) {
          // Nothing may be deleted, so the violated set stays violated;
          // branching here would only manufacture dead leaves.
          stats.leaves++;
        } else {
          for (Vertex v : j)
            f.children.push_back(
                {NodeKind::OracleBranch, {v}, f.init.k, std::nullopt, lambda});
          for (Vertex v : j)
            f.children.push_back(
                {NodeKind::OracleBranch, {-v}, f.init.k, std::nullopt, lambda});
        }
      } else {
        stats.component_calls++;
        ComponentOutcome out = find_lk_component(g, f.init.terminals, f.init.k);
        if (out.kind == ComponentOutcome::Kind::NoComponent) {
          stats.leaves++;
        } else if (out.kind == ComponentOutcome::Kind::IrregularSeparator) {
          auto [y, yc] = apply_reduction_rule(g, f.init.terminals, out.separator);
          (void)yc;
          stats.rule_applications++;
          f.children.push_back(
              {NodeKind::RuleChild, f.init.terminals, f.init.k - 1, y, lambda});
        } else {
          const VertexSet& z = out.component;
          ArcSet dz = out_cut(g, z);
          internal_check(static_cast<int>(dz.size()) == lambda,
                         "component boundary size differs from lambda");
          internal_check(!dz.empty(), "component with no boundary arcs");

          // One pass over the boundary: the rule fires on the first arc whose
          // conjugate shares a minimum separator with it.
          std::optional<ArcSet> rule_sep;
          for (ArcId a : dz) {
            if (arc_set_contains(dz, conjugate_arc(a))) {
              rule_sep = dz;
              break;
            }
            if (lambda >= 2) {
              auto w =
                  min_separator_containing_pair(g, f.init.terminals, a, lambda);
              if (w) {
                rule_sep = std::move(*w);
                break;
              }
            }
          }
          if (rule_sep) {
            auto [y, yc] =
                apply_reduction_rule(g, f.init.terminals, *rule_sep);
            (void)yc;
            stats.rule_applications++;
            f.children.push_back({NodeKind::RuleChild, f.init.terminals,
                                  f.init.k - 1, y, lambda});
          } else if (lambda == 2 * f.init.k) {
            // With the rule inapplicable, deleting a boundary arc pair lands
            // at lambda-1 > 2(k-1) and growing the terminals pushes lambda
            // past 2k, so both branches are infeasible.
            stats.leaves++;
          } else {
            ArcId a = dz.front();
            f.children.push_back({NodeKind::DeleteBranch, f.init.terminals,
                                  f.init.k - 1, a, lambda});
            Vertex h = g.head(a);
            if (!set_contains(z, -h)) {
              VertexSet grown = z;
              grown.push_back(h);
              normalize(grown);
              f.children.push_back(
                  {NodeKind::GrowBranch, std::move(grown), f.init.k,
                   std::nullopt, lambda});
            }
          }
        }
      }
      continue;
    }

    if (f.next < f.children.size()) {
      Frame next_frame;
      next_frame.init = std::move(f.children[f.next++]);
      stack.push_back(std::move(next_frame));
      continue;
    }
    if (f.init.delete_pair) g.restore_pair(*f.init.delete_pair);
    stack.pop_back();
  }

  internal_check(static_cast<double>(stats.leaves) <= leaf_budget + 0.5,
                 "search tree exceeded the (2d)^mu leaf budget");

  stats.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  if (stats_out) *stats_out = stats;
  return solution;
}

}  // namespace ssmc
