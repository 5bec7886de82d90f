#include "doctest.h"

#include "ssmc/components.hpp"
#include "test_util.hpp"

using namespace ssmc;

namespace {

// Properties 1-4 of an (L,k)-component, checked with the reference flow.
bool satisfies_component_properties(const SkewGraph& g, const VertexSet& L,
                                    const VertexSet& z, int lambda, int k) {
  if (!set_symmetry(z).regular) return false;
  for (Vertex v : L)
    if (!set_contains(z, v)) return false;
  // reachable from L inside D[z]
  std::vector<char> in_z(g.vertex_count(), 0);
  for (Vertex v : z) in_z[dense_index(v)] = 1;
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<Vertex> queue;
  for (Vertex v : L)
    if (!seen[dense_index(v)]) {
      seen[dense_index(v)] = 1;
      queue.push_back(v);
    }
  size_t reached = queue.size();
  for (size_t i = 0; i < queue.size(); ++i)
    for (ArcId a : g.out_arcs(queue[i])) {
      if (g.is_deleted(a)) continue;
      int h = dense_index(g.head(a));
      if (in_z[h] && !seen[h]) {
        seen[h] = 1;
        queue.push_back(g.head(a));
        ++reached;
      }
    }
  if (reached != z.size()) return false;
  int zl = test::bf_max_flow(g, z, conjugate_set(z));
  return zl == lambda && lambda <= 2 * k;
}

// Exhaustive maximality: no strict superset of z satisfies properties 1-4.
bool is_maximal_component(const SkewGraph& g, const VertexSet& L,
                          const VertexSet& z, int lambda, int k) {
  VertexSet closure = reachable(g, L);  // property 3 confines supersets here
  VertexSet extras;
  for (Vertex v : closure)
    if (!set_contains(z, v)) extras.push_back(v);
  int n = static_cast<int>(extras.size());
  if (n > 14) return true;  // out of exhaustive range; skip silently
  for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
    VertexSet w = z;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) w.push_back(extras[i]);
    normalize(w);
    if (satisfies_component_properties(g, L, w, lambda, k)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("component on a graph with regular layers") {
  // Single chain 1 -> 2 -> -1 plus forced conjugates; every layer regular.
  SkewGraph g = SkewGraph::build(2, {{1, 2}, {2, -1}});
  VertexSet L{1};
  int lambda = test::bf_lambda(g, L);
  ComponentOutcome out = find_lk_component(g, L, 2);
  REQUIRE(out.kind == ComponentOutcome::Kind::Component);
  CHECK(out.lambda == lambda);
  CHECK(satisfies_component_properties(g, L, out.component, lambda, 2));
  CHECK(is_maximal_component(g, L, out.component, lambda, 2));
}

TEST_CASE("unique conjugate-pair separator is reported irregular") {
  // Three parallel (1,2) pairs, one (2,3) pair, three (3,-1) pairs: the only
  // minimum separator is the (2,3) arc together with its conjugate.
  SkewGraph g = SkewGraph::build(3, {{1, 2},
                                     {1, 2},
                                     {1, 2},
                                     {2, 3},
                                     {3, -1},
                                     {3, -1},
                                     {3, -1}});
  VertexSet L{1};
  int lambda = test::bf_lambda(g, L);
  REQUIRE(lambda == 2);
  auto seps = test::enumerate_min_separators(g, L, lambda);
  REQUIRE(seps.size() == 1);
  CHECK(!arc_set_symmetry(seps[0]).regular);

  ComponentOutcome out = find_lk_component(g, L, 2);
  REQUIRE(out.kind == ComponentOutcome::Kind::IrregularSeparator);
  CHECK(out.separator == seps[0]);
}

TEST_CASE("separator value beyond 2k yields no component") {
  SkewGraph g = SkewGraph::build(1, {{1, -1}});  // lambda = 2
  ComponentOutcome out = find_lk_component(g, {1}, 0);
  CHECK(out.kind == ComponentOutcome::Kind::NoComponent);
}

TEST_CASE("contract violations are rejected") {
  SkewGraph g = SkewGraph::build(2, {{1, 2}});
  CHECK_THROWS_AS(find_lk_component(g, {}, 1), ContractError);
  CHECK_THROWS_AS(find_lk_component(g, {1, -1}, 1), ContractError);
  // No path from {2} to {-2}.
  CHECK_THROWS_AS(find_lk_component(g, {2}, 1), ContractError);
}

TEST_CASE("random component outcomes validate against brute force") {
  SplitMix64 rng(9001);
  int components = 0, irregulars = 0, nones = 0;
  for (int iter = 0; iter < 300; ++iter) {
    int pairs = 2 + static_cast<int>(rng.below(5));
    int arcs = 2 + static_cast<int>(rng.below(11));
    SkewGraph g = test::random_graph(rng, pairs, arcs);
    VertexSet L = test::random_regular_set(rng, pairs, 2);
    if (L.empty()) continue;
    int lambda = test::bf_lambda(g, L);
    if (lambda == 0) continue;
    int k = static_cast<int>(rng.below(4));

    ComponentOutcome out = find_lk_component(g, L, k);
    if (out.kind == ComponentOutcome::Kind::NoComponent) {
      ++nones;
      CHECK(lambda > 2 * k);
      continue;
    }
    CHECK(lambda <= 2 * k);
    CHECK(out.lambda == lambda);
    if (out.kind == ComponentOutcome::Kind::Component) {
      ++components;
      CHECK(satisfies_component_properties(g, L, out.component, lambda, k));
      CHECK(is_maximal_component(g, L, out.component, lambda, k));
    } else {
      ++irregulars;
      CHECK(static_cast<int>(out.separator.size()) == lambda);
      CHECK(!arc_set_symmetry(out.separator).regular);
      CHECK(test::bf_separates(g, L, out.separator));
    }
  }
  CHECK(components > 30);
  CHECK(irregulars > 10);
  CHECK(nones > 10);
}
