#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ssmc/cnf.hpp"
#include "ssmc/reductions.hpp"
#include "ssmc/skew_graph.hpp"

namespace ssmc {

// On-disk form of a d-Skew-Symmetric Multicut instance. Arc pairs are kept
// as written so emit/parse round-trips exactly; build_graph() materializes
// the skew graph.
struct SsmcInstance {
  int n_pairs = 0;
  int k = 0;
  int d = 1;
  std::vector<std::pair<Vertex, Vertex>> arc_pairs;
  std::vector<VertexSet> family;

  SkewGraph build_graph() const { return SkewGraph::build(n_pairs, arc_pairs); }
};

SsmcInstance parse_ssmc(std::istream& in, const std::string& source);
std::string emit_ssmc(const SsmcInstance& inst);

CnfFormula parse_dimacs_cnf(std::istream& in, const std::string& source);
std::string emit_dimacs_cnf(const CnfFormula& f);

UndirectedGraph parse_dimacs_graph(std::istream& in, const std::string& source);
std::string emit_dimacs_graph(const UndirectedGraph& g);

struct GenSsmcParams {
  std::uint64_t seed = 1;
  int pairs = 6;
  int arc_pairs = 12;
  int tsets = 3;
  int d = 2;
  int k = 1;
};
SsmcInstance gen_ssmc(const GenSsmcParams& p);

CnfFormula gen_cnf(std::uint64_t seed, int vars, int clauses);

UndirectedGraph gen_graph(std::uint64_t seed, int n, double edge_prob);

// The command-line driver behind tools/ssmc. Diagnostics go to err only;
// exit codes: 0 solution / valid, 1 no solution / invalid, 2 usage or
// input errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace ssmc
