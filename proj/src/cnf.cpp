#include "ssmc/cnf.hpp"

#include <algorithm>

namespace ssmc {

CnfFormula remove_clauses(const CnfFormula& f, const std::vector<int>& drop) {
  std::vector<char> gone(f.clauses.size(), 0);
  for (int i : drop) {
    if (i < 0 || i >= static_cast<int>(f.clauses.size()))
      throw MalformedInputError("clause index out of range");
    gone[i] = 1;
  }
  CnfFormula out;
  out.n_vars = f.n_vars;
  for (size_t i = 0; i < f.clauses.size(); ++i)
    if (!gone[i]) out.clauses.push_back(f.clauses[i]);
  return out;
}

CnfFormula remove_variables(const CnfFormula& f, const std::vector<int>& vars) {
  std::vector<char> gone(f.n_vars + 1, 0);
  for (int v : vars) {
    if (v < 1 || v > f.n_vars)
      throw MalformedInputError("variable out of range");
    gone[v] = 1;
  }
  CnfFormula out;
  out.n_vars = f.n_vars;
  for (const auto& c : f.clauses) {
    std::vector<int> kept;
    for (int lit : c)
      if (!gone[std::abs(lit)]) kept.push_back(lit);
    if (!kept.empty()) out.clauses.push_back(std::move(kept));
  }
  return out;
}

}  // namespace ssmc
