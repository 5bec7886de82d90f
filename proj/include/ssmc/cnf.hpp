#pragma once

#include <vector>

#include "ssmc/errors.hpp"

namespace ssmc {

// Clause list over signed literals: literal i / -i refers to variable i.
struct CnfFormula {
  int n_vars = 0;
  std::vector<std::vector<int>> clauses;

  int length() const {
    int len = 0;
    for (const auto& c : clauses) len += static_cast<int>(c.size());
    return len;
  }
  int max_width() const {
    int w = 0;
    for (const auto& c : clauses) w = std::max<int>(w, c.size());
    return w;
  }
  void check() const {
    for (const auto& c : clauses) {
      if (c.empty()) throw MalformedInputError("empty clause");
      for (int lit : c)
        if (lit == 0 || lit < -n_vars || lit > n_vars)
          throw MalformedInputError("literal out of range");
    }
  }
};

// F minus a set of clauses, by index.
CnfFormula remove_clauses(const CnfFormula& f, const std::vector<int>& drop);

// F - B: removes every literal whose variable is in B; clauses emptied by
// the removal are dropped (they constrain nothing the callers care about).
CnfFormula remove_variables(const CnfFormula& f, const std::vector<int>& vars);

}  // namespace ssmc
