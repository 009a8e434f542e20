#include <cstdlib>
#include <sstream>

#include "stepreach/satcore.hpp"

namespace stepreach::sat {

bool Cnf::has_empty_clause() const {
  for (const auto& c : clauses)
    if (c.empty()) return true;
  return false;
}

std::string Cnf::to_dimacs() const {
  std::ostringstream out;
  out << "p cnf " << num_vars << ' ' << clauses.size() << '\n';
  for (const auto& c : clauses) {
    for (Lit l : c) out << l << ' ';
    out << "0\n";
  }
  return out.str();
}

Cnf add_blocking_clause(Cnf cnf, Clause lits) {
  cnf.add_clause(std::move(lits));
  return cnf;
}

bool satisfies(const Cnf& cnf, const std::vector<bool>& assignment) {
  for (const auto& c : cnf.clauses) {
    bool sat = false;
    for (Lit l : c) {
      const auto v = static_cast<std::size_t>(std::abs(l));
      if (v >= assignment.size()) continue;
      if (assignment[v] == (l > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

}  // namespace stepreach::sat
