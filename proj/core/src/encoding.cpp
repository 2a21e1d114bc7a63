#include "debcheck/encoding.hpp"

#include <ostream>

namespace debcheck {

ClauseSet encode(const Repository& repo) {
  ClauseSet set;
  set.num_vars_ = repo.size();
  const auto close_clause = [&](ClauseOrigin origin) {
    set.offsets_.push_back(set.literals_.size());
    set.origins_.push_back(origin);
  };
  for (PackageIndex p = 0; p < repo.size(); ++p) {
    const auto deps = repo.dependencies(p);
    for (std::uint32_t k = 0; k < deps.size(); ++k) {
      set.literals_.push_back(sat::Literal::negative(ClauseSet::var_of(p)));
      for (const PackageIndex q : deps[k].members)
        set.literals_.push_back(sat::Literal::positive(ClauseSet::var_of(q)));
      close_clause(DependencyEdge{p, k});
    }
  }
  for (const auto& [a, b] : repo.conflicts()) {
    set.literals_.push_back(sat::Literal::negative(ClauseSet::var_of(a)));
    set.literals_.push_back(sat::Literal::negative(ClauseSet::var_of(b)));
    close_clause(ConflictEdge{a, b});
  }
  return set;
}

void write_dimacs(std::ostream& out, const ClauseSet& clauses, const Repository& repo) {
  for (PackageIndex p = 0; p < repo.size(); ++p) {
    const PackageId& id = repo.package(p);
    out << "c " << (ClauseSet::var_of(p) + 1) << ' ' << id.name << ' ' << id.version << '\n';
  }
  out << "p cnf " << clauses.num_vars() << ' ' << clauses.size() << '\n';
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    for (const sat::Literal l : clauses.clause(i))
      out << (l.is_negative() ? "-" : "") << (l.var() + 1) << ' ';
    out << "0\n";
  }
}

} // namespace debcheck
