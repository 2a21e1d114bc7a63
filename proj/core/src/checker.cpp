#include "debcheck/checker.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace debcheck {

namespace {

constexpr std::size_t kMinimizeLimit = 64;
constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

std::vector<sat::Literal> assumptions_for(std::span<const PackageIndex> query) {
  std::vector<sat::Literal> out;
  out.reserve(query.size());
  for (const PackageIndex p : query) out.push_back(sat::Literal::positive(ClauseSet::var_of(p)));
  return out;
}

void load(sat::Solver& solver, const ClauseSet& clauses) {
  for (std::size_t v = 0; v < clauses.num_vars(); ++v) solver.new_var();
  for (std::size_t i = 0; i < clauses.size(); ++i) solver.add_clause(clauses.clause(i));
}

// Plain yes/no check on a small repository, used while minimizing.
bool coinstallable(const Repository& repo, std::span<const PackageId> query) {
  const ClauseSet clauses = encode(repo);
  sat::Solver solver;
  load(solver, clauses);
  std::vector<PackageIndex> idx;
  for (const PackageId& id : query) {
    const auto found = repo.find(id);
    if (!found) return true;  // query dropped from the sub-repository: nothing is shown
    idx.push_back(*found);
  }
  return solver.solve(assumptions_for(idx));
}

// Turns an unsatisfiable core into dependency chains. Core edges that do not
// lie on a path from a query to a terminal (an unsatisfiable relation or a
// conflict) are pruned first; every surviving edge ends up in some chain.
class ExplanationBuilder {
public:
  ExplanationBuilder(const Repository& repo, std::vector<PackageIndex> queries,
                     std::vector<DependencyEdge> deps, std::vector<ConflictEdge> conflicts)
      : repo_(repo), queries_(std::move(queries)), deps_(std::move(deps)),
        conflicts_(std::move(conflicts)) {
    std::sort(queries_.begin(), queries_.end());
    queries_.erase(std::unique(queries_.begin(), queries_.end()), queries_.end());
    const auto by_edge = [](const DependencyEdge& a, const DependencyEdge& b) {
      return std::pair(a.from, a.dependency) < std::pair(b.from, b.dependency);
    };
    std::sort(deps_.begin(), deps_.end(), by_edge);
    for (ConflictEdge& c : conflicts_)
      if (c.first > c.second) std::swap(c.first, c.second);
    std::sort(conflicts_.begin(), conflicts_.end(),
              [](const ConflictEdge& a, const ConflictEdge& b) {
                return std::pair(a.first, a.second) < std::pair(b.first, b.second);
              });
  }

  Explanation build() {
    prune();
    index();
    Explanation expl;
    for (const PackageIndex q : queries_) expl.query.push_back(repo_.package(q));

    std::set<std::string> seen;
    const auto add = [&](Chain chain) {
      if (seen.insert(to_string(chain)).second) expl.chains.push_back(std::move(chain));
    };
    for (const DependencyEdge& e : deps_) {
      Chain chain;
      chain.steps = path_to(e.from);
      chain.steps.push_back(step(e));
      const auto& members = members_of(e);
      if (members.empty()) {
        chain.terminal = NotAvailable{};
      } else {
        PackageIndex best = members.front();
        for (const PackageIndex m : members)
          if (dist_.at(m) < dist_.at(best)) best = m;
        finish(chain, best);
      }
      add(std::move(chain));
    }
    for (const ConflictEdge& c : conflicts_) {
      Chain chain;
      chain.steps = path_to(c.first);
      chain.terminal = ConflictsWith{repo_.package(c.first), repo_.package(c.second)};
      add(std::move(chain));
    }
    return expl;
  }

private:
  const std::vector<PackageIndex>& members_of(const DependencyEdge& e) const {
    return repo_.dependencies(e.from)[e.dependency].members;
  }

  ExplanationStep step(const DependencyEdge& e) const {
    const Dependency& dep = repo_.dependencies(e.from)[e.dependency];
    ExplanationStep s{repo_.package(e.from), dep.source, {}};
    for (const PackageIndex m : dep.members) s.available.push_back(repo_.package(m));
    if (s.relation.empty()) {
      for (const PackageId& id : s.available)
        s.relation += (s.relation.empty() ? "" : " | ") + to_string(id);
    }
    return s;
  }

  void prune() {
    for (bool changed = true; changed;) {
      changed = false;

      std::unordered_set<PackageIndex> reach(queries_.begin(), queries_.end());
      std::deque<PackageIndex> work(queries_.begin(), queries_.end());
      std::unordered_map<PackageIndex, std::vector<std::size_t>> out;
      for (std::size_t i = 0; i < deps_.size(); ++i) out[deps_[i].from].push_back(i);
      while (!work.empty()) {
        const PackageIndex p = work.front();
        work.pop_front();
        const auto it = out.find(p);
        if (it == out.end()) continue;
        for (const std::size_t i : it->second)
          for (const PackageIndex m : members_of(deps_[i]))
            if (reach.insert(m).second) work.push_back(m);
      }
      changed |= std::erase_if(deps_, [&](const DependencyEdge& e) { return !reach.contains(e.from); }) > 0;
      changed |= std::erase_if(conflicts_, [&](const ConflictEdge& c) {
                   return !reach.contains(c.first) || !reach.contains(c.second);
                 }) > 0;

      // Packages from which a terminal can be reached through core edges.
      std::unordered_set<PackageIndex> live;
      std::unordered_map<PackageIndex, std::vector<std::size_t>> containing;
      for (std::size_t i = 0; i < deps_.size(); ++i) {
        if (members_of(deps_[i]).empty()) live.insert(deps_[i].from);
        for (const PackageIndex m : members_of(deps_[i])) containing[m].push_back(i);
      }
      for (const ConflictEdge& c : conflicts_) {
        live.insert(c.first);
        live.insert(c.second);
      }
      work.assign(live.begin(), live.end());
      while (!work.empty()) {
        const PackageIndex p = work.front();
        work.pop_front();
        const auto it = containing.find(p);
        if (it == containing.end()) continue;
        for (const std::size_t i : it->second)
          if (live.insert(deps_[i].from).second) work.push_back(deps_[i].from);
      }
      changed |= std::erase_if(deps_, [&](const DependencyEdge& e) {
                   if (!live.contains(e.from)) return true;
                   const auto& ms = members_of(e);
                   return std::any_of(ms.begin(), ms.end(),
                                      [&](PackageIndex m) { return !live.contains(m); });
                 }) > 0;
    }
  }

  // Parent pointers from the queries, and each package's distance and next
  // hop towards the nearest terminal.
  void index() {
    std::map<PackageIndex, std::vector<std::size_t>> out;
    std::map<PackageIndex, std::vector<std::size_t>> containing;
    for (std::size_t i = 0; i < deps_.size(); ++i) {
      out[deps_[i].from].push_back(i);
      for (const PackageIndex m : members_of(deps_[i])) containing[m].push_back(i);
    }

    std::deque<PackageIndex> work;
    for (const PackageIndex q : queries_) {
      parent_.emplace(q, kUnreached);
      work.push_back(q);
    }
    while (!work.empty()) {
      const PackageIndex p = work.front();
      work.pop_front();
      const auto it = out.find(p);
      if (it == out.end()) continue;
      for (const std::size_t i : it->second)
        for (const PackageIndex m : members_of(deps_[i]))
          if (parent_.emplace(m, static_cast<std::uint32_t>(i)).second) work.push_back(m);
    }

    for (std::size_t i = 0; i < deps_.size(); ++i) {
      if (!members_of(deps_[i]).empty() || terminal_edge_.contains(deps_[i].from)) continue;
      terminal_edge_.emplace(deps_[i].from, static_cast<std::uint32_t>(i));
    }
    for (const ConflictEdge& c : conflicts_) {
      partner_.try_emplace(c.first, c.second);
      if (const auto it = partner_.find(c.second); it == partner_.end() || c.first < it->second)
        partner_[c.second] = c.first;
    }
    std::set<PackageIndex> terminals;
    for (const auto& [p, e] : terminal_edge_) terminals.insert(p);
    for (const auto& [p, q] : partner_) terminals.insert(p);
    for (const PackageIndex t : terminals) {
      dist_.emplace(t, 0);
      work.push_back(t);
    }
    while (!work.empty()) {
      const PackageIndex p = work.front();
      work.pop_front();
      const auto it = containing.find(p);
      if (it == containing.end()) continue;
      for (const std::size_t i : it->second) {
        const PackageIndex src = deps_[i].from;
        if (dist_.contains(src)) continue;
        dist_.emplace(src, dist_.at(p) + 1);
        next_.emplace(src, std::pair(static_cast<std::uint32_t>(i), p));
        work.push_back(src);
      }
    }
  }

  std::vector<ExplanationStep> path_to(PackageIndex p) const {
    std::vector<ExplanationStep> steps;
    for (std::uint32_t e = parent_.at(p); e != kUnreached; e = parent_.at(deps_[e].from))
      steps.push_back(step(deps_[e]));
    std::reverse(steps.begin(), steps.end());
    return steps;
  }

  void finish(Chain& chain, PackageIndex p) const {
    while (dist_.at(p) > 0) {
      const auto [e, next] = next_.at(p);
      chain.steps.push_back(step(deps_[e]));
      p = next;
    }
    if (const auto it = terminal_edge_.find(p); it != terminal_edge_.end()) {
      chain.steps.push_back(step(deps_[it->second]));
      chain.terminal = NotAvailable{};
    } else {
      chain.terminal = ConflictsWith{repo_.package(p), repo_.package(partner_.at(p))};
    }
  }

  const Repository& repo_;
  std::vector<PackageIndex> queries_;
  std::vector<DependencyEdge> deps_;
  std::vector<ConflictEdge> conflicts_;

  std::unordered_map<PackageIndex, std::uint32_t> parent_;  // dep edge, or kUnreached at a query
  std::unordered_map<PackageIndex, std::uint32_t> dist_;
  std::unordered_map<PackageIndex, std::pair<std::uint32_t, PackageIndex>> next_;
  std::unordered_map<PackageIndex, std::uint32_t> terminal_edge_;
  std::unordered_map<PackageIndex, PackageIndex> partner_;
};

// Drops chains, last first, as long as the rest still shows the query is
// not installable.
void minimize(Explanation& expl) {
  if (expl.chains.size() < 2 || expl.chains.size() > kMinimizeLimit) return;
  for (std::size_t i = expl.chains.size(); i-- > 0;) {
    Explanation trial = expl;
    trial.chains.erase(trial.chains.begin() + static_cast<std::ptrdiff_t>(i));
    if (!coinstallable(explanation_repository(trial), trial.query)) expl = std::move(trial);
  }
}

std::vector<PackageIndex> resolve(const Repository& repo, std::span<const PackageId> ids) {
  if (ids.empty()) throw CheckError("empty query");
  std::vector<PackageIndex> out;
  for (const PackageId& id : ids) {
    const auto found = repo.find(id);
    if (!found) throw CheckError(to_string(id) + " is not in the repository");
    out.push_back(*found);
  }
  return out;
}

} // namespace

Checker::Checker(const Repository& repo)
    : Checker(repo, std::make_shared<const ClauseSet>(encode(repo))) {}

Checker::Checker(const Repository& repo, std::shared_ptr<const ClauseSet> clauses)
    : repo_(repo), clauses_(std::move(clauses)) {
  load(solver_, *clauses_);
}

CheckResult Checker::check(std::span<const PackageIndex> query) {
  if (query.empty()) throw CheckError("empty query");
  CheckResult result;
  for (const PackageIndex p : query) result.query.push_back(repo_.package(p));

  last_witness_.clear();
  if (solver_.solve(assumptions_for(query))) {
    auto witness = std::make_shared<Installation>();
    for (const sat::Var v : solver_.true_vars()) {
      last_witness_.push_back(ClauseSet::package_of(v));
      witness->members.insert(repo_.package(ClauseSet::package_of(v)));
    }
    assert(check_health(*witness, repo_).healthy);
    result.verdict = Installable{std::move(witness)};
  } else {
    result.verdict = NotInstallable{explain(query)};
  }
  return result;
}

Explanation Checker::explain(std::span<const PackageIndex> query) {
  std::vector<PackageIndex> queries;
  for (const sat::Literal l : solver_.failed_assumptions())
    queries.push_back(ClauseSet::package_of(l.var()));
  if (queries.empty()) queries.assign(query.begin(), query.end());

  std::vector<DependencyEdge> deps;
  std::vector<ConflictEdge> conflicts;
  for (const sat::ClauseId id : solver_.core()) {
    const ClauseOrigin& origin = clauses_->origin(id);
    if (const auto* d = std::get_if<DependencyEdge>(&origin)) deps.push_back(*d);
    else if (const auto* c = std::get_if<ConflictEdge>(&origin)) conflicts.push_back(*c);
  }
  Explanation expl =
      ExplanationBuilder(repo_, std::move(queries), std::move(deps), std::move(conflicts)).build();
  minimize(expl);
  return expl;
}

CheckResult check_installable(const Repository& repo, const PackageId& package) {
  return check_coinstallable(repo, std::span(&package, 1));
}

CheckResult check_coinstallable(const Repository& repo, std::span<const PackageId> packages) {
  const std::vector<PackageIndex> query = resolve(repo, packages);
  return Checker(repo).check(query);
}

std::vector<CheckResult> check_all(const Repository& repo, const CheckAllOptions& options) {
  const std::size_t n = repo.size();
  std::vector<CheckResult> results(n);
  if (n == 0) return results;
  const auto clauses = std::make_shared<const ClauseSet>(encode(repo));
  const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, n);

  const auto worker = [&](std::size_t w) {
    Checker checker(repo, clauses);
    std::vector<std::shared_ptr<const Installation>> covered(n);
    for (std::size_t p = w; p < n; p += jobs) {
      const auto idx = static_cast<PackageIndex>(p);
      if (covered[p]) {
        results[p].query = {repo.package(idx)};
        results[p].verdict = Installable{covered[p]};
        continue;
      }
      results[p] = checker.check(idx);
      if (!results[p].installable()) continue;
      const auto witness = std::get<Installable>(results[p].verdict).witness;
      for (const PackageIndex m : checker.last_witness()) covered[m] = witness;
    }
  };

  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
  }
  return results;
}

} // namespace debcheck
