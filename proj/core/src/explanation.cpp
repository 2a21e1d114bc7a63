#include "debcheck/explanation.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

namespace debcheck {

std::vector<PackageId> Explanation::packages() const {
  std::set<PackageId> all(query.begin(), query.end());
  for (const Chain& chain : chains) {
    for (const ExplanationStep& step : chain.steps) {
      all.insert(step.package);
      all.insert(step.available.begin(), step.available.end());
    }
    if (const auto* c = std::get_if<ConflictsWith>(&chain.terminal)) {
      all.insert(c->package);
      all.insert(c->other);
    }
  }
  return {all.begin(), all.end()};
}

Repository explanation_repository(const Explanation& explanation) {
  RepositoryBuilder builder;
  for (const PackageId& id : explanation.packages()) builder.add_package(id);
  std::set<std::tuple<PackageId, std::string, std::vector<PackageId>>> steps;
  for (const Chain& chain : explanation.chains) {
    for (const ExplanationStep& step : chain.steps) {
      if (steps.emplace(step.package, step.relation, step.available).second)
        builder.add_dependency(step.package, step.available, step.relation);
    }
    if (const auto* c = std::get_if<ConflictsWith>(&chain.terminal))
      builder.add_conflict(c->package, c->other);
  }
  return std::move(builder).build();
}

namespace {

void write_chain(std::ostream& out, const Chain& chain, const std::string& indent) {
  for (const ExplanationStep& step : chain.steps) {
    out << indent << to_string(step.package) << " depends on " << step.relation << " {";
    if (step.available.empty()) {
      out << "NOT AVAILABLE";
    } else {
      for (std::size_t i = 0; i < step.available.size(); ++i)
        out << (i > 0 ? ", " : "") << to_string(step.available[i]);
    }
    out << "}\n";
  }
  if (const auto* c = std::get_if<ConflictsWith>(&chain.terminal))
    out << indent << to_string(c->package) << " conflicts with " << to_string(c->other) << '\n';
}

} // namespace

void write_explanation(std::ostream& out, const Explanation& explanation,
                       const std::string& indent) {
  for (std::size_t i = 0; i < explanation.chains.size(); ++i) {
    if (i > 0) out << indent << "--\n";
    write_chain(out, explanation.chains[i], indent);
  }
}

std::string to_string(const Chain& chain) {
  std::ostringstream out;
  write_chain(out, chain, "");
  return out.str();
}

} // namespace debcheck
