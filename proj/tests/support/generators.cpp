#include "generators.hpp"

#include <algorithm>
#include <sstream>

namespace debcheck::testing {

namespace {

unsigned uniform(std::mt19937_64& rng, unsigned lo, unsigned hi) {
  return std::uniform_int_distribution<unsigned>(lo, hi)(rng);
}

bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

} // namespace

Repository random_repository(std::mt19937_64& rng, const RandomRepoParams& params) {
  std::vector<PackageId> ids;
  const unsigned target = uniform(rng, 1, params.max_packages);
  for (unsigned name = 0; ids.size() < target; ++name) {
    const unsigned versions = std::min<unsigned>(uniform(rng, 1, params.max_versions),
                                                 target - static_cast<unsigned>(ids.size()));
    for (unsigned v = 1; v <= versions; ++v)
      ids.push_back({"n" + std::to_string(name), std::to_string(v)});
  }

  RepositoryBuilder builder;
  for (const PackageId& id : ids) builder.add_package(id);
  const auto pick = [&] { return ids[uniform(rng, 0, static_cast<unsigned>(ids.size()) - 1)]; };
  for (const PackageId& id : ids) {
    const unsigned deps = uniform(rng, 0, params.max_dependencies);
    for (unsigned d = 0; d < deps; ++d) {
      // Empty alternatives are rare but must occur.
      const unsigned width = chance(rng, 0.05) ? 0 : uniform(rng, 1, params.max_alternatives);
      std::vector<PackageId> members;
      for (unsigned k = 0; k < width; ++k) members.push_back(pick());
      builder.add_dependency(id, std::move(members));
    }
    for (const PackageId& other : ids)
      if (other.name != id.name && chance(rng, params.conflict_rate / 2)) builder.add_conflict(id, other);
  }
  return std::move(builder).build();
}

std::vector<PackageStanza> random_stanzas(std::mt19937_64& rng, unsigned max_stanzas) {
  static const std::vector<std::string> names = {"a", "b", "c", "d", "e"};
  static const std::vector<std::string> virtuals = {"v", "w", "c"};  // "c" collides with a real name
  std::vector<PackageStanza> out;
  const unsigned count = uniform(rng, 1, max_stanzas);
  std::vector<std::pair<std::string, unsigned>> taken;
  while (out.size() < count) {
    PackageStanza st;
    st.name = names[uniform(rng, 0, static_cast<unsigned>(names.size()) - 1)];
    const unsigned version = uniform(rng, 1, 3);
    if (std::find(taken.begin(), taken.end(), std::pair(st.name, version)) != taken.end()) continue;
    taken.emplace_back(st.name, version);
    st.version = std::to_string(version);
    out.push_back(std::move(st));
  }

  const auto random_ref = [&] {
    ConstrainedRef ref;
    if (chance(rng, 0.25)) {
      ref.name = virtuals[uniform(rng, 0, static_cast<unsigned>(virtuals.size()) - 1)];
    } else {
      ref.name = names[uniform(rng, 0, static_cast<unsigned>(names.size()) - 1)];
    }
    if (chance(rng, 0.5)) {
      const auto rel = static_cast<Relation>(uniform(rng, 0, 4));
      ref.constraint = VersionConstraint{rel, std::to_string(uniform(rng, 0, 4))};
    }
    return ref;
  };

  for (PackageStanza& st : out) {
    for (unsigned d = uniform(rng, 0, 2); d > 0; --d) {
      Alternative alt;
      for (unsigned k = uniform(rng, 1, 3); k > 0; --k) alt.refs.push_back(random_ref());
      st.depends.conjuncts.push_back(std::move(alt));
    }
    for (unsigned c = chance(rng, 0.4) ? uniform(rng, 1, 2) : 0; c > 0; --c)
      st.conflicts.push_back(random_ref());
    if (chance(rng, 0.3)) st.provides.push_back(virtuals[uniform(rng, 0, 2)]);
  }
  return out;
}

std::string synthetic_packages(const SyntheticParams& params) {
  std::mt19937_64 rng(params.seed);
  const unsigned n = params.packages;
  std::ostringstream out;

  // Index i is biased toward small values: most dependencies hit a core of
  // widely used libraries.
  const auto popular = [&](unsigned below) {
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    return std::min(below - 1, static_cast<unsigned>(below * u * u * u));
  };
  const auto name = [](unsigned i) { return "pkg" + std::to_string(i); };
  std::poisson_distribution<unsigned> deps(params.mean_dependencies);
  std::poisson_distribution<unsigned> conflicts(params.conflicts_per_package);

  unsigned emitted = 0;
  for (unsigned i = 0; emitted < n; ++i) {
    const bool two_versions = i % 20 == 7 && emitted + 1 < n;
    for (unsigned v = two_versions ? 2 : 1; v >= 1 && emitted < n; --v, ++emitted) {
      out << "Package: " << name(i) << "\nVersion: " << v << ".0-1\n";
      out << "Architecture: " << (i % 3 == 0 ? "all" : "amd64") << "\n";
      if (i > 0) {
        std::vector<std::string> conjuncts;
        for (unsigned d = deps(rng); d > 0; --d) {
          std::string alt;
          const unsigned width = chance(rng, params.disjunctive_share) ? uniform(rng, 2, 3) : 1;
          for (unsigned k = 0; k < width; ++k) {
            const unsigned target = popular(i);
            std::string ref = name(target);
            if (target % 50 == 13) ref = "virtual" + std::to_string(target % 7);
            else if (target % 20 == 7 && chance(rng, 0.5)) ref += " (>= 1.0)";
            alt += (alt.empty() ? "" : " | ") + ref;
          }
          conjuncts.push_back(std::move(alt));
        }
        if (!conjuncts.empty()) {
          out << "Depends: ";
          for (std::size_t k = 0; k < conjuncts.size(); ++k) out << (k ? ", " : "") << conjuncts[k];
          out << "\n";
        }
      }
      if (unsigned c = conflicts(rng); c > 0) {
        out << "Conflicts: ";
        for (unsigned k = 0; k < c; ++k) out << (k ? ", " : "") << name(uniform(rng, 0, n - 1));
        out << "\n";
      }
      if (i % 40 == 3) out << "Provides: virtual" << i % 7 << "\n";
      out << "\n";
    }
  }
  return out.str();
}

} // namespace debcheck::testing
