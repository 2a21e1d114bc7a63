#include "debcheck/expander.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "debcheck/version.hpp"

namespace debcheck {
namespace {

// name -> distinct versions, newest first
using VersionTable = std::map<std::string, std::vector<std::string>, std::less<>>;

VersionTable collect_versions(std::span<const PackageStanza> stanzas) {
  VersionTable table;
  for (const PackageStanza& st : stanzas) {
    auto& versions = table[st.name];
    if (std::find(versions.begin(), versions.end(), st.version) == versions.end())
      versions.push_back(st.version);
  }
  for (auto& [name, versions] : table) {
    std::sort(versions.begin(), versions.end(), [&](const std::string& a, const std::string& b) {
      return PackageId{name, a} < PackageId{name, b};
    });
  }
  return table;
}

void append_unique(std::vector<ConstrainedRef>& out, ConstrainedRef ref) {
  if (std::find(out.begin(), out.end(), ref) == out.end()) out.push_back(std::move(ref));
}

} // namespace

std::vector<PackageStanza> expand_version_constraints(std::span<const PackageStanza> stanzas) {
  const VersionTable versions = collect_versions(stanzas);
  std::set<std::string, std::less<>> provided;
  for (const PackageStanza& st : stanzas)
    for (const std::string& name : st.provides) provided.insert(name);

  const auto expand_ref = [&](const ConstrainedRef& ref, std::vector<ConstrainedRef>& out) {
    const auto it = versions.find(ref.name);
    if (!ref.constraint) {
      if (provided.contains(ref.name)) {
        append_unique(out, ref);
        return;
      }
      if (it == versions.end()) return;
      for (const std::string& v : it->second) append_unique(out, ConstrainedRef::exact(ref.name, v));
      return;
    }
    if (it == versions.end()) return;
    for (const std::string& v : it->second)
      if (satisfies(*ref.constraint, v)) append_unique(out, ConstrainedRef::exact(ref.name, v));
  };

  std::vector<PackageStanza> out(stanzas.begin(), stanzas.end());
  for (PackageStanza& st : out) {
    for (Alternative& alt : st.depends.conjuncts) {
      std::vector<ConstrainedRef> refs;
      for (const ConstrainedRef& ref : alt.refs) expand_ref(ref, refs);
      if (alt.source.empty()) alt.source = render(alt);
      alt.refs = std::move(refs);
    }
    std::vector<ConstrainedRef> conflicts;
    for (const ConstrainedRef& ref : st.conflicts) expand_ref(ref, conflicts);
    st.conflicts = std::move(conflicts);
  }
  return out;
}

std::vector<PackageStanza> expand_virtual_packages(std::span<const PackageStanza> stanzas) {
  const VersionTable versions = collect_versions(stanzas);
  std::map<std::string, std::vector<PackageId>, std::less<>> providers;
  for (const PackageStanza& st : stanzas)
    for (const std::string& name : st.provides) {
      auto& list = providers[name];
      PackageId id{st.name, st.version};
      if (std::find(list.begin(), list.end(), id) == list.end()) list.push_back(std::move(id));
    }
  for (auto& [name, list] : providers) std::sort(list.begin(), list.end());

  const auto real_versions = [&](const std::string& name) -> const std::vector<std::string>* {
    const auto it = versions.find(name);
    return it == versions.end() ? nullptr : &it->second;
  };

  std::vector<PackageStanza> out;
  out.reserve(stanzas.size() + providers.size());
  for (const PackageStanza& in : stanzas) {
    PackageStanza st = in;
    st.provides.clear();

    for (Alternative& alt : st.depends.conjuncts) {
      if (alt.source.empty()) alt.source = render(alt);
      std::vector<ConstrainedRef> refs;
      for (const ConstrainedRef& ref : alt.refs) {
        const auto p = providers.find(ref.name);
        if (ref.constraint || p == providers.end()) {
          append_unique(refs, ref);
          continue;
        }
        if (const auto* real = real_versions(ref.name)) {
          for (const std::string& v : *real) append_unique(refs, ConstrainedRef::exact(ref.name, v));
          for (const PackageId& id : p->second)
            append_unique(refs, ConstrainedRef::exact(id.name, id.version));
        } else {
          append_unique(refs, ConstrainedRef::exact(ref.name, std::string(kVirtualVersion)));
        }
      }
      alt.refs = std::move(refs);
    }

    std::vector<ConstrainedRef> conflicts;
    for (const ConstrainedRef& ref : st.conflicts) {
      const auto p = providers.find(ref.name);
      if (ref.constraint || p == providers.end()) {
        append_unique(conflicts, ref);
        continue;
      }
      if (const auto* real = real_versions(ref.name))
        for (const std::string& v : *real) append_unique(conflicts, ConstrainedRef::exact(ref.name, v));
      for (const PackageId& id : p->second)
        if (id.name != st.name) append_unique(conflicts, ConstrainedRef::exact(id.name, id.version));
    }
    st.conflicts = std::move(conflicts);
    out.push_back(std::move(st));
  }

  for (const auto& [name, list] : providers) {
    if (real_versions(name) != nullptr) continue;
    PackageStanza virt;
    virt.name = name;
    virt.version = std::string(kVirtualVersion);
    virt.synthetic = true;
    Alternative alt;
    for (const PackageId& id : list) alt.refs.push_back(ConstrainedRef::exact(id.name, id.version));
    alt.source = render(alt);
    virt.depends.conjuncts.push_back(std::move(alt));
    out.push_back(std::move(virt));
  }
  return out;
}

std::vector<PackageStanza> expand(std::span<const PackageStanza> stanzas) {
  return expand_virtual_packages(expand_version_constraints(stanzas));
}

Repository repository_from_stanzas(std::span<const PackageStanza> stanzas) {
  return build_repository(expand(stanzas));
}

} // namespace debcheck
