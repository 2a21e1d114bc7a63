#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "debcheck/conflict_scan.hpp"
#include "debcheck/contents.hpp"
#include "debcheck/encoding.hpp"
#include "debcheck/expander.hpp"
#include "debcheck/metadata.hpp"

namespace debcheck::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json package_json(const PackageId& id) { return {{"name", id.name}, {"version", id.version}}; }

json explanation_json(const Explanation& expl) {
  json chains = json::array();
  for (const Chain& chain : expl.chains) {
    json steps = json::array();
    for (const ExplanationStep& step : chain.steps) {
      json available = json::array();
      for (const PackageId& id : step.available) available.push_back(package_json(id));
      steps.push_back({{"package", package_json(step.package)},
                       {"depends", step.relation},
                       {"available", std::move(available)}});
    }
    json terminal;
    if (const auto* c = std::get_if<ConflictsWith>(&chain.terminal)) {
      terminal = {{"type", "conflict"},
                  {"package", package_json(c->package)},
                  {"with", package_json(c->other)}};
    } else {
      terminal = {{"type", "not_available"}};
    }
    chains.push_back({{"steps", std::move(steps)}, {"terminal", std::move(terminal)}});
  }
  return chains;
}

bool shown(const CheckResult& result, Filter filter) {
  switch (filter) {
    case Filter::Failures: return !result.installable();
    case Filter::Successes: return result.installable();
    case Filter::All: return true;
  }
  return true;
}

std::string percent(double fraction) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << fraction * 100 << "%";
  return out.str();
}

void render_text(const RunReport& report, const RunOptions& options, std::ostream& out) {
  for (const auto& [id, result] : report.results) {
    if (!shown(result, options.filter)) continue;
    if (result.installable()) {
      out << to_string(id) << ": installable\n";
      continue;
    }
    out << to_string(id) << ": not installable\n";
    if (options.explain) write_explanation(out, result.explanation(), "  ");
  }
  for (const std::string& name : report.unknown) out << name << ": unknown package\n";
  const WeatherSummary weather = summarize(report.total_packages, report.non_installable);
  out << report.total_packages << " packages, " << report.non_installable << " not installable ("
      << percent(weather.fraction) << "), weather: " << to_string(weather.category) << "\n";
}

void render_json(const RunReport& report, const RunOptions& options, std::ostream& out) {
  const WeatherSummary weather = summarize(report.total_packages, report.non_installable);
  json doc;
  if (options.architecture) doc["architecture"] = *options.architecture;
  doc["packages"] = report.total_packages;
  doc["non_installable"] = report.non_installable;
  doc["fraction"] = weather.fraction;
  doc["weather"] = std::string(to_string(weather.category));
  json results = json::array();
  for (std::size_t i = 0; i < report.results.size(); ++i) {
    const auto& [id, result] = report.results[i];
    if (!shown(result, options.filter)) continue;
    json entry = package_json(id);
    entry["architecture"] = report.architectures[i] ? json(*report.architectures[i]) : json(nullptr);
    entry["installable"] = result.installable();
    if (!result.installable()) entry["explanation"] = explanation_json(result.explanation());
    results.push_back(std::move(entry));
  }
  doc["results"] = std::move(results);
  doc["unknown"] = report.unknown;
  doc["warnings"] = report.warnings;
  if (options.timings) {
    doc["timings"] = {{"parse", report.timings.parse},
                      {"encode", report.timings.encode},
                      {"solve", report.timings.solve}};
  }
  out << doc.dump(2) << "\n";
}

// Resolves "name" (every version) or "name=version" selectors.
std::vector<PackageIndex> select(const Repository& repo, const std::vector<std::string>& checks,
                                 std::vector<std::string>& unknown) {
  std::vector<PackageIndex> selected;
  for (const std::string& sel : checks) {
    const auto eq = sel.find('=');
    if (eq == std::string::npos) {
      const auto versions = repo.versions_of(sel);
      if (versions.empty()) unknown.push_back(sel);
      selected.insert(selected.end(), versions.begin(), versions.end());
    } else if (const auto idx = repo.find({sel.substr(0, eq), sel.substr(eq + 1)})) {
      selected.push_back(*idx);
    } else {
      unknown.push_back(sel);
    }
  }
  std::sort(selected.begin(), selected.end());
  selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
  return selected;
}

} // namespace

int run_debcheck(const RunOptions& options, std::istream& in, std::ostream& out,
                 std::ostream& err) {
  RunReport report;
  auto start = Clock::now();

  std::string text;
  if (options.input) {
    auto content = slurp(*options.input);
    if (!content) {
      err << "debcheck: cannot read " << *options.input << "\n";
      return 2;
    }
    text = std::move(*content);
  } else {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }

  err << "Parsing package file...\n";
  const ParseResult parsed = parse_packages(text);
  for (const ParseDiagnostic& d : parsed.errors) {
    err << "line " << d.line << ": error: " << d.message << "\n";
    report.warnings.push_back("line " + std::to_string(d.line) + ": " + d.message);
  }
  for (const ParseDiagnostic& d : parsed.warnings) {
    err << "line " << d.line << ": warning: " << d.message << "\n";
    report.warnings.push_back("line " + std::to_string(d.line) + ": " + d.message);
  }

  std::map<PackageId, std::optional<std::string>> arch;
  for (const PackageStanza& st : parsed.stanzas) arch[{st.name, st.version}] = st.architecture;

  const std::vector<PackageStanza> expanded = expand(parsed.stanzas);
  Repository repo;
  try {
    repo = build_repository(expanded);
  } catch (const RepositoryError& e) {
    err << "debcheck: " << e.what() << "\n";
    return 2;
  }
  report.timings.parse = seconds_since(start);
  err << repo.size() << " packages\n";

  if (options.dump_expanded) {
    std::ofstream dump(*options.dump_expanded);
    write_packages(dump, expanded);
    if (!dump) {
      err << "debcheck: cannot write " << *options.dump_expanded << "\n";
      return 2;
    }
  }

  start = Clock::now();
  const auto clauses = std::make_shared<const ClauseSet>(encode(repo));
  report.timings.encode = seconds_since(start);
  if (options.dump_dimacs) {
    std::ofstream dump(*options.dump_dimacs);
    write_dimacs(dump, *clauses, repo);
    if (!dump) {
      err << "debcheck: cannot write " << *options.dump_dimacs << "\n";
      return 2;
    }
  }

  start = Clock::now();
  std::vector<std::pair<PackageIndex, CheckResult>> checked;
  if (options.checks.empty()) {
    std::vector<CheckResult> all = check_all(repo, {options.jobs});
    for (PackageIndex p = 0; p < repo.size(); ++p)
      if (!repo.is_virtual(p)) checked.emplace_back(p, std::move(all[p]));
  } else {
    Checker checker(repo, clauses);
    for (const PackageIndex p : select(repo, options.checks, report.unknown))
      checked.emplace_back(p, checker.check(p));
  }
  report.timings.solve = seconds_since(start);

  for (auto& [p, result] : checked) {
    const PackageId& id = repo.package(p);
    const auto it = arch.find(id);
    report.architectures.push_back(it == arch.end() ? std::nullopt : it->second);
    if (!result.installable()) ++report.non_installable;
    report.results.emplace_back(id, std::move(result));
  }
  report.total_packages = report.results.size();

  for (const std::string& name : report.unknown) err << "debcheck: unknown package " << name << "\n";
  err << "Timings: parse " << report.timings.parse << " s, encode " << report.timings.encode
      << " s, solve " << report.timings.solve << " s\n";

  if (options.format == Format::Json) render_json(report, options, out);
  else render_text(report, options, out);

  if (!report.unknown.empty()) return 2;
  return report.non_installable == 0 ? 0 : 1;
}

int run_conflicts(const ConflictsOptions& options, std::ostream& out, std::ostream& err) {
  const auto contents_text = slurp(options.contents);
  if (!contents_text) {
    err << "debcheck: cannot read " << options.contents << "\n";
    return 2;
  }
  const auto packages_text = slurp(options.packages);
  if (!packages_text) {
    err << "debcheck: cannot read " << options.packages << "\n";
    return 2;
  }

  const ContentsIndex index = parse_contents(*contents_text);
  for (const ParseDiagnostic& d : index.warnings)
    err << options.contents << ":" << d.line << ": warning: " << d.message << "\n";
  const ParseResult parsed = parse_packages(*packages_text);
  for (const ParseDiagnostic& d : parsed.errors)
    err << options.packages << ":" << d.line << ": error: " << d.message << "\n";
  for (const ParseDiagnostic& d : parsed.warnings)
    err << options.packages << ":" << d.line << ": warning: " << d.message << "\n";

  Repository repo;
  try {
    repo = repository_from_stanzas(parsed.stanzas);
  } catch (const RepositoryError& e) {
    err << "debcheck: " << e.what() << "\n";
    return 2;
  }

  const std::vector<ConflictCandidate> pairs = shared_file_pairs(index);
  const ClassifiedPairs result = classify_pairs(pairs, repo, parsed.stanzas);
  for (const std::string& w : result.warnings) err << "warning: " << w << "\n";

  std::map<ConflictStatus, std::size_t> counts;
  for (const ConflictCandidate& c : result.classified) ++counts[*c.status];

  if (options.format == Format::Json) {
    json doc;
    doc["shared_pairs"] = pairs.size();
    json by_status = json::object();
    for (const auto s : {ConflictStatus::NotCoinstallable, ConflictStatus::ExcusedByReplaces,
                         ConflictStatus::Candidate})
      by_status[std::string(to_string(s))] = counts[s];
    doc["counts"] = std::move(by_status);
    const auto pair_json = [](const ConflictCandidate& c) {
      json entry = {{"packages", {c.pair.first, c.pair.second}}, {"shared_paths", c.shared_paths}};
      entry["status"] = c.status ? json(std::string(to_string(*c.status))) : json(nullptr);
      return entry;
    };
    json classified = json::array();
    for (const ConflictCandidate& c : result.classified) classified.push_back(pair_json(c));
    json unknown = json::array();
    for (const ConflictCandidate& c : result.unknown) unknown.push_back(pair_json(c));
    doc["pairs"] = std::move(classified);
    doc["unknown"] = std::move(unknown);
    out << doc.dump(2) << "\n";
    return 0;
  }

  out << pairs.size() << " pairs share files: " << counts[ConflictStatus::NotCoinstallable]
      << " not co-installable, " << counts[ConflictStatus::ExcusedByReplaces]
      << " excused by Replaces, " << counts[ConflictStatus::Candidate] << " candidates\n";
  for (const ConflictCandidate& c : result.classified) {
    if (c.status != ConflictStatus::Candidate) continue;
    out << c.pair.first << " <-> " << c.pair.second << "\n";
    const std::size_t n = std::min<std::size_t>(c.shared_paths.size(), 5);
    for (std::size_t i = 0; i < n; ++i) out << "  /" << c.shared_paths[i] << "\n";
    if (c.shared_paths.size() > n) out << "  ... " << c.shared_paths.size() - n << " more\n";
  }
  for (const ConflictCandidate& c : result.unknown)
    out << c.pair.first << " <-> " << c.pair.second << ": not in Packages\n";
  return 0;
}

int run_aggregate(const AggregateOptions& options, std::ostream& out, std::ostream& err) {
  struct Column {
    std::string label;
    std::set<std::string> broken;
    std::set<std::string> specific;  // broken and Architecture is not "all"
  };
  std::vector<Column> columns;
  for (const std::string& path : options.reports) {
    const auto text = slurp(path);
    if (!text) {
      err << "debcheck: cannot read " << path << "\n";
      return 2;
    }
    Column col;
    try {
      const json doc = json::parse(*text);
      col.label = doc.contains("architecture") ? doc["architecture"].get<std::string>()
                                               : std::filesystem::path(path).stem().string();
      for (const json& r : doc.at("results")) {
        if (r.at("installable").get<bool>()) continue;
        const std::string name = r.at("name").get<std::string>();
        col.broken.insert(name);
        const json& a = r.at("architecture");
        if (!a.is_string() || a.get<std::string>() != "all") col.specific.insert(name);
      }
    } catch (const json::exception& e) {
      err << "debcheck: " << path << ": " << e.what() << "\n";
      return 2;
    }
    columns.push_back(std::move(col));
  }

  std::map<std::string, std::size_t> hits;
  std::set<std::string> specific;
  for (const Column& col : columns) {
    for (const std::string& name : col.broken) ++hits[name];
    specific.insert(col.specific.begin(), col.specific.end());
  }
  Column some{"some", {}, {}};
  Column every{"every", {}, {}};
  for (const auto& [name, n] : hits) {
    some.broken.insert(name);
    if (specific.contains(name)) some.specific.insert(name);
    if (n == columns.size()) {
      every.broken.insert(name);
      if (specific.contains(name)) every.specific.insert(name);
    }
  }
  columns.push_back(std::move(some));
  columns.push_back(std::move(every));

  if (options.format == Format::Json) {
    json doc = json::array();
    for (const Column& col : columns)
      doc.push_back({{"label", col.label},
                     {"non_installable", col.broken.size()},
                     {"architecture_specific", col.specific.size()}});
    out << doc.dump(2) << "\n";
  } else {
    for (const Column& col : columns)
      out << col.label << ": " << col.broken.size() << " (" << col.specific.size() << ")\n";
  }
  return 0;
}

int main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  const std::map<std::string, Format> formats = {{"text", Format::Text}, {"json", Format::Json}};
  const std::string sub = argc > 1 ? argv[1] : "";

  const auto parse = [&](CLI::App& app, int skip) -> std::optional<int> {
    std::vector<std::string> args;
    for (int i = argc - 1; i >= 1 + skip; --i) args.emplace_back(argv[i]);
    try {
      app.parse(args);
    } catch (const CLI::ParseError& e) {
      const int status = app.exit(e, out, err);
      return status == 0 ? 0 : 2;
    }
    return std::nullopt;
  };

  if (sub == "conflicts") {
    CLI::App app{"Find packages that share files without being excused", "debcheck conflicts"};
    ConflictsOptions opts;
    app.add_option("--contents", opts.contents, "Contents index")->required();
    app.add_option("--packages", opts.packages, "Packages file")->required();
    app.add_option("--format", opts.format, "text or json")
        ->transform(CLI::CheckedTransformer(formats));
    if (auto status = parse(app, 1)) return *status;
    return run_conflicts(opts, out, err);
  }
  if (sub == "aggregate") {
    CLI::App app{"Combine per-architecture JSON reports", "debcheck aggregate"};
    AggregateOptions opts;
    app.add_option("reports", opts.reports, "JSON reports from debcheck --format=json")
        ->required();
    app.add_option("--format", opts.format, "text or json")
        ->transform(CLI::CheckedTransformer(formats));
    if (auto status = parse(app, 1)) return *status;
    return run_aggregate(opts, out, err);
  }

  CLI::App app{"Check installability of packages in a Packages file", "debcheck"};
  RunOptions opts;
  std::string input;
  app.add_flag("--explain", opts.explain, "Explain why packages are not installable");
  auto* failures = app.add_flag("--failures-only", "Report packages that are not installable");
  auto* successes = app.add_flag("--successes-only", "Report installable packages");
  auto* all = app.add_flag("--all", "Report every package");
  failures->excludes(successes)->excludes(all);
  successes->excludes(all);
  app.add_option("--format", opts.format, "text or json")
      ->transform(CLI::CheckedTransformer(formats));
  app.add_option("--check", opts.checks, "Package to check, as NAME or NAME=VERSION")
      ->allow_extra_args(false);
  app.add_option("--arch", opts.architecture, "Architecture label for JSON reports");
  app.add_option("--dump-dimacs", opts.dump_dimacs, "Write the clause set in DIMACS format");
  app.add_option("--dump-expanded", opts.dump_expanded, "Write the expanded Packages file");
  app.add_option("-j,--jobs", opts.jobs, "Worker threads")->check(CLI::Range(1U, 256U));
  app.add_flag("--timings", opts.timings, "Include timings in the JSON report");
  app.add_option("file", input, "Packages file (default: standard input)");
  if (auto status = parse(app, 0)) return *status;

  if (*successes) opts.filter = Filter::Successes;
  if (*all) opts.filter = Filter::All;
  if (!input.empty() && input != "-") opts.input = input;
  return run_debcheck(opts, in, out, err);
}

} // namespace debcheck::cli
