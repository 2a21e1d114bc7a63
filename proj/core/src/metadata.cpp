#include "debcheck/metadata.hpp"

#include <algorithm>
#include <istream>
#include <iterator>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>
#include <utility>

#include "debcheck/version.hpp"
#include "text.hpp"

namespace debcheck {

std::string_view relation_token(Relation r) {
  switch (r) {
    case Relation::Less: return "<<";
    case Relation::LessEqual: return "<=";
    case Relation::Equal: return "=";
    case Relation::GreaterEqual: return ">=";
    case Relation::Greater: return ">>";
  }
  return "=";
}

bool satisfies(const VersionConstraint& constraint, std::string_view version) {
  const VersionOrdering c = compare_versions(version, constraint.version);
  switch (constraint.relation) {
    case Relation::Less: return c == VersionOrdering::Less;
    case Relation::LessEqual: return c != VersionOrdering::Greater;
    case Relation::Equal: return c == VersionOrdering::Equal;
    case Relation::GreaterEqual: return c != VersionOrdering::Less;
    case Relation::Greater: return c == VersionOrdering::Greater;
  }
  return false;
}

namespace {

bool is_name_terminator(char c) {
  return text::is_blank(c) || c == ',' || c == '|' || c == '(' || c == ')' || c == '[' ||
         c == ']' || c == '<' || c == '>';
}

class RelationScanner {
public:
  explicit RelationScanner(std::string_view s) : s_(s) {}

  bool at_end() {
    skip_blanks();
    return pos_ >= s_.size();
  }
  bool consume(char c) {
    skip_blanks();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::size_t pos() const { return pos_; }

  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    throw DependencyParseError(what + " at offset " + std::to_string(at), at);
  }

  ConstrainedRef ref() {
    skip_blanks();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && !is_name_terminator(s_[pos_])) ++pos_;
    if (pos_ == start) {
      if (pos_ >= s_.size()) fail("expected package name, found end of field", pos_);
      fail(std::string("expected package name, found '") + s_[pos_] + "'", pos_);
    }
    std::string_view name = s_.substr(start, pos_ - start);
    // Multi-arch qualifiers ("python3:any") do not change the target name.
    if (const auto colon = name.find(':'); colon != std::string_view::npos) {
      if (colon == 0) fail("empty package name", start);
      name = name.substr(0, colon);
    }
    ConstrainedRef out{std::string(name), std::nullopt};
    if (consume('(')) out.constraint = constraint();
    return out;
  }

private:
  void skip_blanks() {
    while (pos_ < s_.size() && text::is_blank(s_[pos_])) ++pos_;
  }

  VersionConstraint constraint() {
    skip_blanks();
    const std::size_t rel_start = pos_;
    while (pos_ < s_.size() && (s_[pos_] == '<' || s_[pos_] == '>' || s_[pos_] == '='))
      ++pos_;
    const std::string_view token = s_.substr(rel_start, pos_ - rel_start);
    VersionConstraint out;
    if (token == "<<") out.relation = Relation::Less;
    else if (token == "<=" || token == "<") out.relation = Relation::LessEqual;
    else if (token == "=") out.relation = Relation::Equal;
    else if (token == ">=" || token == ">") out.relation = Relation::GreaterEqual;
    else if (token == ">>") out.relation = Relation::Greater;
    else if (token.empty()) fail("expected version relation", rel_start);
    else fail("unknown version relation '" + std::string(token) + "'", rel_start);

    skip_blanks();
    const std::size_t ver_start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ')' && !text::is_blank(s_[pos_]) && s_[pos_] != ',' &&
           s_[pos_] != '|' && s_[pos_] != '(')
      ++pos_;
    if (pos_ == ver_start) fail("expected version", ver_start);
    out.version = std::string(s_.substr(ver_start, pos_ - ver_start));
    if (!consume(')')) fail("unbalanced parenthesis", pos_);
    return out;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

} // namespace

DependencyExpression parse_dependency_field(std::string_view text) {
  RelationScanner scan(text);
  DependencyExpression expr;
  if (scan.at_end()) return expr;
  while (true) {
    Alternative alt;
    do {
      alt.refs.push_back(scan.ref());
    } while (scan.consume('|'));
    alt.source = render(alt);
    expr.conjuncts.push_back(std::move(alt));
    if (scan.at_end()) break;
    if (!scan.consume(',')) {
      scan.fail(std::string("unexpected character '") + text[scan.pos()] + "'", scan.pos());
    }
  }
  return expr;
}

std::vector<ConstrainedRef> parse_ref_list(std::string_view text) {
  RelationScanner scan(text);
  std::vector<ConstrainedRef> refs;
  if (scan.at_end()) return refs;
  while (true) {
    refs.push_back(scan.ref());
    if (scan.at_end()) break;
    if (scan.consume('|')) scan.fail("alternatives are not allowed here", scan.pos() - 1);
    if (!scan.consume(',')) {
      scan.fail(std::string("unexpected character '") + text[scan.pos()] + "'", scan.pos());
    }
  }
  return refs;
}

namespace {

struct Field {
  std::string value;
  std::size_t line = 0;
};

class StanzaReader {
public:
  explicit StanzaReader(ParseResult& result) : result_(result) {}

  void line(std::size_t number, std::string_view line) {
    if (text::trim(line).empty()) {
      finish();
      return;
    }
    if (line.front() == '#') return;
    if (start_line_ == 0) start_line_ = number;
    if (line.front() == ' ' || line.front() == '\t') {
      if (current_ == nullptr) {
        malformed(number, "continuation line without a field");
        return;
      }
      current_->value.push_back('\n');
      current_->value.append(text::trim(line));
      return;
    }
    const auto colon = line.find(':');
    if (colon == std::string_view::npos || colon == 0) {
      malformed(number, "expected 'Field: value'");
      current_ = nullptr;
      return;
    }
    const std::string key = text::to_lower(text::trim(line.substr(0, colon)));
    auto [it, inserted] = fields_.try_emplace(key);
    if (!inserted) {
      result_.warnings.push_back(
          {number, "field '" + std::string(text::trim(line.substr(0, colon))) +
                       "' repeated in stanza; last value wins"});
    }
    it->second.value = std::string(text::trim(line.substr(colon + 1)));
    it->second.line = number;
    current_ = &it->second;
  }

  void finish() {
    if (start_line_ != 0 && !broken_) build();
    fields_.clear();
    current_ = nullptr;
    start_line_ = 0;
    broken_ = false;
  }

private:
  void malformed(std::size_t number, const std::string& what) {
    if (!broken_) result_.errors.push_back({number, what + "; stanza skipped"});
    broken_ = true;
  }

  const Field* find(const std::string& key) const {
    const auto it = fields_.find(key);
    return it == fields_.end() ? nullptr : &it->second;
  }

  template <class Parse>
  bool relation_field(const std::string& key, Parse&& parse) {
    const Field* f = find(key);
    if (f == nullptr) return true;
    try {
      parse(f->value);
      return true;
    } catch (const DependencyParseError& e) {
      result_.errors.push_back({f->line, key + ": " + e.what() + "; stanza skipped"});
      return false;
    }
  }

  void build() {
    PackageStanza st;
    st.line = start_line_;
    const Field* name = find("package");
    const Field* version = find("version");
    if (name == nullptr || version == nullptr) {
      result_.errors.push_back({start_line_, std::string("stanza lacks a ") +
                                                 (name == nullptr ? "Package" : "Version") +
                                                 " field; stanza skipped"});
      return;
    }
    st.name = name->value;
    st.version = version->value;
    if (st.name.empty() || st.name.find_first_of(" \t\n\r,") != std::string::npos) {
      result_.errors.push_back({name->line, "invalid package name '" + st.name + "'"});
      return;
    }
    if (st.version.empty() || st.version.find_first_of(" \t\n\r") != std::string::npos) {
      result_.errors.push_back({version->line, "invalid version '" + st.version + "'"});
      return;
    }
    if (const Field* arch = find("architecture")) st.architecture = arch->value;

    bool ok = true;
    ok = ok && relation_field("depends", [&](std::string_view v) {
      st.depends = parse_dependency_field(v);
    });
    ok = ok && relation_field("pre-depends", [&](std::string_view v) {
      auto pre = parse_dependency_field(v);
      for (auto& alt : pre.conjuncts) st.depends.conjuncts.push_back(std::move(alt));
    });
    ok = ok && relation_field("conflicts", [&](std::string_view v) {
      st.conflicts = parse_ref_list(v);
    });
    ok = ok && relation_field("provides", [&](std::string_view v) {
      for (auto& ref : parse_ref_list(v)) {
        if (ref.constraint) {
          result_.warnings.push_back({find("provides")->line,
                                      "version on provided name '" + ref.name + "' ignored"});
        }
        st.provides.push_back(std::move(ref.name));
      }
    });
    ok = ok && relation_field("replaces", [&](std::string_view v) {
      for (auto& ref : parse_ref_list(v)) {
        if (ref.constraint) {
          result_.warnings.push_back(
              {find("replaces")->line,
               "version constraint on Replaces '" + ref.name + "' ignored"});
        }
        st.replaces.push_back(std::move(ref.name));
      }
    });
    if (!ok) return;

    auto key = std::make_pair(st.name, st.version);
    if (const auto it = seen_.find(key); it != seen_.end()) {
      result_.warnings.push_back({start_line_, "duplicate stanza for " + st.name + " (= " +
                                                   st.version + "); replacing the one at line " +
                                                   std::to_string(result_.stanzas[it->second].line)});
      result_.stanzas[it->second] = std::move(st);
      return;
    }
    seen_.emplace(std::move(key), result_.stanzas.size());
    result_.stanzas.push_back(std::move(st));
  }

  ParseResult& result_;
  std::map<std::string, Field> fields_;
  Field* current_ = nullptr;
  std::size_t start_line_ = 0;
  bool broken_ = false;
  std::map<std::pair<std::string, std::string>, std::size_t> seen_;
};

} // namespace

ParseResult parse_packages(std::string_view input) {
  ParseResult result;
  const std::string clean = text::sanitize_utf8(input);
  StanzaReader reader(result);
  std::size_t number = 0;
  for (const std::string_view line : text::split_lines(clean)) reader.line(++number, line);
  reader.finish();

  // Conflicts on names nobody defines or provides are harmless but usually a typo.
  std::set<std::string_view> known;
  for (const PackageStanza& st : result.stanzas) {
    known.insert(st.name);
    known.insert(st.provides.begin(), st.provides.end());
  }
  for (const PackageStanza& st : result.stanzas)
    for (const ConstrainedRef& ref : st.conflicts)
      if (!known.contains(ref.name))
        result.warnings.push_back(
            {st.line, st.name + " conflicts with unknown package '" + ref.name + "'"});
  std::stable_sort(result.warnings.begin(), result.warnings.end(),
                   [](const ParseDiagnostic& a, const ParseDiagnostic& b) { return a.line < b.line; });
  return result;
}

ParseResult parse_packages(std::istream& in) {
  const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_packages(std::string_view(data));
}

std::string render(const ConstrainedRef& ref) {
  std::string out = ref.name;
  if (ref.constraint) {
    out += " (";
    out += relation_token(ref.constraint->relation);
    out += ' ';
    out += ref.constraint->version;
    out += ')';
  }
  return out;
}

std::string render(const Alternative& alternative) {
  std::string out;
  for (std::size_t i = 0; i < alternative.refs.size(); ++i) {
    if (i > 0) out += " | ";
    out += render(alternative.refs[i]);
  }
  return out;
}

std::string render(const DependencyExpression& expression) {
  std::string out;
  for (std::size_t i = 0; i < expression.conjuncts.size(); ++i) {
    if (i > 0) out += ", ";
    out += render(expression.conjuncts[i]);
  }
  return out;
}

void write_packages(std::ostream& out, std::span<const PackageStanza> stanzas) {
  const auto join = [](const auto& items, auto&& fn) {
    std::string s;
    for (const auto& item : items) {
      if (!s.empty()) s += ", ";
      s += fn(item);
    }
    return s;
  };
  bool first = true;
  for (const PackageStanza& st : stanzas) {
    if (!first) out << '\n';
    first = false;
    out << "Package: " << st.name << '\n' << "Version: " << st.version << '\n';
    if (st.architecture) out << "Architecture: " << *st.architecture << '\n';
    DependencyExpression satisfiable;
    std::vector<std::string> unavailable;
    for (const Alternative& alt : st.depends.conjuncts) {
      if (alt.refs.empty()) unavailable.push_back(alt.source);
      else satisfiable.conjuncts.push_back(alt);
    }
    if (!satisfiable.empty()) out << "Depends: " << render(satisfiable) << '\n';
    for (const std::string& source : unavailable)
      out << "# unsatisfiable dependency: " << source << '\n';
    if (!st.conflicts.empty()) {
      out << "Conflicts: "
          << join(st.conflicts, [](const ConstrainedRef& r) { return render(r); }) << '\n';
    }
    if (!st.provides.empty())
      out << "Provides: " << join(st.provides, [](const std::string& s) { return s; }) << '\n';
    if (!st.replaces.empty())
      out << "Replaces: " << join(st.replaces, [](const std::string& s) { return s; }) << '\n';
  }
}

} // namespace debcheck
