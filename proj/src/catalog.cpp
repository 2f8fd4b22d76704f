#include "knotconc/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <stdexcept>

#include "knotconc/errors.hpp"
#include "knotconc/knots.hpp"

namespace knotconc {

namespace {

struct Entry {
  int line = 0;
  std::string key;
  int key_col = 1;
  std::string value;
  int value_col = 1;
};

struct Section {
  std::string kind;
  std::string name;
  int line = 0;
  std::vector<Entry> entries;
};

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
}

bool is_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!is_name_char(c)) return false;
  }
  return true;
}

// Trimmed [begin, end) of s.
std::pair<size_t, size_t> trim_range(std::string_view s, size_t begin, size_t end) {
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return {begin, end};
}

std::vector<Section> split_sections(std::string_view text, bool allow_headerless) {
  std::vector<Section> out;
  if (allow_headerless) out.push_back({"assign", "", 0, {}});
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    size_t end = raw.find('#');
    if (end == std::string_view::npos) end = raw.size();
    auto [b, e] = trim_range(raw, 0, end);
    if (b == e) {
      if (nl == text.size()) break;
      continue;
    }
    if (raw[b] == '[') {
      if (raw[e - 1] != ']') throw ParseError(line_no, static_cast<int>(e), "expected ']'");
      auto [hb, he] = trim_range(raw, b + 1, e - 1);
      size_t sp = hb;
      while (sp < he && !std::isspace(static_cast<unsigned char>(raw[sp]))) ++sp;
      Section s;
      s.kind = std::string(raw.substr(hb, sp - hb));
      s.line = line_no;
      auto [nb, ne] = trim_range(raw, sp, he);
      s.name = std::string(raw.substr(nb, ne - nb));
      if (s.kind != "knot" && s.kind != "template" && s.kind != "expr" && s.kind != "assign") {
        throw ParseError(line_no, static_cast<int>(hb) + 1, "unknown section '" + s.kind + "'");
      }
      if (allow_headerless && s.kind != "assign") {
        throw ParseError(line_no, static_cast<int>(hb) + 1, "only [assign] is allowed here");
      }
      if (s.kind == "assign") {
        if (!s.name.empty()) throw ParseError(line_no, static_cast<int>(nb) + 1, "[assign] takes no name");
      } else if (!is_name(s.name)) {
        throw ParseError(line_no, static_cast<int>(nb) + 1, "expected a name");
      }
      out.push_back(std::move(s));
    } else {
      if (out.empty()) throw ParseError(line_no, static_cast<int>(b) + 1, "entry outside a section");
      const size_t eq = raw.find('=', b);
      if (eq == std::string_view::npos || eq >= e) {
        throw ParseError(line_no, static_cast<int>(b) + 1, "expected 'key = value'");
      }
      auto [kb, ke] = trim_range(raw, b, eq);
      auto [vb, ve] = trim_range(raw, eq + 1, e);
      if (kb == ke) throw ParseError(line_no, static_cast<int>(b) + 1, "missing key");
      out.back().entries.push_back({line_no, std::string(raw.substr(kb, ke - kb)), static_cast<int>(kb) + 1,
                                    std::string(raw.substr(vb, ve - vb)), static_cast<int>(vb) + 1});
    }
    if (nl == text.size()) break;
  }
  return out;
}

bool parse_bool(const Entry& e) {
  if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
  if (e.value == "false" || e.value == "no" || e.value == "0") return false;
  throw ParseError(e.line, e.value_col, "expected true or false");
}

// Comma-separated fields with their columns.
std::vector<std::pair<std::string, int>> split_fields(const std::string& s, int col, char sep = ',') {
  std::vector<std::pair<std::string, int>> out;
  size_t start = 0;
  for (;;) {
    size_t next = s.find(sep, start);
    if (next == std::string::npos) next = s.size();
    auto [b, e] = trim_range(s, start, next);
    out.emplace_back(s.substr(b, e - b), col + static_cast<int>(b));
    if (next == s.size()) break;
    start = next + 1;
  }
  return out;
}

Rational parse_value_rational(const std::string& s, int line, int col) {
  try {
    return parse_rational(s);
  } catch (const std::invalid_argument&) {
    throw ParseError(line, col, "malformed rational '" + s + "'");
  }
}

Interval parse_interval(const Entry& e) {
  const std::string& v = e.value;
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') throw ParseError(e.line, e.value_col + static_cast<int>(v.size()) - 1, "expected ']'");
    const auto fields = split_fields(v.substr(1, v.size() - 2), e.value_col + 1);
    if (fields.size() != 2) throw ParseError(e.line, e.value_col, "expected [lo, hi]");
    const Rational lo = parse_value_rational(fields[0].first, e.line, fields[0].second);
    const Rational hi = parse_value_rational(fields[1].first, e.line, fields[1].second);
    if (lo > hi) throw ParseError(e.line, e.value_col, "interval with lo > hi");
    return Interval::make(lo, hi);
  }
  return Interval::point(parse_value_rational(v, e.line, e.value_col));
}

void assign_entry(Assignment& a, const Entry& e) {
  const Interval v = parse_interval(e);
  if (e.key.find('(') == std::string::npos) {
    if (!is_name(e.key)) throw ParseError(e.line, e.key_col, "expected an atom or a constant name");
    a.set_constant(e.key, v);
    return;
  }
  try {
    a.set(parse_atom(e.key), v);
  } catch (const std::invalid_argument& err) {
    throw ParseError(e.line, e.key_col, err.what());
  }
}

}  // namespace

class CatalogParser {
 public:
  explicit CatalogParser(Catalog& cat) : cat_(cat) {}

  void run(std::string_view text) {
    for (const auto& s : split_sections(text, false)) {
      if (s.kind == "knot") knot(s);
      else if (s.kind == "template") templ(s);
      else if (s.kind == "expr") expr(s);
      else for (const auto& e : s.entries) assign_entry(cat_.assignment_, e);
    }
  }

 private:
  [[noreturn]] static void unknown_key(const Entry& e) { throw ParseError(e.line, e.key_col, "unknown key '" + e.key + "'"); }

  void knot(const Section& s) {
    cat_.define(s.name, Catalog::Kind::Knot, s.line);
    std::vector<std::vector<Rational>> rows;
    bool slice = false, amph = false;
    for (const auto& e : s.entries) {
      if (e.key == "row") {
        std::vector<Rational> row;
        for (const auto& [f, col] : split_fields(e.value, e.value_col)) row.push_back(parse_value_rational(f, e.line, col));
        rows.push_back(std::move(row));
      } else if (e.key == "slice") {
        slice = parse_bool(e);
      } else if (e.key == "amphichiral") {
        amph = parse_bool(e);
      } else {
        unknown_key(e);
      }
    }
    RationalMatrix m(rows.size(), rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw ValidationError(s.name, "Seifert matrix is not square");
      for (size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    try {
      cat_.exprs_[s.name] = KnotExpr::atom(SeifertMatrix(std::move(m), s.name), slice, amph);
    } catch (const InvalidSeifertMatrix& err) {
      throw ValidationError(s.name, err.what());
    }
  }

  void templ(const Section& s) {
    cat_.define(s.name, Catalog::Kind::Template, s.line);
    std::optional<SeifertMatrix> base;
    bool slice = false, amph = false;
    std::vector<Site> sites;
    std::vector<UPoly> ribbon;
    for (const auto& e : s.entries) {
      if (e.key == "base") {
        if (cat_.kind_of(e.value) != Catalog::Kind::Knot) {
          throw ValidationError(s.name, "base '" + e.value + "' is not a knot");
        }
        base = cat_.exprs_.at(e.value)->matrix();
      } else if (e.key == "slice") {
        slice = parse_bool(e);
      } else if (e.key == "amphichiral") {
        amph = parse_bool(e);
      } else if (e.key.rfind("site", 0) == 0 && e.key.size() > 4 && std::isspace(static_cast<unsigned char>(e.key[4]))) {
        auto [nb, ne] = trim_range(e.key, 4, e.key.size());
        Site site;
        site.name = e.key.substr(nb, ne - nb);
        if (!is_name(site.name)) throw ParseError(e.line, e.key_col + static_cast<int>(nb), "expected a site name");
        const auto parts = split_fields(e.value, e.value_col, '|');
        if (parts.size() > 2) throw ParseError(e.line, parts[2].second, "unexpected '|'");
        if (parts.size() == 2) {
          if (parts[1].first == "nondisjoint") site.seifert_disjoint = false;
          else if (parts[1].first != "disjoint") throw ParseError(e.line, parts[1].second, "expected disjoint or nondisjoint");
        }
        for (const auto& [f, col] : split_fields(parts[0].first, parts[0].second)) {
          try {
            site.cls.push_back(parse_laurent(f));
          } catch (const std::invalid_argument& err) {
            throw ParseError(e.line, col, err.what());
          }
        }
        sites.push_back(std::move(site));
      } else if (e.key == "ribbon") {
        try {
          ribbon.push_back(parse_laurent(e.value).split().second);
        } catch (const std::invalid_argument& err) {
          throw ParseError(e.line, e.value_col, err.what());
        }
      } else {
        unknown_key(e);
      }
    }
    if (!base) throw ValidationError(s.name, "missing base");
    cat_.templates_[s.name] = std::make_shared<const Template>(s.name, *base, std::move(sites), slice, ribbon, amph);
  }

  void expr(const Section& s) {
    cat_.define(s.name, Catalog::Kind::Expr, s.line);
    const Entry* value = nullptr;
    for (const auto& e : s.entries) {
      if (e.key != "value") unknown_key(e);
      if (value) throw ParseError(e.line, e.key_col, "duplicate value");
      value = &e;
    }
    if (!value) throw ValidationError(s.name, "missing value");
    ExprReader r{*this, s.name, *value, 0};
    ExprPtr e = r.expr();
    r.ws();
    if (!r.at_end()) r.fail("trailing characters");
    cat_.exprs_[s.name] = e->with_label(s.name);
  }

  struct ExprReader {
    CatalogParser& p;
    const std::string& section;
    const Entry& entry;
    size_t pos;

    const std::string& s() const { return entry.value; }
    bool at_end() const { return pos >= s().size(); }
    void ws() {
      while (!at_end() && std::isspace(static_cast<unsigned char>(s()[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string& msg) const {
      throw ParseError(entry.line, entry.value_col + static_cast<int>(pos), msg);
    }
    void expect(char c) {
      ws();
      if (at_end() || s()[pos] != c) fail(std::string("expected '") + c + "'");
      ++pos;
    }
    bool peek(char c) {
      ws();
      return !at_end() && s()[pos] == c;
    }
    std::string name() {
      ws();
      const size_t start = pos;
      while (!at_end() && is_name_char(s()[pos])) ++pos;
      if (start == pos) fail("expected a name");
      return s().substr(start, pos - start);
    }
    int count() {
      ws();
      const size_t start = pos;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(s()[pos]))) ++pos;
      if (start == pos || pos - start > 6) fail("expected a count");
      return std::stoi(s().substr(start, pos - start));
    }
    TemplatePtr templ() {
      const std::string n = name();
      if (p.cat_.kind_of(n) != Catalog::Kind::Template) throw ValidationError(section, "'" + n + "' is not a template");
      return p.cat_.templates_.at(n);
    }

    ExprPtr expr() {
      ws();
      const size_t start = pos;
      const std::string n = name();
      if (!peek('(')) {
        const auto k = p.cat_.kind_of(n);
        if (!k) throw ValidationError(section, "unknown name '" + n + "'");
        if (*k == Catalog::Kind::Template) throw ValidationError(section, "'" + n + "' is a template, not a knot");
        return p.cat_.exprs_.at(n);
      }
      expect('(');
      ExprPtr out;
      if (n == "iterate") {
        TemplatePtr t = templ();
        expect(',');
        const int k = count();
        expect(',');
        ExprPtr seed = expr();
        out = iterate_operator(t, k, seed);
      } else if (n == "infect") {
        TemplatePtr t = templ();
        expect(',');
        std::map<std::string, ExprPtr> inputs;
        const size_t save = pos;
        name();
        const bool named = peek('=');
        pos = save;
        if (named) {
          do {
            const std::string site = name();
            expect('=');
            if (!inputs.emplace(site, expr()).second) fail("site '" + site + "' assigned twice");
          } while (peek(',') && (expect(','), true));
        } else {
          ExprPtr e = expr();
          for (const auto& site : t->sites()) inputs.emplace(site.name, e);
        }
        try {
          out = infect(t, inputs);
        } catch (const Error& err) {
          throw ValidationError(section, err.what());
        }
      } else if (n == "sum") {
        out = expr();
        int terms = 1;
        while (peek(',')) {
          expect(',');
          out = KnotExpr::sum(out, expr());
          ++terms;
        }
        if (terms < 2) fail("sum needs at least two terms");
      } else if (n == "mirror") {
        ExprPtr e = expr();
        if (e->kind() != KnotExpr::Kind::Atom) throw ValidationError(section, "mirror applies to knots only");
        out = KnotExpr::atom(mirror(e->matrix()), e->slice_flag(), e->amphichiral_flag());
      } else {
        pos = start;
        fail("unknown constructor '" + n + "'");
      }
      expect(')');
      return out;
    }
  };

  Catalog& cat_;
};

Catalog::Catalog() {
  const std::pair<const char*, ExprPtr> knots[] = {{"unknot", builtins::unknot()},
                                                   {"trefoil", builtins::trefoil()},
                                                   {"figure_eight", builtins::figure_eight()},
                                                   {"9_46", builtins::nine_46()}};
  for (const auto& [name, e] : knots) {
    kinds_[name] = Kind::Knot;
    exprs_[name] = e;
  }
  for (const auto& t : {builtins::r946_operator(), builtins::figure_eight_operator()}) {
    kinds_[t->name()] = Kind::Template;
    templates_[t->name()] = t;
  }
}

Catalog Catalog::parse(std::string_view text) {
  Catalog c;
  CatalogParser(c).run(text);
  return c;
}

void Catalog::define(const std::string& name, Kind kind, int) {
  if (is_builtin(name)) throw ValidationError(name, "redefines a built-in");
  if (kinds_.count(name)) throw ValidationError(name, "defined twice");
  kinds_[name] = kind;
  order_.push_back(name);
}

std::optional<Catalog::Kind> Catalog::kind_of(const std::string& name) const {
  auto it = kinds_.find(name);
  if (it == kinds_.end()) return std::nullopt;
  return it->second;
}

bool Catalog::is_builtin(const std::string& name) const {
  return kinds_.count(name) && std::find(order_.begin(), order_.end(), name) == order_.end();
}

ExprPtr Catalog::expr(const std::string& name) const {
  const auto k = kind_of(name);
  if (!k) throw ValidationError(name, "unknown name");
  if (*k == Kind::Template) throw ValidationError(name, "is a template, not a knot");
  return exprs_.at(name);
}

TemplatePtr Catalog::templ(const std::string& name) const {
  if (kind_of(name) != Kind::Template) throw ValidationError(name, "not a template");
  return templates_.at(name);
}

Assignment parse_assignment(std::string_view text) {
  Assignment a;
  for (const auto& s : split_sections(text, true)) {
    for (const auto& e : s.entries) assign_entry(a, e);
  }
  return a;
}

}  // namespace knotconc
