#include "koszulkit/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace koszulkit {

const std::vector<std::string> kKnownTasks = {
    "resolve",   "koszul",     "quasi_koszul", "ext",        "dual",
    "double_dual", "gr",       "opposite",     "as_regular", "self_injective_dual"};

int Quiver::vertex_index(const std::string& name) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == name) return static_cast<int>(i);
  return -1;
}

int Quiver::arrow_index(const std::string& name) const {
  for (std::size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == name) return static_cast<int>(i);
  return -1;
}

int PathWord::source(const Quiver& q) const {
  return arrows.empty() ? start_vertex : q.arrows[arrows.front()].src;
}

int PathWord::target(const Quiver& q) const {
  return arrows.empty() ? start_vertex : q.arrows[arrows.back()].tgt;
}

int PathWord::weight(const Quiver& q) const {
  int w = 0;
  for (int a : arrows) w += q.arrows[a].weight;
  return w;
}

bool PathWord::composable(const Quiver& q) const {
  for (std::size_t i = 0; i + 1 < arrows.size(); ++i)
    if (q.arrows[arrows[i]].tgt != q.arrows[arrows[i + 1]].src) return false;
  return true;
}

std::string PathWord::str(const Quiver& q) const {
  if (arrows.empty()) return "e_" + q.vertices[start_vertex];
  std::string s;
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    if (i) s += "*";
    s += q.arrows[arrows[i]].name;
  }
  return s;
}

namespace {

struct Line {
  int number;
  std::string text;
};

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<Line> logical_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    std::size_t hash = std::string::npos;
    bool in_str = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') in_str = !in_str;
      if (raw[i] == '#' && !in_str) {
        hash = i;
        break;
      }
    }
    std::string t = strip(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (!t.empty()) out.push_back({n, t});
  }
  return out;
}

/// Character cursor over a joined chunk of text, for the bracketed quiver
/// lists. Tracks the original line for diagnostics.
struct Cursor {
  std::string s;
  std::vector<int> line_of;  // per character
  std::size_t i = 0;

  int line() const { return i < line_of.size() ? line_of[i] : (line_of.empty() ? 0 : line_of.back()); }
  int col() const { return static_cast<int>(i) + 1; }

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c))
      throw ParseError(std::string("expected '") + c + "'", line(), col());
  }
  bool peek(char c) {
    skip_ws();
    return i < s.size() && s[i] == c;
  }
  std::string ident() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\''))
      ++i;
    if (i == start) throw ParseError("expected identifier", line(), col());
    return s.substr(start, i - start);
  }
  std::string quoted() {
    skip_ws();
    if (i >= s.size() || s[i] != '"')
      throw ParseError("expected quoted string", line(), col());
    ++i;
    std::size_t start = i;
    while (i < s.size() && s[i] != '"') ++i;
    if (i >= s.size()) throw ParseError("unterminated string", line(), col());
    std::string out = s.substr(start, i - start);
    ++i;
    return out;
  }
  long long integer() {
    skip_ws();
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) throw ParseError("expected integer", line(), col());
    return std::stoll(s.substr(start, i - start));
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
};

Cursor join_lines(const std::vector<Line>& lines, std::size_t from, std::size_t to) {
  Cursor c;
  for (std::size_t k = from; k < to; ++k) {
    for (char ch : lines[k].text) {
      c.s += ch;
      c.line_of.push_back(lines[k].number);
    }
    c.s += '\n';
    c.line_of.push_back(lines[k].number);
  }
  return c;
}

bool looks_numeric(const std::string& tok) {
  if (tok.empty()) return false;
  std::size_t k = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
  if (k >= tok.size()) return false;
  for (; k < tok.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(tok[k])) && tok[k] != '/') return false;
  return true;
}

Relation parse_relation(const std::string& expr, int line, const Quiver& q,
                        const Field& f) {
  Relation rel;
  rel.text = expr;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < expr.size() && std::isspace(static_cast<unsigned char>(expr[i]))) ++i;
  };
  auto token = [&]() -> std::string {
    skip();
    std::size_t start = i;
    if (i < expr.size() &&
        (std::isalnum(static_cast<unsigned char>(expr[i])) || expr[i] == '_' ||
         expr[i] == '\'')) {
      while (i < expr.size() &&
             (std::isalnum(static_cast<unsigned char>(expr[i])) || expr[i] == '_' ||
              expr[i] == '\'' || expr[i] == '/'))
        ++i;
      return expr.substr(start, i - start);
    }
    throw ParseError("expected arrow name or coefficient in relation", line,
                     static_cast<int>(i) + 1);
  };

  bool negate = false;
  skip();
  if (i < expr.size() && (expr[i] == '-' || expr[i] == '+')) {
    negate = expr[i] == '-';
    ++i;
  }
  while (true) {
    RelTerm term;
    term.coeff = negate ? Rational(-1) : Rational(1);
    std::string tok = token();
    if (looks_numeric(tok)) {
      term.coeff = f.mul(term.coeff, f.parse(tok));
      skip();
      if (i >= expr.size() || expr[i] != '*')
        throw ParseError("coefficient must be followed by '*'", line,
                         static_cast<int>(i) + 1);
      ++i;
      tok = token();
    }
    while (true) {
      int a = q.arrow_index(tok);
      if (a < 0)
        throw ParseError("unknown arrow '" + tok + "' in relation", line,
                         static_cast<int>(i) + 1);
      term.path.arrows.push_back(a);
      skip();
      if (i < expr.size() && expr[i] == '*') {
        ++i;
        tok = token();
        continue;
      }
      break;
    }
    if (!term.path.composable(q))
      throw ParseError("path '" + term.path.str(q) + "' is not composable", line,
                       static_cast<int>(i) + 1);
    term.coeff = f.canon(term.coeff);
    if (f.is_zero(term.coeff))
      throw ParseError("zero coefficient in relation", line, static_cast<int>(i) + 1);
    rel.terms.push_back(std::move(term));
    skip();
    if (i >= expr.size()) break;
    if (expr[i] == '+' || expr[i] == '-') {
      negate = expr[i] == '-';
      ++i;
      continue;
    }
    throw ParseError("unexpected character in relation", line,
                     static_cast<int>(i) + 1);
  }

  // combine duplicate paths
  std::vector<RelTerm> combined;
  for (auto& t : rel.terms) {
    bool found = false;
    for (auto& c : combined)
      if (c.path.arrows == t.path.arrows) {
        c.coeff = f.add(c.coeff, t.coeff);
        found = true;
        break;
      }
    if (!found) combined.push_back(t);
  }
  combined.erase(std::remove_if(combined.begin(), combined.end(),
                                [&](const RelTerm& t) { return f.is_zero(t.coeff); }),
                 combined.end());
  if (combined.empty())
    throw ParseError("relation is identically zero", line, 1);
  rel.terms = std::move(combined);
  return rel;
}

std::pair<std::string, std::string> split_assign(const Line& l) {
  std::size_t eq = l.text.find('=');
  if (eq == std::string::npos)
    throw ParseError("expected 'key = value'", l.number, 1);
  return {strip(l.text.substr(0, eq)), strip(l.text.substr(eq + 1))};
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
  std::vector<Line> lines = logical_lines(text);
  if (lines.empty()) throw ParseError("empty input", 1, 1);

  // header
  {
    auto [k, v] = split_assign(lines[0]);
    if (k != "format")
      throw ParseError("input must start with 'format = 1'", lines[0].number, 1);
    if (v != "1")
      throw ParseError("unsupported format version '" + v + "'", lines[0].number, 1);
  }

  // group into sections
  std::map<std::string, std::pair<std::size_t, std::size_t>> sections;
  std::string cur;
  std::size_t cur_start = 1;
  for (std::size_t k = 1; k <= lines.size(); ++k) {
    bool is_header = k < lines.size() && lines[k].text.front() == '[' &&
                     lines[k].text.back() == ']';
    if (k == lines.size() || is_header) {
      if (!cur.empty()) {
        if (sections.count(cur))
          throw ParseError("duplicate section [" + cur + "]", lines[k - 1].number, 1);
        sections[cur] = {cur_start, k};
      } else if (cur_start < k) {
        throw ParseError("content before first section", lines[cur_start].number, 1);
      }
      if (k < lines.size()) {
        cur = lines[k].text.substr(1, lines[k].text.size() - 2);
        cur_start = k + 1;
      }
    }
  }
  for (auto& [name, span] : sections) {
    (void)span;
    if (name != "field" && name != "quiver" && name != "relations" &&
        name != "limits" && name != "tasks")
      throw ParseError("unknown section [" + name + "]", 1, 1);
  }
  for (const char* required : {"field", "quiver", "limits"})
    if (!sections.count(required))
      throw ParseError(std::string("missing section [") + required + "]", 1, 1);

  Presentation p;

  // [field]
  {
    auto [from, to] = sections["field"];
    std::string kind;
    long long prime = 0;
    for (std::size_t k = from; k < to; ++k) {
      auto [key, val] = split_assign(lines[k]);
      if (key == "kind") {
        if (val.size() >= 2 && val.front() == '"' && val.back() == '"')
          val = val.substr(1, val.size() - 2);
        kind = val;
      } else if (key == "p") {
        prime = std::stoll(val);
      } else {
        throw ParseError("unknown key '" + key + "' in [field]", lines[k].number, 1);
      }
    }
    if (kind == "Q") {
      p.field = FieldSpec::rationals();
    } else if (kind == "Fp") {
      if (prime == 0)
        throw ParseError("field kind Fp requires 'p = <prime>'", 1, 1);
      try {
        p.field = FieldSpec::prime(prime);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 1, 1);
      }
    } else {
      throw ParseError("field kind must be \"Q\" or \"Fp\"", 1, 1);
    }
  }

  // [quiver]
  {
    auto [from, to] = sections["quiver"];
    Cursor c = join_lines(lines, from, to);
    bool saw_vertices = false, saw_arrows = false;
    while (!c.done()) {
      std::string key = c.ident();
      c.expect('=');
      if (key == "vertices") {
        saw_vertices = true;
        c.expect('[');
        while (!c.peek(']')) {
          std::string v = c.quoted();
          if (p.quiver.vertex_index(v) >= 0)
            throw ParseError("duplicate vertex '" + v + "'", c.line(), c.col());
          p.quiver.vertices.push_back(v);
          if (!c.eat(',')) break;
        }
        c.expect(']');
      } else if (key == "arrows") {
        saw_arrows = true;
        c.expect('[');
        while (!c.peek(']')) {
          c.expect('{');
          Arrow a;
          a.src = a.tgt = -1;
          a.weight = -1;
          while (!c.peek('}')) {
            std::string f = c.ident();
            c.expect('=');
            if (f == "name") {
              a.name = c.quoted();
            } else if (f == "from" || f == "to") {
              std::string v = c.quoted();
              int vi = p.quiver.vertex_index(v);
              if (vi < 0)
                throw ParseError("unknown vertex '" + v + "'", c.line(), c.col());
              (f == "from" ? a.src : a.tgt) = vi;
            } else if (f == "weight") {
              long long w = c.integer();
              if (w < 0)
                throw ParseError("arrow weight must be >= 0", c.line(), c.col());
              a.weight = static_cast<int>(w);
            } else {
              throw ParseError("unknown arrow field '" + f + "'", c.line(), c.col());
            }
            if (!c.eat(',')) break;
          }
          c.expect('}');
          if (a.name.empty() || a.src < 0 || a.tgt < 0 || a.weight < 0)
            throw ParseError("arrow needs name, from, to, weight", c.line(), c.col());
          if (p.quiver.arrow_index(a.name) >= 0)
            throw ParseError("duplicate arrow '" + a.name + "'", c.line(), c.col());
          p.quiver.arrows.push_back(a);
          if (!c.eat(',')) break;
        }
        c.expect(']');
      } else {
        throw ParseError("unknown key '" + key + "' in [quiver]", c.line(), c.col());
      }
    }
    if (!saw_vertices || p.quiver.vertices.empty())
      throw ParseError("quiver needs a nonempty vertex list", 1, 1);
    if (!saw_arrows)
      throw ParseError("quiver needs an arrows list (may be empty)", 1, 1);
  }

  // [relations]
  if (sections.count("relations")) {
    Field f(p.field);
    auto [from, to] = sections["relations"];
    for (std::size_t k = from; k < to; ++k) {
      std::string expr = lines[k].text;
      if (expr.size() >= 2 && expr.front() == '"' && expr.back() == '"')
        expr = expr.substr(1, expr.size() - 2);
      p.relations.push_back(parse_relation(expr, lines[k].number, p.quiver, f));
    }
  }

  // [limits]
  {
    auto [from, to] = sections["limits"];
    for (std::size_t k = from; k < to; ++k) {
      auto [key, val] = split_assign(lines[k]);
      long long v;
      try {
        v = std::stoll(val);
      } catch (const std::exception&) {
        throw ParseError("limit '" + key + "' must be an integer", lines[k].number, 1);
      }
      if (v < 1)
        throw ParseError("limit '" + key + "' must be >= 1", lines[k].number, 1);
      if (key == "weight_max") p.limits.weight_max = static_cast<int>(v);
      else if (key == "nilpotency_bound") p.limits.nilpotency_bound = static_cast<int>(v);
      else if (key == "hom_max") p.limits.hom_max = static_cast<int>(v);
      else if (key == "jpower_max") p.limits.jpower_max = static_cast<int>(v);
      else
        throw ParseError("unknown limit '" + key + "'", lines[k].number, 1);
    }
  }

  // [tasks]
  if (sections.count("tasks")) {
    auto [from, to] = sections["tasks"];
    for (std::size_t k = from; k < to; ++k) {
      std::istringstream ts(lines[k].text);
      std::string t;
      while (std::getline(ts, t, ',')) {
        t = strip(t);
        if (t.empty()) continue;
        if (std::find(kKnownTasks.begin(), kKnownTasks.end(), t) == kKnownTasks.end())
          throw ParseError("unknown task '" + t + "'", lines[k].number, 1);
        p.tasks.push_back(t);
      }
    }
  }

  return p;
}

std::string serialize_presentation(const Presentation& p) {
  std::ostringstream out;
  out << "format = 1\n\n[field]\n";
  if (p.field.is_rationals()) {
    out << "kind = \"Q\"\n";
  } else {
    out << "kind = \"Fp\"\np = " << p.field.p << "\n";
  }
  out << "\n[quiver]\nvertices = [";
  for (std::size_t i = 0; i < p.quiver.vertices.size(); ++i)
    out << (i ? ", " : "") << '"' << p.quiver.vertices[i] << '"';
  out << "]\narrows = [\n";
  for (const Arrow& a : p.quiver.arrows)
    out << "  {name = \"" << a.name << "\", from = \"" << p.quiver.vertices[a.src]
        << "\", to = \"" << p.quiver.vertices[a.tgt] << "\", weight = " << a.weight
        << "},\n";
  out << "]\n\n[relations]\n";
  for (const Relation& r : p.relations) {
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
      const RelTerm& t = r.terms[i];
      Rational c = t.coeff;
      if (i == 0) {
        if (c == -1) out << "-";
        else if (c != 1) out << Field::to_string(c) << " * ";
      } else {
        bool neg = c < 0 && p.field.is_rationals();
        if (neg) {
          out << " - ";
          c = -c;
        } else {
          out << " + ";
        }
        if (c != 1) out << Field::to_string(c) << " * ";
      }
      out << t.path.str(p.quiver);
    }
    out << "\n";
  }
  out << "\n[limits]\nweight_max = " << p.limits.weight_max
      << "\nnilpotency_bound = " << p.limits.nilpotency_bound
      << "\nhom_max = " << p.limits.hom_max
      << "\njpower_max = " << p.limits.jpower_max << "\n";
  out << "\n[tasks]\n";
  for (const std::string& t : p.tasks) out << t << "\n";
  return out.str();
}

void validate_homogeneity(const Presentation& p) {
  for (std::size_t i = 0; i < p.relations.size(); ++i) {
    const Relation& r = p.relations[i];
    const PathWord& first = r.terms.front().path;
    int src = first.source(p.quiver), tgt = first.target(p.quiver);
    int w = first.weight(p.quiver);
    for (const RelTerm& t : r.terms) {
      if (t.path.source(p.quiver) != src || t.path.target(p.quiver) != tgt)
        throw ParseError("relation " + std::to_string(i + 1) + " ('" + r.text +
                         "') mixes non-parallel paths");
      if (t.path.weight(p.quiver) != w)
        throw ParseError("relation " + std::to_string(i + 1) + " ('" + r.text +
                         "') mixes weights " + std::to_string(w) + " and " +
                         std::to_string(t.path.weight(p.quiver)));
    }
  }
}

Presentation opposite(const Presentation& p) {
  Presentation q = p;
  for (Arrow& a : q.quiver.arrows) std::swap(a.src, a.tgt);
  for (Relation& r : q.relations)
    for (RelTerm& t : r.terms)
      std::reverse(t.path.arrows.begin(), t.path.arrows.end());
  return q;
}

bool operator==(const Presentation& a, const Presentation& b) {
  auto arrow_eq = [](const Arrow& x, const Arrow& y) {
    return x.name == y.name && x.src == y.src && x.tgt == y.tgt && x.weight == y.weight;
  };
  if (!(a.field == b.field) || a.quiver.vertices != b.quiver.vertices) return false;
  if (a.quiver.arrows.size() != b.quiver.arrows.size()) return false;
  for (std::size_t i = 0; i < a.quiver.arrows.size(); ++i)
    if (!arrow_eq(a.quiver.arrows[i], b.quiver.arrows[i])) return false;
  if (a.relations.size() != b.relations.size()) return false;
  for (std::size_t i = 0; i < a.relations.size(); ++i) {
    if (a.relations[i].terms.size() != b.relations[i].terms.size()) return false;
    for (std::size_t j = 0; j < a.relations[i].terms.size(); ++j) {
      if (a.relations[i].terms[j].coeff != b.relations[i].terms[j].coeff) return false;
      if (a.relations[i].terms[j].path.arrows != b.relations[i].terms[j].path.arrows)
        return false;
    }
  }
  return a.limits.weight_max == b.limits.weight_max &&
         a.limits.nilpotency_bound == b.limits.nilpotency_bound &&
         a.limits.hom_max == b.limits.hom_max &&
         a.limits.jpower_max == b.limits.jpower_max && a.tasks == b.tasks;
}

}  // namespace koszulkit
