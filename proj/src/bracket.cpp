#include "taut/bracket.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace taut {

namespace {

struct Item {
  std::string name;
  int exponent = 0;
  std::size_t position = 0;
};

struct Factor {
  int genus = 0;
  std::vector<Item> items;
};

struct RawTerm {
  Rational coefficient = 1;
  std::vector<Factor> factors;
};

bool is_extra_name(std::string_view name) { return !name.empty() && name[0] == 'W'; }

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  std::vector<RawTerm> parse_all() {
    auto terms = parse_expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return terms;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& message) const { throw BracketParseError(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string read_digits() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return text_.substr(start, pos_ - start);
  }

  std::vector<RawTerm> parse_expr() {
    std::vector<RawTerm> out;
    bool first = true;
    while (true) {
      skip_space();
      int sign = 1;
      if (peek('+') || peek('-')) {
        sign = text_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      for (auto& t : parse_term()) {
        t.coefficient *= sign;
        out.push_back(std::move(t));
      }
      first = false;
    }
    return out;
  }

  std::vector<RawTerm> parse_term() {
    skip_space();
    Rational coefficient = 1;
    bool had_coefficient = false;
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::string num = read_digits();
      if (peek('/')) {
        ++pos_;
        num += "/" + read_digits();
      }
      try {
        coefficient = parse_rational(num);
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
      had_coefficient = true;
      if (peek('*')) ++pos_;
    }
    std::vector<RawTerm> product{RawTerm{coefficient, {}}};
    int factors = 0;
    while (peek('<') || peek('(')) {
      std::vector<RawTerm> next;
      if (peek('<')) {
        Factor f = parse_bracket_factor();
        for (auto& t : product) {
          t.factors.push_back(f);
          next.push_back(std::move(t));
        }
      } else {
        ++pos_;
        auto group = parse_expr();
        expect(')');
        for (const auto& a : product)
          for (const auto& b : group) {
            RawTerm t = a;
            t.coefficient *= b.coefficient;
            t.factors.insert(t.factors.end(), b.factors.begin(), b.factors.end());
            next.push_back(std::move(t));
          }
      }
      product = std::move(next);
      ++factors;
    }
    if (factors == 0) {
      if (had_coefficient && coefficient == 0) return {};
      fail("expected '<' or '('");
    }
    return product;
  }

  Factor parse_bracket_factor() {
    expect('<');
    Factor f;
    while (!peek('>')) {
      if (pos_ >= text_.size()) fail("unterminated bracket");
      f.items.push_back(parse_item());
    }
    ++pos_;
    if (f.items.empty()) fail("empty bracket");
    if (pos_ >= text_.size() || text_[pos_] != '_') fail("expected '_' after '>'");
    ++pos_;
    f.genus = std::stoi(read_digits());
    return f;
  }

  std::string parse_name() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      fail("expected a name");
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '*') ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '*') fail("malformed name");
    return text_.substr(start, pos_ - start);
  }

  Item parse_item() {
    skip_space();
    Item item;
    item.position = pos_;
    const bool psi = text_.compare(pos_, 2, "P(") == 0 || text_.compare(pos_, 2, "P^") == 0;
    if (!psi) {
      item.name = parse_name();
      return item;
    }
    ++pos_;
    item.exponent = 1;
    if (text_[pos_] == '^') {
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("malformed exponent");
      const std::string digits = read_digits();
      if (digits.size() > 6) fail("malformed exponent");
      item.exponent = std::stoi(digits);
    }
    expect('(');
    item.name = parse_name();
    expect(')');
    return item;
  }
};

DecoratedGraph build_graph(const RawTerm& t) {
  DecoratedGraph g;
  struct Half {
    int vertex;
    int exponent;
    std::size_t position;
  };
  std::map<std::string, Half> halves;
  std::set<std::string> seen;
  for (const auto& f : t.factors) {
    const int v = g.add_vertex(f.genus);
    for (const auto& item : f.items) {
      if (!seen.insert(item.name).second)
        throw BracketParseError("duplicate name '" + item.name + "'", item.position);
      if (is_extra_name(item.name)) {
        if (item.exponent != 0) throw BracketParseError("extra leg with a psi exponent", item.position);
        ++g.vertices[v].extra;
        continue;
      }
      if (leg_kind(item.name) != LegKind::Named) {
        g.add_leg(v, item.name, item.exponent);
        continue;
      }
      halves.emplace(item.name, Half{v, item.exponent, item.position});
    }
  }
  for (const auto& [name, half] : halves) {
    if (name.back() == '*') {
      if (!halves.count(name.substr(0, name.size() - 1))) g.add_leg(half.vertex, name, half.exponent);
      continue;
    }
    auto it = halves.find(name + "*");
    if (it == halves.end()) {
      g.add_leg(half.vertex, name, half.exponent);
      continue;
    }
    g.add_edge(half.vertex, it->second.vertex, half.exponent, it->second.exponent);
  }
  return g;
}

// Per-vertex lists of (label, exponent) with internal half-edges named e<k>/e<k>*.
std::vector<std::vector<std::pair<std::string, int>>> vertex_items(const DecoratedGraph& g,
                                                                  const std::vector<std::string>& taken) {
  std::vector<std::vector<std::pair<std::string, int>>> out(g.num_vertices());
  std::vector<std::string> names(g.num_half_edges());
  int next = 1;
  auto fresh = [&]() {
    while (true) {
      std::string name = "e" + std::to_string(next++);
      if (std::find(taken.begin(), taken.end(), name) == taken.end() &&
          std::find(taken.begin(), taken.end(), name + "*") == taken.end())
        return name;
    }
  };
  for (int h = 0; h < g.num_half_edges(); ++h) {
    const auto& he = g.half_edges[h];
    if (he.is_leg()) {
      names[h] = he.label;
    } else if (he.partner > h) {
      names[h] = fresh();
      names[he.partner] = names[h] + "*";
    }
  }
  for (int v = 0; v < g.num_vertices(); ++v) {
    std::vector<std::pair<std::string, int>> legs, internal;
    for (int h : g.half_edges_at(v))
      (g.half_edges[h].is_leg() ? legs : internal).emplace_back(names[h], g.half_edges[h].exponent);
    std::sort(legs.begin(), legs.end(), [](const auto& a, const auto& b) { return label_less(a.first, b.first); });
    out[v] = legs;
    out[v].insert(out[v].end(), internal.begin(), internal.end());
    for (int k = 1; k <= g.vertices[v].extra; ++k) out[v].emplace_back("W" + std::to_string(k), 0);
  }
  return out;
}

std::string ascii_factors(const DecoratedGraph& g, const std::vector<std::string>& taken) {
  std::ostringstream os;
  const auto items = vertex_items(g, taken);
  for (int v = 0; v < g.num_vertices(); ++v) {
    os << "<";
    for (std::size_t i = 0; i < items[v].size(); ++i) {
      const auto& [name, exponent] = items[v][i];
      if (i) os << " ";
      if (exponent == 0) os << name;
      else if (exponent == 1) os << "P(" << name << ")";
      else os << "P^" << exponent << "(" << name << ")";
    }
    os << ">_" << g.vertices[v].genus;
  }
  return os.str();
}

std::string latex_name(const std::string& name) {
  std::string base = name;
  std::string star;
  if (!base.empty() && base.back() == '*') {
    base.pop_back();
    star = "^*";
  }
  std::size_t split = base.size();
  while (split > 0 && std::isdigit(static_cast<unsigned char>(base[split - 1]))) --split;
  std::string stem = base.substr(0, split);
  const std::string index = base.substr(split);
  if (stem == "e") stem = "\\gamma";
  if (index.empty()) return stem + star;
  return stem + "_{" + index + "}" + star;
}

}  // namespace

Expression parse_bracket(const std::string& text, const std::optional<AmbientSpace>& ambient) {
  Parser parser(text);
  const auto raw = parser.parse_all();
  std::vector<std::pair<Rational, DecoratedGraph>> graphs;
  std::optional<AmbientSpace> space = ambient;
  for (const auto& t : raw) {
    DecoratedGraph g = build_graph(t);
    if (const auto problems = validate(g); !problems.empty()) throw BracketParseError(problems.front(), 0);
    if (!is_stable(g)) throw BracketParseError("unstable vertex in '" + ascii_factors(g, {}) + "'", 0);
    AmbientSpace a = ambient_of(g);
    if (!space) space = a;
    else if (!(*space == a))
      throw BracketParseError("ambient mismatch: " + describe(a) + " vs " + describe(*space), 0);
    graphs.emplace_back(t.coefficient, std::move(g));
  }
  if (!space) throw BracketParseError("the zero expression needs an explicit ambient space", 0);
  Expression out(*space);
  for (const auto& [c, g] : graphs) out += bracket_class(g, c);
  return out;
}

std::string read_bracket_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string text, line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    text += line;
    text += '\n';
  }
  return text;
}

Expression bracket_class(const DecoratedGraph& g, const Rational& coefficient) {
  Expression out(ambient_of(g));
  out.add_term(coefficient / Rational(automorphism_order(g)), g);
  return out;
}

std::string render_bracket(const DecoratedGraph& g) { return ascii_factors(g, g.leg_labels()); }

std::string render_bracket(const Expression& e) {
  if (e.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, term] : e.terms()) {
    Rational c = term.coefficient * Rational(automorphism_order(term.graph));
    if (c < 0) {
      os << (first ? "-" : " - ");
      c = -c;
    } else if (!first) {
      os << " + ";
    }
    if (c != 1) os << c.get_str() << "*";
    os << ascii_factors(term.graph, e.ambient().labels);
    first = false;
  }
  return os.str();
}

std::string render_latex(const Expression& e) {
  if (e.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, term] : e.terms()) {
    Rational c = term.coefficient * Rational(automorphism_order(term.graph));
    if (c < 0) {
      os << (first ? "-" : " - ");
      c = -c;
    } else if (!first) {
      os << " + ";
    }
    if (c.get_den() != 1) os << "\\frac{" << c.get_num().get_str() << "}{" << c.get_den().get_str() << "}";
    else if (c != 1) os << c.get_str();
    const auto items = vertex_items(term.graph, e.ambient().labels);
    for (int v = 0; v < term.graph.num_vertices(); ++v) {
      os << "\\langle ";
      for (std::size_t i = 0; i < items[v].size(); ++i) {
        const auto& [name, exponent] = items[v][i];
        if (i) os << " ";
        if (exponent == 0) os << latex_name(name);
        else if (exponent == 1) os << "\\Psi(" << latex_name(name) << ")";
        else os << "\\Psi^{" << exponent << "}(" << latex_name(name) << ")";
      }
      os << "\\rangle_{" << term.graph.vertices[v].genus << "}";
    }
    first = false;
  }
  return os.str();
}

}  // namespace taut
