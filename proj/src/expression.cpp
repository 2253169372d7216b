#include "taut/expression.hpp"

#include <algorithm>
#include <sstream>

namespace taut {

bool AmbientSpace::has_label(std::string_view label) const {
  return std::find(labels.begin(), labels.end(), label) != labels.end();
}

AmbientSpace make_ambient(int genus, std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end(), [](const auto& a, const auto& b) { return label_less(a, b); });
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
    throw ExpressionError("ambient space: duplicate label");
  if (genus < 0 || 2 * genus - 2 + static_cast<int>(labels.size()) <= 0)
    throw ExpressionError("ambient space is unstable: genus " + std::to_string(genus) + " with " +
                          std::to_string(labels.size()) + " points");
  return AmbientSpace{genus, std::move(labels)};
}

AmbientSpace ambient_of(const DecoratedGraph& g) { return make_ambient(genus(g), g.leg_labels()); }

std::string describe(const AmbientSpace& a) {
  std::ostringstream os;
  os << "M(" << a.genus << "; ";
  for (std::size_t i = 0; i < a.labels.size(); ++i) os << (i ? "," : "") << a.labels[i];
  os << ")";
  return os.str();
}

Expression::Expression(AmbientSpace ambient, const std::vector<Term>& terms) : ambient_(std::move(ambient)) {
  for (const auto& t : terms) add_term(t.coefficient, t.graph);
}

std::optional<int> Expression::degree() const {
  if (terms_.empty()) return std::nullopt;
  return class_degree(terms_.begin()->second.graph);
}

void Expression::add_term(const Rational& coefficient, const DecoratedGraph& g) {
  Rational c = coefficient;
  c.canonicalize();
  if (c == 0) return;
  for (const auto& he : g.half_edges)
    if (he.exponent < 0) return;
  if (const auto problems = validate(g); !problems.empty())
    throw ExpressionError("invalid graph: " + problems.front());
  if (!is_stable(g)) throw ExpressionError("unstable graph in expression");
  if (genus(g) != ambient_.genus)
    throw ExpressionError("graph genus " + std::to_string(genus(g)) + " does not match " + describe(ambient_));
  if (g.leg_labels() != ambient_.labels) throw ExpressionError("graph legs do not match " + describe(ambient_));
  for (int v = 0; v < g.num_vertices(); ++v) {
    int psi = 0;
    for (const auto& he : g.half_edges)
      if (he.vertex == v) psi += he.exponent;
    if (psi > vertex_dimension(g, v)) return;
  }
  if (auto d = degree(); d && *d != class_degree(g))
    throw ExpressionError("mixed degrees: " + std::to_string(*d) + " and " + std::to_string(class_degree(g)));

  CanonicalForm form = canonical_form(g);
  auto it = terms_.find(form.key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(form.key), Term{c, std::move(form.graph)});
    return;
  }
  it->second.coefficient += c;
  if (it->second.coefficient == 0) terms_.erase(it);
}

Rational Expression::coefficient(const DecoratedGraph& g) const {
  auto it = terms_.find(canonical_key(g));
  return it == terms_.end() ? Rational(0) : it->second.coefficient;
}

Expression& Expression::operator+=(const Expression& other) {
  if (!(ambient_ == other.ambient_))
    throw ExpressionError("ambient mismatch: " + describe(ambient_) + " vs " + describe(other.ambient_));
  for (const auto& [key, term] : other.terms_) {
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      if (auto d = degree(); d && *d != class_degree(term.graph))
        throw ExpressionError("mixed degrees in sum");
      terms_.emplace(key, term);
      continue;
    }
    it->second.coefficient += term.coefficient;
    if (it->second.coefficient == 0) terms_.erase(it);
  }
  return *this;
}

Expression& Expression::operator-=(const Expression& other) { return *this += scale(other, -1); }

Expression& Expression::operator*=(const Rational& factor) {
  Rational c = factor;
  c.canonicalize();
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, term] : terms_) term.coefficient *= c;
  return *this;
}

bool operator==(const Expression& a, const Expression& b) {
  if (!(a.ambient_ == b.ambient_) || a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib)
    if (!(ia->first == ib->first) || ia->second.coefficient != ib->second.coefficient) return false;
  return true;
}

Expression normalize(const Expression& e) {
  Expression out(e.ambient());
  for (const auto& [key, term] : e.terms()) out.add_term(term.coefficient, term.graph);
  return out;
}

Expression add(const Expression& a, const Expression& b) {
  Expression out = a;
  out += b;
  return out;
}

Expression scale(const Expression& a, const Rational& c) {
  Expression out = a;
  out *= c;
  return out;
}

Expression operator+(Expression a, const Expression& b) { return a += b; }
Expression operator-(Expression a, const Expression& b) { return a -= b; }
Expression operator*(const Rational& c, Expression a) { return a *= c; }

Expression multiply_by_leg_psi(const Expression& e, std::string_view leg, int power) {
  if (!e.ambient().has_label(leg))
    throw ExpressionError("leg " + std::string(leg) + " is not a marked point of " + describe(e.ambient()));
  if (power < 0) throw ExpressionError("negative psi power");
  Expression out(e.ambient());
  for (const auto& [key, term] : e.terms()) {
    DecoratedGraph g = term.graph;
    g.half_edges[g.leg_half_edge(leg)].exponent += power;
    out.add_term(term.coefficient, g);
  }
  return out;
}

bool has_psi(const Expression& e) {
  for (const auto& [key, term] : e.terms())
    if (term.graph.psi_degree() > 0) return true;
  return false;
}

bool has_extra_legs(const Expression& e) {
  for (const auto& [key, term] : e.terms())
    if (term.graph.total_extra() > 0) return true;
  return false;
}

}  // namespace taut
