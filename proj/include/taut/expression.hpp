#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "taut/graph.hpp"
#include "taut/rational.hpp"

namespace taut {

/// Thrown for contract violations on expressions (ambient mismatch, mixed
/// degrees, unstable or malformed graphs).
class ExpressionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The moduli space M_{g,n} an expression lives on: a genus and the labels of
/// its marked points, kept sorted by label_less.
struct AmbientSpace {
  int genus = 0;
  std::vector<std::string> labels;

  int dimension() const { return 3 * genus - 3 + static_cast<int>(labels.size()); }
  bool has_label(std::string_view label) const;

  friend bool operator==(const AmbientSpace&, const AmbientSpace&) = default;
};

/// Sorts labels and checks 2g - 2 + n > 0; throws ExpressionError otherwise.
AmbientSpace make_ambient(int genus, std::vector<std::string> labels);

/// Ambient space read off a graph: its genus and leg labels.
AmbientSpace ambient_of(const DecoratedGraph& g);

std::string describe(const AmbientSpace& a);

/// coefficient * (pushforward along the clutching map of the psi monomial).
///
/// Coefficients are NOT divided by |Aut|: the class of a bracket is
/// (1/|Aut|) times this, and that conversion lives in the bracket I/O only.
/// Extra legs on the graph are implicitly forgotten: the term stands for the
/// pushforward forgetting them.
struct Term {
  Rational coefficient;
  DecoratedGraph graph;
};

/// A finite formal rational combination of decorated graphs on one ambient
/// space, always stored normalized: keyed by canonical form, like terms
/// combined, zero coefficients dropped, terms with a negative exponent or a
/// vertex whose psi-degree exceeds its dimension dropped, and all terms of one
/// cohomological degree.
class Expression {
 public:
  explicit Expression(AmbientSpace ambient) : ambient_(std::move(ambient)) {}
  Expression(AmbientSpace ambient, const std::vector<Term>& terms);

  const AmbientSpace& ambient() const { return ambient_; }
  const std::map<CanonicalKey, Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Cohomological degree; nullopt for the empty expression.
  std::optional<int> degree() const;

  /// Normalizing insertion of c * [g].
  void add_term(const Rational& c, const DecoratedGraph& g);

  /// Coefficient of the canonical class of g (zero when absent).
  Rational coefficient(const DecoratedGraph& g) const;

  Expression& operator+=(const Expression& other);
  Expression& operator-=(const Expression& other);
  Expression& operator*=(const Rational& c);

  friend bool operator==(const Expression& a, const Expression& b);

 private:
  AmbientSpace ambient_;
  std::map<CanonicalKey, Term> terms_;
};

Expression normalize(const Expression& e);
Expression add(const Expression& a, const Expression& b);
Expression scale(const Expression& a, const Rational& c);

Expression operator+(Expression a, const Expression& b);
Expression operator-(Expression a, const Expression& b);
Expression operator*(const Rational& c, Expression a);

/// psi_leg^power * e, using the projection formula: the exponent at the half-edge
/// carrying `leg` goes up by `power` on every term.
Expression multiply_by_leg_psi(const Expression& e, std::string_view leg, int power = 1);

/// Whether any term has a positive exponent.
bool has_psi(const Expression& e);

/// Whether any term still carries extra legs.
bool has_extra_legs(const Expression& e);

}  // namespace taut
