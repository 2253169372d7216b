#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "taut/expression.hpp"

namespace taut {

class ReduceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Psi elimination
// ---------------------------------------------------------------------------

/// psi at `target` on the genus-0 vertex v (valence a >= 4) rewritten as the sum
/// over nonempty S of the remaining half-edges of the split
/// {target, S, gamma} | {gamma*, rest, partners}. Other decorations ride along.
Expression psi_reduce_genus0(const Term& term, int vertex, int target, std::pair<int, int> partners);

/// psi at `target` on the genus-1 vertex v rewritten as the sum over nonempty S
/// of {target, S, gamma}_0 | {gamma*, rest}_1 plus 1/12 of the bracket of the
/// genus-0 vertex with a new self-edge.
Expression psi_reduce_genus1(const Term& term, int vertex, int target);

/// Partner pair for a genus-0 reduction: V1,V2 when both are present, then
/// legs, then ordinary edge halves, and self-edge halves last.
std::pair<int, int> choose_partners(const DecoratedGraph& g, int vertex, int target);

/// One reduction step on the psi class this library would remove first:
/// genus-1 vertices before genus-0 ones, larger exponents first.
/// Returns nullopt when the term has no psi.
std::optional<Expression> reduce_one_step(const Term& term);

enum class EliminationScope {
  All,                    // until no half-edge carries psi
  TermsWithGenusOneVertex // only terms that still contain a genus-1 vertex
};

/// Removes psi classes by the genus-0/genus-1 formulas. Throws ReduceError on a
/// psi at a vertex of genus >= 2 or on a vertex with extra legs.
Expression eliminate_all_psi(const Expression& e, EliminationScope scope = EliminationScope::All);

/// d_x: inserts a new leg `label` into each vertex in turn and sums.
Expression distribute(const std::string& label, const DecoratedGraph& g, const Rational& coefficient = 1);

// ---------------------------------------------------------------------------
// WDVV relations and the span test
// ---------------------------------------------------------------------------

struct Budget {
  int rounds = 3;
  std::size_t max_relations = 400000;
  int threads = 1;
};

struct RelationBasis {
  AmbientSpace ambient;
  std::vector<Expression> relations;
  std::vector<CanonicalKey> support;
  bool overflow = false;
};

/// WDVV relations (4-point exchange at a genus-0 vertex, remaining half-edges
/// distributed over both sides) at every vertex obtained by contracting an
/// edge between two genus-0 vertices of a support graph, closed under new
/// graphs for `budget.rounds` rounds.
RelationBasis generate_wdvv_relations(const AmbientSpace& ambient, const std::vector<DecoratedGraph>& support,
                                      const Budget& budget = {});

struct ZeroCertificate {
  enum class Outcome { Zero, Unknown, Overflow };
  Outcome outcome = Outcome::Unknown;
  std::vector<std::pair<Rational, Expression>> combination;
  std::size_t relations_used = 0;
  int rounds_used = 0;
};

std::string to_string(ZeroCertificate::Outcome o);

/// Exact span membership of e in the generated WDVV relations, testing after
/// each closure round. Zero carries a combination reproducing e.
ZeroCertificate span_zero_test(const Expression& e, const Budget& budget = {});

/// Whether the certificate's combination sums to e term for term.
bool replay(const ZeroCertificate& certificate, const Expression& e);

// ---------------------------------------------------------------------------
// Integration oracle
// ---------------------------------------------------------------------------

/// Integral over M_{0,n} of prod psi_i^{q_i}: (n-3)!/prod q_i! when the degree
/// matches, else 0.
Rational genus0_integral(const std::vector<int>& q);

/// Integral over M_{1,n} of prod psi_i^{q_i}, by recursion on the genus-1 psi formula.
Rational genus1_integral(const std::vector<int>& q);

/// Sum of coefficient times product of vertex integrals. Throws ReduceError
/// when the degree is not the ambient dimension or a vertex has genus >= 2.
Rational integrate(const Expression& e);

struct Pairing {
  std::vector<int> exponents;  // one per ambient label, in ambient order
  Rational value;
};

/// Integrals of e against every psi monomial on the ambient legs of
/// complementary degree. `degree` is needed only when e is empty.
std::vector<Pairing> pair_with_psi_monomials(const Expression& e, std::optional<int> degree = std::nullopt);

}  // namespace taut
