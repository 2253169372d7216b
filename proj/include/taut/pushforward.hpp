#pragma once

#include <stdexcept>
#include <vector>

#include "taut/expression.hpp"

namespace taut {

class PushforwardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Exponents = std::vector<int>;

/// D_l(q): tuples p with 0 <= p_i <= q_i and |p| = |q| - l, in lexicographic order.
std::vector<Exponents> d_set(const Exponents& q, int l);

struct PushforwardEntry {
  Exponents p;
  Rational coefficient;  // l! / prod (q_i - p_i)!
};

/// String equation: pushforward of prod psi_i^{q_i} forgetting l points with no psi.
std::vector<PushforwardEntry> string_pushforward_vertex(const Exponents& q, int l);

/// e_*: forgets every extra leg, vertex by vertex. Throws PushforwardError when
/// a vertex is unstable without its extra legs.
Expression forget_extra_legs(const Expression& e);

/// Forgets the l frozen legs of highest index, applying the string equation
/// jointly at each carrying vertex. Extra legs are forgotten first. The
/// forgotten legs must carry no psi, and every vertex must stay stable.
Expression forget_frozen_legs(const Expression& e, int l);

}  // namespace taut
