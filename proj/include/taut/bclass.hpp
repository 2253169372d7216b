#pragma once

#include <vector>

#include "taut/expression.hpp"

namespace taut {

/// Weights d_1..d_n of the regular legs U1..Un.
using WeightVector = std::vector<int>;

/// A rooted tree with regular legs U1..Un, frozen legs V1..Vm on the root, no
/// extra legs, every top vertex carrying a regular leg.
using TreeShape = RootedTreeView;

/// Extra-leg counts per vertex: 0 on the root, at least 1 elsewhere.
struct ExtraLegAssignment {
  std::vector<int> extra;

  friend bool operator==(const ExtraLegAssignment&, const ExtraLegAssignment&) = default;
};

/// All shapes of genus g with n regular and m frozen legs, duplicate-free.
/// Throws std::invalid_argument when 2g - 2 + n + m <= 0 or n < 1.
std::vector<TreeShape> enumerate_shapes(int g, int n, int m);

/// Exponent per half-edge of the q_d decoration on a balanced tree: d_i on U_i,
/// (extra legs on the child) - 1 on an edge half pointing away from the root,
/// 0 elsewhere. Throws std::invalid_argument when the tree is not balanced.
std::vector<int> q_d_decoration(const RootedTreeView& t, const WeightVector& d);

/// The shape with the given extra-leg counts added.
RootedTreeView with_extra_legs(const TreeShape& shape, const ExtraLegAssignment& a);

/// Assignments whose every vertex satisfies
///   sum q - 3 g_v + 3 - |H_v without extras| <= extras(v) <= sum q;
/// all others push forward to zero.
std::vector<ExtraLegAssignment> enumerate_acceptable(const TreeShape& shape, const WeightVector& d);

/// Sum over the given assignments of [T_p, q_d] with its extra legs kept (the
/// class before e_*).
Expression decorated_trees(const TreeShape& shape, const WeightVector& d,
                           const std::vector<ExtraLegAssignment>& assignments);

/// B(T', d): e_* of the decorated trees over all acceptable assignments.
Expression class_B_of_shape(const TreeShape& shape, const WeightVector& d);

/// B^m_{g,d} = sum over shapes of (-1)^{|E|} B(T', d), on M_{g, n+m}.
Expression class_B(int g, int m, const WeightVector& d);

/// Ambient space of B^m_{g,d}: frozen V1..Vm and regular U1..Un.
AmbientSpace b_ambient(int g, int n, int m);

}  // namespace taut
