#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace taut {

// ---------------------------------------------------------------------------
// Leg labels
// ---------------------------------------------------------------------------
//
// Legs carry string labels. "U<k>" is the k-th regular leg, "V<k>" the k-th
// frozen leg; any other label is a named leg (used for the dangling half-edges
// of intermediate classes such as factors glued along a node). Extra legs are
// never labeled: they are stored as a per-vertex count.

enum class LegKind { Regular, Frozen, Named };

LegKind leg_kind(std::string_view label);

/// Index k of "U<k>" / "V<k>"; 0 for named legs.
int leg_index(std::string_view label);

/// Total order on labels: frozen by index, then regular by index, then named.
bool label_less(std::string_view a, std::string_view b);

std::string regular_label(int index);
std::string frozen_label(int index);

// ---------------------------------------------------------------------------
// Decorated dual graphs
// ---------------------------------------------------------------------------

struct Vertex {
  int genus = 0;
  int extra = 0;  // number of (unlabeled) extra legs

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct HalfEdge {
  int vertex = 0;
  int exponent = 0;   // psi power; negative values are transient and mean zero
  int partner = -1;   // involution image; -1 for a leg (fixed point)
  std::string label;  // leg label, empty for internal half-edges

  bool is_leg() const { return partner < 0; }

  friend bool operator==(const HalfEdge&, const HalfEdge&) = default;
};

/// A dual graph together with a psi-decoration on its half-edges.
///
/// A plain value type: vertices carry genus and extra-leg counts, half-edges
/// carry their vertex, exponent and involution partner. A graph with all
/// exponents zero is just a dual graph.
struct DecoratedGraph {
  std::vector<Vertex> vertices;
  std::vector<HalfEdge> half_edges;

  int add_vertex(int genus, int extra = 0);
  int add_leg(int vertex, std::string label, int exponent = 0);
  /// Adds the edge {h, h*} with h at `from` and h* at `to`; returns (h, h*).
  std::pair<int, int> add_edge(int from, int to, int exponent_from = 0, int exponent_to = 0);

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_half_edges() const { return static_cast<int>(half_edges.size()); }
  int num_edges() const;
  int total_extra() const;
  int psi_degree() const;
  /// Half-edges attached to v, in index order. Extra legs are not half-edges here.
  std::vector<int> half_edges_at(int v) const;
  /// |H_v| including extra legs.
  int valence(int v) const;
  /// Half-edge carrying the leg `label`, or -1.
  int leg_half_edge(std::string_view label) const;
  /// Leg labels sorted by label_less.
  std::vector<std::string> leg_labels() const;

  friend bool operator==(const DecoratedGraph&, const DecoratedGraph&) = default;
};

using DualGraph = DecoratedGraph;

/// Every violated structural invariant, as human-readable strings; empty means valid.
std::vector<std::string> validate(const DecoratedGraph& g);

/// g(G) = 1 + |E| - |V| + sum of vertex genera.
int genus(const DecoratedGraph& g);

bool is_stable(const DecoratedGraph& g);
bool is_vertex_stable(const DecoratedGraph& g, int v);

/// Complex dimension of the vertex moduli space, 3 g_v - 3 + |H_v|.
int vertex_dimension(const DecoratedGraph& g, int v);

/// Cohomological degree of the class the graph stands for once its extra legs
/// are forgotten: |E| + sum of exponents - number of extra legs.
int class_degree(const DecoratedGraph& g);

// ---------------------------------------------------------------------------
// Canonical forms
// ---------------------------------------------------------------------------

/// Opaque totally ordered isomorphism invariant. Equal keys iff the decorated
/// graphs are isomorphic by a map fixing every leg label.
struct CanonicalKey {
  std::vector<std::int64_t> code;

  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
};

struct CanonicalForm {
  DecoratedGraph graph;  // canonically relabeled representative
  CanonicalKey key;
  std::int64_t automorphisms = 1;
};

CanonicalForm canonical_form(const DecoratedGraph& g);
CanonicalKey canonical_key(const DecoratedGraph& g);

/// Order of the group of decoration- and label-preserving automorphisms.
std::int64_t automorphism_order(const DecoratedGraph& g);

// ---------------------------------------------------------------------------
// Rooted trees
// ---------------------------------------------------------------------------

/// A decorated graph certified to be a tree with a distinguished root carrying
/// every frozen leg. Levels start at 1 on the root.
class RootedTreeView {
 public:
  /// Throws std::invalid_argument when g is not a valid tree or a frozen leg
  /// sits off the root.
  RootedTreeView(DecoratedGraph g, int root);

  const DecoratedGraph& graph() const { return graph_; }
  int root() const { return root_; }
  int level(int v) const { return level_[v]; }
  const std::vector<int>& levels() const { return level_; }
  /// -1 for the root.
  int parent(int v) const { return parent_[v]; }
  /// The half-edge at v on the edge towards its parent; -1 for the root.
  int parent_half_edge(int v) const { return parent_half_edge_[v]; }
  const std::vector<int>& children(int v) const { return children_[v]; }

  /// Regular legs and half-edges pointing to a vertex of higher level.
  bool positively_directed(int h) const;
  std::vector<int> top_vertices() const;
  /// Level of the first branching vertex; nullopt when there is none.
  std::optional<int> branching_height() const;

 private:
  DecoratedGraph graph_;
  int root_;
  std::vector<int> level_;
  std::vector<int> parent_;
  std::vector<int> parent_half_edge_;
  std::vector<std::vector<int>> children_;
};

/// Still stable after deleting all extra legs.
bool is_nondegenerate(const RootedTreeView& t);

/// No extra legs on the root, at least one on every other vertex.
bool is_balanced(const RootedTreeView& t);

}  // namespace taut
