#include "taut/bclass.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "taut/pushforward.hpp"

namespace taut {

namespace {

struct Node {
  int genus = 0;
  std::vector<int> legs;
  std::vector<Node> children;
};

// Every way to split `items` into unordered nonempty blocks.
std::vector<std::vector<std::vector<int>>> set_partitions(const std::vector<int>& items) {
  if (items.empty()) return {{}};
  std::vector<std::vector<std::vector<int>>> out;
  const int first = items[0];
  const std::vector<int> rest(items.begin() + 1, items.end());
  const int r = static_cast<int>(rest.size());
  for (int mask = 0; mask < (1 << r); ++mask) {
    std::vector<int> block{first}, others;
    for (int i = 0; i < r; ++i) (mask >> i & 1 ? block : others).push_back(rest[i]);
    for (auto& partition : set_partitions(others)) {
      partition.insert(partition.begin(), block);
      out.push_back(std::move(partition));
    }
  }
  return out;
}

// Nonnegative k-tuples with sum `total`.
std::vector<std::vector<int>> compositions(int total, int k) {
  if (k == 0) return total == 0 ? std::vector<std::vector<int>>{{}} : std::vector<std::vector<int>>{};
  std::vector<std::vector<int>> out;
  for (int x = 0; x <= total; ++x)
    for (auto& tail : compositions(total - x, k - 1)) {
      tail.insert(tail.begin(), x);
      out.push_back(std::move(tail));
    }
  return out;
}

// Subtrees carrying exactly the regular legs `legs` and total genus `genus`.
// `frozen` counts the frozen legs on this vertex and `parent` whether it hangs
// off a parent edge.
std::vector<Node> subtrees(const std::vector<int>& legs, int genus, int frozen, bool parent) {
  std::vector<Node> out;
  const int n = static_cast<int>(legs.size());
  for (int g0 = 0; g0 <= genus; ++g0) {
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> own, rest;
      for (int i = 0; i < n; ++i) (mask >> i & 1 ? own : rest).push_back(legs[i]);
      for (const auto& blocks : set_partitions(rest)) {
        const int k = static_cast<int>(blocks.size());
        if (2 * g0 - 2 + frozen + static_cast<int>(own.size()) + (parent ? 1 : 0) + k <= 0) continue;
        if (k == 0 && own.empty()) continue;
        for (const auto& genera : compositions(genus - g0, k)) {
          std::vector<Node> partial{Node{g0, own, {}}};
          for (int b = 0; b < k; ++b) {
            const auto options = subtrees(blocks[b], genera[b], 0, true);
            std::vector<Node> next;
            for (const auto& base : partial)
              for (const auto& child : options) {
                Node node = base;
                node.children.push_back(child);
                next.push_back(std::move(node));
              }
            partial = std::move(next);
          }
          for (auto& node : partial) out.push_back(std::move(node));
        }
      }
    }
  }
  return out;
}

int build(const Node& node, DecoratedGraph& g) {
  const int v = g.add_vertex(node.genus);
  for (int leg : node.legs) g.add_leg(v, regular_label(leg));
  for (const auto& child : node.children) {
    const int w = build(child, g);
    g.add_edge(v, w);
  }
  return v;
}

}  // namespace

AmbientSpace b_ambient(int g, int n, int m) {
  std::vector<std::string> labels;
  for (int j = 1; j <= m; ++j) labels.push_back(frozen_label(j));
  for (int i = 1; i <= n; ++i) labels.push_back(regular_label(i));
  return make_ambient(g, labels);
}

std::vector<TreeShape> enumerate_shapes(int g, int n, int m) {
  if (n < 1 || m < 0 || g < 0 || 2 * g - 2 + n + m <= 0)
    throw std::invalid_argument("enumerate_shapes: unstable parameters");
  std::vector<int> legs(n);
  for (int i = 0; i < n; ++i) legs[i] = i + 1;
  std::vector<TreeShape> out;
  std::set<CanonicalKey> seen;
  for (const auto& node : subtrees(legs, g, m, false)) {
    DecoratedGraph graph;
    const int root = build(node, graph);
    for (int j = 1; j <= m; ++j) graph.add_leg(root, frozen_label(j));
    DecoratedGraph keyed = graph;
    keyed.add_leg(root, "root");  // the root matters even when m = 0
    if (!seen.insert(canonical_key(keyed)).second) throw std::logic_error("enumerate_shapes: duplicate shape");
    out.emplace_back(std::move(graph), root);
  }
  return out;
}

std::vector<int> q_d_decoration(const RootedTreeView& t, const WeightVector& d) {
  if (!is_balanced(t)) throw std::invalid_argument("q_d decoration needs a balanced tree");
  const auto& g = t.graph();
  std::vector<int> q(g.num_half_edges(), 0);
  for (int h = 0; h < g.num_half_edges(); ++h) {
    const auto& he = g.half_edges[h];
    if (he.is_leg()) {
      if (leg_kind(he.label) != LegKind::Regular) continue;
      const int i = leg_index(he.label);
      if (i > static_cast<int>(d.size())) throw std::invalid_argument("no weight for " + he.label);
      q[h] = d[i - 1];
    } else if (t.positively_directed(h)) {
      q[h] = g.vertices[g.half_edges[he.partner].vertex].extra - 1;
    }
  }
  return q;
}

RootedTreeView with_extra_legs(const TreeShape& shape, const ExtraLegAssignment& a) {
  DecoratedGraph g = shape.graph();
  for (int v = 0; v < g.num_vertices(); ++v) g.vertices[v].extra = a.extra.at(v);
  return RootedTreeView(std::move(g), shape.root());
}

std::vector<ExtraLegAssignment> enumerate_acceptable(const TreeShape& shape, const WeightVector& d) {
  const auto& g = shape.graph();
  const int nv = g.num_vertices();
  std::vector<int> weight(nv, 0);  // regular-leg part of sum q at each vertex
  for (const auto& he : g.half_edges)
    if (he.is_leg() && leg_kind(he.label) == LegKind::Regular) weight[he.vertex] += d.at(leg_index(he.label) - 1);

  // Children before parents.
  std::vector<int> order(nv);
  for (int v = 0; v < nv; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return shape.level(a) > shape.level(b); });

  std::vector<ExtraLegAssignment> out;
  ExtraLegAssignment current{std::vector<int>(nv, 0)};
  std::function<void(int)> rec = [&](int i) {
    if (i == nv) {
      out.push_back(current);
      return;
    }
    const int v = order[i];
    int sum_q = weight[v];
    for (int c : shape.children(v)) sum_q += current.extra[c] - 1;
    const int lower = sum_q - 3 * g.vertices[v].genus + 3 - g.valence(v);
    if (v == shape.root()) {
      if (lower <= 0 && 0 <= sum_q) {
        current.extra[v] = 0;
        rec(i + 1);
      }
      return;
    }
    for (int k = std::max(1, lower); k <= sum_q; ++k) {
      current.extra[v] = k;
      rec(i + 1);
    }
    current.extra[v] = 0;
  };
  rec(0);
  return out;
}

Expression decorated_trees(const TreeShape& shape, const WeightVector& d,
                           const std::vector<ExtraLegAssignment>& assignments) {
  Expression out(ambient_of(shape.graph()));
  for (const auto& a : assignments) {
    RootedTreeView t = with_extra_legs(shape, a);
    DecoratedGraph g = t.graph();
    const auto q = q_d_decoration(t, d);
    for (int h = 0; h < g.num_half_edges(); ++h) g.half_edges[h].exponent = q[h];
    out.add_term(1, g);
  }
  return out;
}

Expression class_B_of_shape(const TreeShape& shape, const WeightVector& d) {
  return forget_extra_legs(decorated_trees(shape, d, enumerate_acceptable(shape, d)));
}

Expression class_B(int g, int m, const WeightVector& d) {
  const int n = static_cast<int>(d.size());
  Expression out(b_ambient(g, n, m));
  for (const auto& shape : enumerate_shapes(g, n, m)) {
    const Rational sign = shape.graph().num_edges() % 2 == 0 ? 1 : -1;
    out += scale(class_B_of_shape(shape, d), sign);
  }
  return out;
}

}  // namespace taut
