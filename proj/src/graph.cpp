#include "taut/graph.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace taut {

namespace {

bool parse_indexed(std::string_view label, char prefix, int& index) {
  if (label.size() < 2 || label[0] != prefix) return false;
  int value = 0;
  auto [ptr, ec] = std::from_chars(label.data() + 1, label.data() + label.size(), value);
  if (ec != std::errc() || ptr != label.data() + label.size() || value <= 0) return false;
  if (label[1] == '0') return false;
  index = value;
  return true;
}

}  // namespace

LegKind leg_kind(std::string_view label) {
  int index = 0;
  if (parse_indexed(label, 'U', index)) return LegKind::Regular;
  if (parse_indexed(label, 'V', index)) return LegKind::Frozen;
  return LegKind::Named;
}

int leg_index(std::string_view label) {
  int index = 0;
  if (parse_indexed(label, 'U', index) || parse_indexed(label, 'V', index)) return index;
  return 0;
}

bool label_less(std::string_view a, std::string_view b) {
  auto rank = [](LegKind k) {
    switch (k) {
      case LegKind::Frozen: return 0;
      case LegKind::Regular: return 1;
      case LegKind::Named: return 2;
    }
    return 2;
  };
  const LegKind ka = leg_kind(a);
  const LegKind kb = leg_kind(b);
  if (ka != kb) return rank(ka) < rank(kb);
  if (ka != LegKind::Named) return leg_index(a) < leg_index(b);
  return a < b;
}

std::string regular_label(int index) { return "U" + std::to_string(index); }
std::string frozen_label(int index) { return "V" + std::to_string(index); }

// ---------------------------------------------------------------------------

int DecoratedGraph::add_vertex(int genus, int extra) {
  vertices.push_back(Vertex{genus, extra});
  return num_vertices() - 1;
}

int DecoratedGraph::add_leg(int vertex, std::string label, int exponent) {
  half_edges.push_back(HalfEdge{vertex, exponent, -1, std::move(label)});
  return num_half_edges() - 1;
}

std::pair<int, int> DecoratedGraph::add_edge(int from, int to, int exponent_from, int exponent_to) {
  const int h = num_half_edges();
  half_edges.push_back(HalfEdge{from, exponent_from, h + 1, {}});
  half_edges.push_back(HalfEdge{to, exponent_to, h, {}});
  return {h, h + 1};
}

int DecoratedGraph::num_edges() const {
  int internal = 0;
  for (const auto& h : half_edges) internal += h.is_leg() ? 0 : 1;
  return internal / 2;
}

int DecoratedGraph::total_extra() const {
  int total = 0;
  for (const auto& v : vertices) total += v.extra;
  return total;
}

int DecoratedGraph::psi_degree() const {
  int total = 0;
  for (const auto& h : half_edges) total += h.exponent;
  return total;
}

std::vector<int> DecoratedGraph::half_edges_at(int v) const {
  std::vector<int> out;
  for (int h = 0; h < num_half_edges(); ++h)
    if (half_edges[h].vertex == v) out.push_back(h);
  return out;
}

int DecoratedGraph::valence(int v) const {
  int count = vertices[v].extra;
  for (const auto& h : half_edges) count += h.vertex == v ? 1 : 0;
  return count;
}

int DecoratedGraph::leg_half_edge(std::string_view label) const {
  for (int h = 0; h < num_half_edges(); ++h)
    if (half_edges[h].is_leg() && half_edges[h].label == label) return h;
  return -1;
}

std::vector<std::string> DecoratedGraph::leg_labels() const {
  std::vector<std::string> out;
  for (const auto& h : half_edges)
    if (h.is_leg()) out.push_back(h.label);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return label_less(a, b); });
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::string> validate(const DecoratedGraph& g) {
  std::vector<std::string> problems;
  const int nv = g.num_vertices();
  const int nh = g.num_half_edges();
  if (nv == 0) problems.push_back("no vertices");
  for (int v = 0; v < nv; ++v) {
    if (g.vertices[v].genus < 0) problems.push_back("negative genus at vertex " + std::to_string(v));
    if (g.vertices[v].extra < 0) problems.push_back("negative extra count at vertex " + std::to_string(v));
  }
  bool involution_ok = true;
  for (int h = 0; h < nh; ++h) {
    const auto& he = g.half_edges[h];
    if (he.vertex < 0 || he.vertex >= nv)
      problems.push_back("half-edge " + std::to_string(h) + " attached to no vertex");
    if (he.partner >= nh || he.partner == h) {
      involution_ok = false;
    } else if (he.partner >= 0 && g.half_edges[he.partner].partner != h) {
      involution_ok = false;
    }
    if (he.is_leg() && he.label.empty())
      problems.push_back("leg " + std::to_string(h) + " has no label");
    if (!he.is_leg() && !he.label.empty())
      problems.push_back("internal half-edge " + std::to_string(h) + " carries a leg label");
  }
  if (!involution_ok) problems.push_back("not an involution");

  std::vector<std::string> labels;
  for (const auto& he : g.half_edges)
    if (he.is_leg() && !he.label.empty()) labels.push_back(he.label);
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
    problems.push_back("duplicate leg label");

  if (nv > 0 && involution_ok) {
    std::vector<int> component(nv);
    std::iota(component.begin(), component.end(), 0);
    std::function<int(int)> find = [&](int x) { return component[x] == x ? x : component[x] = find(component[x]); };
    for (const auto& he : g.half_edges) {
      if (he.is_leg() || he.vertex < 0 || he.vertex >= nv) continue;
      const int w = g.half_edges[he.partner].vertex;
      if (w < 0 || w >= nv) continue;
      component[find(he.vertex)] = find(w);
    }
    for (int v = 1; v < nv; ++v)
      if (find(v) != find(0)) {
        problems.push_back("disconnected");
        break;
      }
  }
  return problems;
}

int genus(const DecoratedGraph& g) {
  int total = 1 + g.num_edges() - g.num_vertices();
  for (const auto& v : g.vertices) total += v.genus;
  return total;
}

bool is_vertex_stable(const DecoratedGraph& g, int v) {
  return 2 * g.vertices[v].genus - 2 + g.valence(v) > 0;
}

bool is_stable(const DecoratedGraph& g) {
  for (int v = 0; v < g.num_vertices(); ++v)
    if (!is_vertex_stable(g, v)) return false;
  return true;
}

int vertex_dimension(const DecoratedGraph& g, int v) {
  return 3 * g.vertices[v].genus - 3 + g.valence(v);
}

int class_degree(const DecoratedGraph& g) {
  return g.num_edges() + g.psi_degree() - g.total_extra();
}

// ---------------------------------------------------------------------------
// Canonical labeling: colour refinement followed by exhaustive search over the
// orderings of each colour class. Desk-scale graphs keep the search tiny.

namespace {

using Code = std::vector<std::int64_t>;

void append_label(Code& out, const std::string& label) {
  out.push_back(static_cast<std::int64_t>(label.size()));
  for (unsigned char c : label) out.push_back(c);
}

std::vector<int> rank_signatures(const std::vector<Code>& sigs) {
  std::vector<Code> distinct = sigs;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<int> colour(sigs.size());
  for (std::size_t i = 0; i < sigs.size(); ++i)
    colour[i] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sigs[i]) - distinct.begin());
  return colour;
}

std::vector<int> refined_colours(const DecoratedGraph& g) {
  const int nv = g.num_vertices();
  std::vector<Code> sigs(nv);
  for (int v = 0; v < nv; ++v) {
    Code& s = sigs[v];
    s.push_back(g.vertices[v].genus);
    s.push_back(g.vertices[v].extra);
    std::vector<Code> items;
    for (const auto& he : g.half_edges) {
      if (he.vertex != v) continue;
      Code item;
      if (he.is_leg()) {
        item.push_back(0);
        append_label(item, he.label);
        item.push_back(he.exponent);
      } else {
        const auto& other = g.half_edges[he.partner];
        item = {1, he.exponent, other.exponent, other.vertex == v ? 1 : 0};
      }
      items.push_back(std::move(item));
    }
    std::sort(items.begin(), items.end());
    s.push_back(static_cast<std::int64_t>(items.size()));
    for (const auto& item : items) s.insert(s.end(), item.begin(), item.end());
  }
  std::vector<int> colour = rank_signatures(sigs);
  int classes = colour.empty() ? 0 : *std::max_element(colour.begin(), colour.end()) + 1;
  while (true) {
    std::vector<Code> next(nv);
    for (int v = 0; v < nv; ++v) {
      std::vector<Code> nbrs;
      for (const auto& he : g.half_edges) {
        if (he.vertex != v || he.is_leg()) continue;
        const auto& other = g.half_edges[he.partner];
        nbrs.push_back({he.exponent, other.exponent, colour[other.vertex]});
      }
      std::sort(nbrs.begin(), nbrs.end());
      next[v].push_back(colour[v]);
      for (const auto& n : nbrs) next[v].insert(next[v].end(), n.begin(), n.end());
    }
    std::vector<int> refined = rank_signatures(next);
    const int refined_classes = refined.empty() ? 0 : *std::max_element(refined.begin(), refined.end()) + 1;
    colour = std::move(refined);
    if (refined_classes == classes) break;
    classes = refined_classes;
  }
  return colour;
}

struct Descriptor {
  Code code;
  int half_edge;
};

std::vector<std::vector<Descriptor>> describe(const DecoratedGraph& g, const std::vector<int>& order,
                                              const std::vector<int>& position) {
  std::vector<std::vector<Descriptor>> per_vertex(order.size());
  for (int h = 0; h < g.num_half_edges(); ++h) {
    const auto& he = g.half_edges[h];
    Code c;
    if (he.is_leg()) {
      c.push_back(0);
      append_label(c, he.label);
      c.push_back(he.exponent);
    } else {
      const auto& other = g.half_edges[he.partner];
      c = {1, he.exponent, position[other.vertex], other.exponent};
    }
    per_vertex[position[he.vertex]].push_back(Descriptor{std::move(c), h});
  }
  for (auto& list : per_vertex)
    std::sort(list.begin(), list.end(), [](const Descriptor& a, const Descriptor& b) { return a.code < b.code; });
  return per_vertex;
}

Code encode(const DecoratedGraph& g, const std::vector<int>& order, const std::vector<int>& position) {
  Code code;
  const auto per_vertex = describe(g, order, position);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& vx = g.vertices[order[i]];
    code.push_back(vx.genus);
    code.push_back(vx.extra);
    code.push_back(static_cast<std::int64_t>(per_vertex[i].size()));
    for (const auto& d : per_vertex[i]) code.insert(code.end(), d.code.begin(), d.code.end());
  }
  return code;
}

std::int64_t factorial(int n) {
  std::int64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Automorphisms fixing every vertex: permutations of parallel edges and flips
// of symmetric self-edges.
std::int64_t local_automorphisms(const DecoratedGraph& g) {
  std::map<std::tuple<int, int, int, int>, int> multiplicity;
  std::int64_t flips = 1;
  for (int h = 0; h < g.num_half_edges(); ++h) {
    const auto& he = g.half_edges[h];
    if (he.is_leg() || he.partner < h) continue;
    const auto& other = g.half_edges[he.partner];
    int a = he.vertex, ea = he.exponent, b = other.vertex, eb = other.exponent;
    if (std::tie(a, ea) > std::tie(b, eb)) {
      std::swap(a, b);
      std::swap(ea, eb);
    }
    ++multiplicity[{a, ea, b, eb}];
    if (a == b && ea == eb) flips *= 2;
  }
  std::int64_t total = flips;
  for (const auto& [key, count] : multiplicity) total *= factorial(count);
  return total;
}

DecoratedGraph rebuild(const DecoratedGraph& g, const std::vector<int>& order, const std::vector<int>& position) {
  const auto per_vertex = describe(g, order, position);
  DecoratedGraph out;
  for (int v : order) out.add_vertex(g.vertices[v].genus, g.vertices[v].extra);

  // (vertex position, own exponent, partner position, partner exponent) -> new half-edge ids
  std::map<std::tuple<int, int, int, int>, std::vector<int>> classes;
  for (std::size_t i = 0; i < per_vertex.size(); ++i) {
    for (const auto& d : per_vertex[i]) {
      const auto& he = g.half_edges[d.half_edge];
      const int id = out.num_half_edges();
      out.half_edges.push_back(HalfEdge{static_cast<int>(i), he.exponent, -1, he.is_leg() ? he.label : std::string{}});
      if (!he.is_leg())
        classes[{static_cast<int>(i), static_cast<int>(d.code[1]), static_cast<int>(d.code[2]),
                 static_cast<int>(d.code[3])}]
            .push_back(id);
    }
  }
  for (const auto& [key, ids] : classes) {
    const auto [pu, eu, pw, ew] = key;
    if (pu == pw && eu == ew) {
      for (std::size_t r = 0; r + 1 < ids.size(); r += 2) {
        out.half_edges[ids[r]].partner = ids[r + 1];
        out.half_edges[ids[r + 1]].partner = ids[r];
      }
      continue;
    }
    const auto& mates = classes.at({pw, ew, pu, eu});
    for (std::size_t r = 0; r < ids.size(); ++r) out.half_edges[ids[r]].partner = mates[r];
  }
  return out;
}

}  // namespace

CanonicalForm canonical_form(const DecoratedGraph& g) {
  const int nv = g.num_vertices();
  const std::vector<int> colour = refined_colours(g);
  const int classes = nv == 0 ? 0 : *std::max_element(colour.begin(), colour.end()) + 1;
  std::vector<std::vector<int>> cells(classes);
  for (int v = 0; v < nv; ++v) cells[colour[v]].push_back(v);

  std::vector<int> order;
  order.reserve(nv);
  std::vector<int> position(nv, -1);
  Code best;
  std::vector<int> best_order;
  std::int64_t best_count = 0;

  std::function<void(int)> search = [&](int cell) {
    if (cell == classes) {
      Code code = encode(g, order, position);
      if (best_order.empty() || code < best) {
        best = std::move(code);
        best_order = order;
        best_count = 1;
      } else if (code == best) {
        ++best_count;
      }
      return;
    }
    std::vector<int> members = cells[cell];
    std::sort(members.begin(), members.end());
    do {
      for (int v : members) {
        position[v] = static_cast<int>(order.size());
        order.push_back(v);
      }
      search(cell + 1);
      order.resize(order.size() - members.size());
    } while (std::next_permutation(members.begin(), members.end()));
  };
  search(0);

  std::vector<int> best_position(nv);
  for (int i = 0; i < nv; ++i) best_position[best_order[i]] = i;

  CanonicalForm out;
  out.graph = rebuild(g, best_order, best_position);
  out.key.code = std::move(best);
  out.automorphisms = best_count * local_automorphisms(g);
  return out;
}

CanonicalKey canonical_key(const DecoratedGraph& g) { return canonical_form(g).key; }

std::int64_t automorphism_order(const DecoratedGraph& g) { return canonical_form(g).automorphisms; }

// ---------------------------------------------------------------------------

RootedTreeView::RootedTreeView(DecoratedGraph g, int root) : graph_(std::move(g)), root_(root) {
  const auto problems = validate(graph_);
  if (!problems.empty()) throw std::invalid_argument("rooted tree: invalid graph: " + problems.front());
  const int nv = graph_.num_vertices();
  if (root < 0 || root >= nv) throw std::invalid_argument("rooted tree: root out of range");
  if (graph_.num_edges() != nv - 1) throw std::invalid_argument("rooted tree: graph has cycles");

  level_.assign(nv, 0);
  parent_.assign(nv, -1);
  parent_half_edge_.assign(nv, -1);
  children_.assign(nv, {});
  std::queue<int> frontier;
  level_[root] = 1;
  frontier.push(root);
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (int h = 0; h < graph_.num_half_edges(); ++h) {
      const auto& he = graph_.half_edges[h];
      if (he.vertex != v || he.is_leg()) continue;
      const int w = graph_.half_edges[he.partner].vertex;
      if (level_[w] != 0) continue;
      level_[w] = level_[v] + 1;
      parent_[w] = v;
      parent_half_edge_[w] = he.partner;
      children_[v].push_back(w);
      frontier.push(w);
    }
  }
  for (const auto& he : graph_.half_edges)
    if (he.is_leg() && leg_kind(he.label) == LegKind::Frozen && he.vertex != root)
      throw std::invalid_argument("rooted tree: frozen leg " + he.label + " is not on the root");
}

bool RootedTreeView::positively_directed(int h) const {
  const auto& he = graph_.half_edges[h];
  if (he.is_leg()) return leg_kind(he.label) == LegKind::Regular;
  return level_[he.vertex] < level_[graph_.half_edges[he.partner].vertex];
}

std::vector<int> RootedTreeView::top_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < graph_.num_vertices(); ++v)
    if (children_[v].empty()) out.push_back(v);
  return out;
}

std::optional<int> RootedTreeView::branching_height() const {
  std::optional<int> best;
  for (int v = 0; v < graph_.num_vertices(); ++v) {
    int positive = 0;
    for (int h = 0; h < graph_.num_half_edges(); ++h)
      if (graph_.half_edges[h].vertex == v && positively_directed(h)) ++positive;
    if (positive >= 2 && (!best || level_[v] < *best)) best = level_[v];
  }
  return best;
}

bool is_nondegenerate(const RootedTreeView& t) {
  const auto& g = t.graph();
  for (int v = 0; v < g.num_vertices(); ++v)
    if (2 * g.vertices[v].genus - 2 + g.valence(v) - g.vertices[v].extra <= 0) return false;
  return true;
}

bool is_balanced(const RootedTreeView& t) {
  const auto& g = t.graph();
  for (int v = 0; v < g.num_vertices(); ++v) {
    const int extra = g.vertices[v].extra;
    if (v == t.root() ? extra != 0 : extra < 1) return false;
  }
  return true;
}

}  // namespace taut
