#include <algorithm>
#include <tuple>

#include "taut/reduce.hpp"

namespace taut {
namespace {

// Moves the half-edges of v not in `keep` to a new vertex of genus `moved_genus`,
// sets v to `kept_genus` and joins the two by a new edge.
DecoratedGraph split(const DecoratedGraph& g, int v, const std::vector<int>& keep, int kept_genus, int moved_genus) {
  DecoratedGraph out = g;
  out.vertices[v].genus = kept_genus;
  const int w = out.add_vertex(moved_genus);
  for (int h : g.half_edges_at(v))
    if (std::find(keep.begin(), keep.end(), h) == keep.end()) out.half_edges[h].vertex = w;
  out.add_edge(v, w);
  return out;
}

void check_reducible(const DecoratedGraph& g, int vertex, int target) {
  if (vertex < 0 || vertex >= g.num_vertices()) throw ReduceError("vertex out of range");
  if (target < 0 || target >= g.num_half_edges() || g.half_edges[target].vertex != vertex)
    throw ReduceError("target half-edge is not at the vertex");
  if (g.half_edges[target].exponent <= 0) throw ReduceError("target half-edge carries no psi");
  if (g.vertices[vertex].extra > 0) throw ReduceError("psi reduction at a vertex with extra legs");
}

// Rank of a half-edge as a partner candidate; lower is preferred.
std::tuple<int, int, int, std::string> partner_rank(const DecoratedGraph& g, int h) {
  const auto& he = g.half_edges[h];
  if (he.is_leg()) {
    const LegKind k = leg_kind(he.label);
    const int kind_rank = k == LegKind::Frozen ? 0 : k == LegKind::Regular ? 1 : 2;
    return {0, kind_rank, leg_index(he.label), he.label};
  }
  const bool self_edge = g.half_edges[he.partner].vertex == he.vertex;
  return {self_edge ? 2 : 1, 0, h, std::string()};
}

}  // namespace

std::pair<int, int> choose_partners(const DecoratedGraph& g, int vertex, int target) {
  std::vector<int> candidates;
  for (int h : g.half_edges_at(vertex))
    if (h != target) candidates.push_back(h);
  if (candidates.size() < 2) throw ReduceError("vertex has fewer than two partner candidates");
  std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    const auto ra = partner_rank(g, a), rb = partner_rank(g, b);
    if (std::get<0>(ra) == 0 && std::get<0>(rb) == 0 && std::get<1>(ra) == std::get<1>(rb))
      return label_less(std::get<3>(ra), std::get<3>(rb));
    return ra < rb;
  });
  return {candidates[0], candidates[1]};
}

Expression psi_reduce_genus0(const Term& term, int vertex, int target, std::pair<int, int> partners) {
  const DecoratedGraph& g = term.graph;
  check_reducible(g, vertex, target);
  if (g.vertices[vertex].genus != 0) throw ReduceError("genus-0 psi formula at a vertex of positive genus");
  const auto [a, b] = partners;
  for (int p : {a, b})
    if (p == target || p < 0 || p >= g.num_half_edges() || g.half_edges[p].vertex != vertex)
      throw ReduceError("partner half-edge is not at the vertex");
  if (a == b) throw ReduceError("partners must differ");

  std::vector<int> others;
  for (int h : g.half_edges_at(vertex))
    if (h != target && h != a && h != b) others.push_back(h);
  if (others.empty()) throw ReduceError("genus-0 psi formula needs at least four half-edges");

  DecoratedGraph lowered = g;
  lowered.half_edges[target].exponent -= 1;
  Expression out(ambient_of(g));
  const std::size_t k = others.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    std::vector<int> keep{target};
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) keep.push_back(others[i]);
    out.add_term(term.coefficient, split(lowered, vertex, keep, 0, 0));
  }
  return out;
}

Expression psi_reduce_genus1(const Term& term, int vertex, int target) {
  const DecoratedGraph& g = term.graph;
  check_reducible(g, vertex, target);
  if (g.vertices[vertex].genus != 1) throw ReduceError("genus-1 psi formula at a vertex of genus != 1");

  std::vector<int> others;
  for (int h : g.half_edges_at(vertex))
    if (h != target) others.push_back(h);

  DecoratedGraph lowered = g;
  lowered.half_edges[target].exponent -= 1;
  Expression out(ambient_of(g));
  const std::size_t k = others.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    std::vector<int> keep{target};
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) keep.push_back(others[i]);
    out.add_term(term.coefficient, split(lowered, vertex, keep, 0, 1));
  }
  // 1/12 times the bracket; the self-edge has two automorphisms.
  DecoratedGraph loop = lowered;
  loop.vertices[vertex].genus = 0;
  loop.add_edge(vertex, vertex);
  out.add_term(term.coefficient / 24, loop);
  return out;
}

std::optional<Expression> reduce_one_step(const Term& term) {
  const DecoratedGraph& g = term.graph;
  int best_vertex = -1, best_half_edge = -1;
  std::tuple<int, int> best_rank{-1, -1};
  for (int v = 0; v < g.num_vertices(); ++v) {
    int top = -1, top_exponent = 0;
    for (int h : g.half_edges_at(v))
      if (g.half_edges[h].exponent > top_exponent) {
        top = h;
        top_exponent = g.half_edges[h].exponent;
      }
    if (top < 0) continue;
    if (g.vertices[v].genus >= 2) throw ReduceError("psi class at a vertex of genus >= 2");
    const std::tuple<int, int> rank{g.vertices[v].genus, top_exponent};
    if (rank > best_rank) {
      best_rank = rank;
      best_vertex = v;
      best_half_edge = top;
    }
  }
  if (best_vertex < 0) return std::nullopt;
  if (g.vertices[best_vertex].genus == 1) return psi_reduce_genus1(term, best_vertex, best_half_edge);
  return psi_reduce_genus0(term, best_vertex, best_half_edge, choose_partners(g, best_vertex, best_half_edge));
}

Expression eliminate_all_psi(const Expression& e, EliminationScope scope) {
  auto wanted = [scope](const DecoratedGraph& g) {
    if (g.psi_degree() == 0) return false;
    if (scope == EliminationScope::All) return true;
    return std::any_of(g.vertices.begin(), g.vertices.end(), [](const Vertex& v) { return v.genus == 1; });
  };
  Expression done(e.ambient());
  Expression pending = e;
  while (!pending.empty()) {
    Expression next(e.ambient());
    for (const auto& [key, term] : pending.terms()) {
      if (!wanted(term.graph)) {
        done.add_term(term.coefficient, term.graph);
        continue;
      }
      next += *reduce_one_step(term);
    }
    pending = std::move(next);
  }
  return done;
}

Expression distribute(const std::string& label, const DecoratedGraph& g, const Rational& coefficient) {
  if (g.leg_half_edge(label) >= 0) throw ReduceError("leg " + label + " already present");
  std::vector<std::string> labels = g.leg_labels();
  labels.push_back(label);
  Expression out(make_ambient(genus(g), labels));
  for (int v = 0; v < g.num_vertices(); ++v) {
    DecoratedGraph h = g;
    h.add_leg(v, label);
    out.add_term(coefficient, h);
  }
  return out;
}

}  // namespace taut
