#include "taut/pushforward.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace taut {

namespace {

Rational factorial(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(r);
}

// Replaces the exponents at each listed vertex by every row of its table and
// adds the products to `out`. `forgotten[v]` legs are removed from vertex v
// before the string equation is applied.
void push_term(const Rational& coefficient, const DecoratedGraph& g, const std::vector<int>& forgotten,
               const std::vector<int>& removed_half_edges, Expression& out) {
  struct Site {
    std::vector<int> half_edges;
    std::vector<PushforwardEntry> table;
  };
  std::vector<Site> sites;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (forgotten[v] == 0) continue;
    Site site;
    Exponents q;
    for (int h : g.half_edges_at(v)) {
      if (std::find(removed_half_edges.begin(), removed_half_edges.end(), h) != removed_half_edges.end()) continue;
      site.half_edges.push_back(h);
      q.push_back(g.half_edges[h].exponent);
    }
    site.table = string_pushforward_vertex(q, forgotten[v]);
    if (site.table.empty()) return;
    sites.push_back(std::move(site));
  }

  // The pushed graph: extras cleared and removed legs dropped.
  DecoratedGraph base;
  for (const auto& vx : g.vertices) base.add_vertex(vx.genus, 0);
  std::vector<int> new_index(g.num_half_edges(), -1);
  for (int h = 0; h < g.num_half_edges(); ++h) {
    if (std::find(removed_half_edges.begin(), removed_half_edges.end(), h) != removed_half_edges.end()) continue;
    new_index[h] = static_cast<int>(base.half_edges.size());
    base.half_edges.push_back(g.half_edges[h]);
  }
  for (auto& he : base.half_edges)
    if (!he.is_leg()) he.partner = new_index[he.partner];

  std::function<void(std::size_t, Rational, DecoratedGraph&)> expand = [&](std::size_t i, Rational c,
                                                                           DecoratedGraph& graph) {
    if (i == sites.size()) {
      out.add_term(c, graph);
      return;
    }
    for (const auto& entry : sites[i].table) {
      for (std::size_t k = 0; k < entry.p.size(); ++k)
        graph.half_edges[new_index[sites[i].half_edges[k]]].exponent = entry.p[k];
      expand(i + 1, c * entry.coefficient, graph);
    }
  };
  expand(0, coefficient, base);
}

}  // namespace

std::vector<Exponents> d_set(const Exponents& q, int l) {
  std::vector<Exponents> out;
  const int total = std::accumulate(q.begin(), q.end(), 0) - l;
  if (total < 0) return out;
  Exponents p(q.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
    if (i == q.size()) {
      if (remaining == 0) out.push_back(p);
      return;
    }
    for (int x = 0; x <= std::min(q[i], remaining); ++x) {
      p[i] = x;
      rec(i + 1, remaining - x);
    }
  };
  rec(0, total);
  return out;
}

std::vector<PushforwardEntry> string_pushforward_vertex(const Exponents& q, int l) {
  std::vector<PushforwardEntry> out;
  for (auto& p : d_set(q, l)) {
    Rational c = factorial(l);
    for (std::size_t i = 0; i < q.size(); ++i) c /= factorial(q[i] - p[i]);
    out.push_back(PushforwardEntry{std::move(p), c});
  }
  return out;
}

Expression forget_extra_legs(const Expression& e) {
  Expression out(e.ambient());
  for (const auto& [key, term] : e.terms()) {
    const auto& g = term.graph;
    std::vector<int> forgotten(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) {
      forgotten[v] = g.vertices[v].extra;
      if (forgotten[v] > 0 && 2 * g.vertices[v].genus - 2 + g.valence(v) - forgotten[v] <= 0)
        throw PushforwardError("vertex " + std::to_string(v) + " is unstable without its extra legs");
    }
    push_term(term.coefficient, g, forgotten, {}, out);
  }
  return out;
}

Expression forget_frozen_legs(const Expression& e, int l) {
  if (l <= 0) throw PushforwardError("number of forgotten legs must be positive");
  std::vector<std::string> frozen;
  for (const auto& label : e.ambient().labels)
    if (leg_kind(label) == LegKind::Frozen) frozen.push_back(label);
  if (static_cast<int>(frozen.size()) < l)
    throw PushforwardError("cannot forget " + std::to_string(l) + " frozen legs of " + describe(e.ambient()));
  const std::vector<std::string> dropped(frozen.end() - l, frozen.end());
  std::vector<std::string> kept;
  for (const auto& label : e.ambient().labels)
    if (std::find(dropped.begin(), dropped.end(), label) == dropped.end()) kept.push_back(label);
  AmbientSpace target;
  try {
    target = make_ambient(e.ambient().genus, kept);
  } catch (const ExpressionError& err) {
    throw PushforwardError(std::string("target of the forgetful map: ") + err.what());
  }

  const Expression flat = forget_extra_legs(e);
  Expression out(target);
  for (const auto& [key, term] : flat.terms()) {
    const auto& g = term.graph;
    std::vector<int> forgotten(g.num_vertices(), 0);
    std::vector<int> removed;
    for (const auto& label : dropped) {
      const int h = g.leg_half_edge(label);
      if (g.half_edges[h].exponent != 0) throw PushforwardError("forgotten leg " + label + " carries a psi class");
      ++forgotten[g.half_edges[h].vertex];
      removed.push_back(h);
    }
    for (int v = 0; v < g.num_vertices(); ++v)
      if (forgotten[v] > 0 && 2 * g.vertices[v].genus - 2 + g.valence(v) - forgotten[v] <= 0)
        throw PushforwardError("vertex " + std::to_string(v) + " becomes unstable after forgetting legs");
    push_term(term.coefficient, g, forgotten, removed, out);
  }
  return out;
}

}  // namespace taut
