#pragma once

#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "taut/bclass.hpp"
#include "taut/pushforward.hpp"
#include "taut/reduce.hpp"
#include "test_support.hpp"

namespace taut::testing {

struct PropertyResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  int skipped = 0;

  bool passed() const { return failures == 0 && cases > 0; }
};

inline int pick(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Rational random_rational(std::mt19937& rng) {
  int num = pick(rng, -9, 9);
  if (num == 0) num = 1;
  return make_rational(num, pick(rng, 1, 6));
}

// Graph without extra legs, psi moved around at random while keeping the total.
inline DecoratedGraph reshuffle_psi(const DecoratedGraph& g, std::mt19937& rng) {
  DecoratedGraph out = g;
  int total = 0;
  for (auto& he : out.half_edges) {
    total += he.exponent;
    he.exponent = 0;
  }
  for (int i = 0; i < total; ++i) out.half_edges[pick(rng, 0, out.num_half_edges() - 1)].exponent += 1;
  return out;
}

inline DecoratedGraph without_extras(DecoratedGraph g) {
  for (auto& v : g.vertices) v.extra = 0;
  return g;
}

inline Expression random_expression(std::mt19937& rng, const DecoratedGraph& base, int terms) {
  Expression e(ambient_of(base));
  for (int i = 0; i < terms; ++i) e.add_term(random_rational(rng), reshuffle_psi(base, rng));
  return e;
}

inline PropertyResult canonical_key_invariance(std::mt19937& rng, int count) {
  PropertyResult r{"canonical key relabeling invariance"};
  for (int i = 0; i < count; ++i) {
    const DecoratedGraph g = random_graph(rng, 5, 12, 2);
    const DecoratedGraph h = shuffled(g, rng);
    ++r.cases;
    const CanonicalForm fg = canonical_form(g), fh = canonical_form(h);
    if (!(fg.key == fh.key) || !(fg.graph == fh.graph) || !(canonical_key(fg.graph) == fg.key)) ++r.failures;
  }
  return r;
}

inline PropertyResult automorphisms_match_brute_force(std::mt19937& rng, int count) {
  PropertyResult r{"automorphism order equals brute force"};
  for (int i = 0; i < count; ++i) {
    const DecoratedGraph g = random_graph(rng, 4, 8, 1);
    ++r.cases;
    if (automorphism_order(g) != brute_force_automorphisms(g)) ++r.failures;
  }
  return r;
}

inline PropertyResult normalize_idempotent(std::mt19937& rng, int count) {
  PropertyResult r{"normalize idempotence"};
  for (int i = 0; i < count; ++i) {
    const DecoratedGraph base = without_extras(random_graph(rng, 4, 10, 2));
    if (!is_stable(base)) continue;
    const Expression e = random_expression(rng, base, pick(rng, 1, 6));
    ++r.cases;
    const Expression once = normalize(e);
    if (!(once == e) || !(normalize(once) == once)) ++r.failures;
  }
  return r;
}

inline PropertyResult linear_algebra_laws(std::mt19937& rng, int count) {
  PropertyResult r{"add/scale algebra"};
  for (int i = 0; i < count; ++i) {
    const DecoratedGraph base = without_extras(random_graph(rng, 4, 10, 2));
    if (!is_stable(base)) continue;
    const Expression a = random_expression(rng, base, 4), b = random_expression(rng, base, 4),
                     c = random_expression(rng, base, 4);
    const Rational s = random_rational(rng), t = random_rational(rng);
    ++r.cases;
    bool ok = a + b == b + a;
    ok = ok && (a + b) + c == a + (b + c);
    ok = ok && scale(a + b, s) == scale(a, s) + scale(b, s);
    ok = ok && scale(a, s + t) == scale(a, s) + scale(a, t);
    ok = ok && scale(scale(a, s), t) == scale(a, s * t);
    ok = ok && (a - a).empty() && scale(a, 0).empty();
    ok = ok && a + Expression(a.ambient()) == a;
    if (!ok) ++r.failures;
  }
  return r;
}

inline PropertyResult pushforward_degree_bookkeeping(std::mt19937& rng, int count) {
  PropertyResult r{"pushforward degree bookkeeping"};
  for (int i = 0; i < count; ++i) {
    DecoratedGraph g = random_graph(rng, 3, 10, 2);
    const int l = pick(rng, 1, 2);
    for (int k = 0; k < l; ++k) g.add_leg(pick(rng, 0, g.num_vertices() - 1), frozen_label(90 + k));
    const int extras = g.total_extra();
    try {
      Expression e(ambient_of(g));
      e.add_term(1, g);
      if (e.empty()) continue;
      const Expression down = forget_frozen_legs(e, l);
      ++r.cases;
      for (const auto& [key, term] : down.terms())
        if (term.graph.psi_degree() != g.psi_degree() - extras - l || term.graph.num_edges() != g.num_edges() ||
            term.graph.total_extra() != 0)
          ++r.failures;
    } catch (const PushforwardError&) {
      ++r.skipped;
    } catch (const ExpressionError&) {
      ++r.skipped;
    }
  }
  return r;
}

// Independent enumeration: every labeled tree on <= max_vertices vertices
// (Pruefer codes), rooted at 0, with every genus and leg placement, filtered
// by the shape conditions.
inline std::set<CanonicalKey> brute_force_shapes(int g, int n, int m, int max_vertices) {
  std::set<CanonicalKey> out;
  for (int k = 1; k <= max_vertices; ++k) {
    std::vector<std::vector<std::pair<int, int>>> trees;
    if (k == 1) trees.push_back({});
    if (k == 2) trees.push_back({{0, 1}});
    if (k > 2) {
      std::vector<int> code(k - 2, 0);
      while (true) {
        std::vector<int> degree(k, 1);
        for (int x : code) ++degree[x];
        std::vector<std::pair<int, int>> edges;
        for (int x : code)
          for (int v = 0; v < k; ++v)
            if (degree[v] == 1) {
              edges.emplace_back(v, x);
              --degree[v];
              --degree[x];
              break;
            }
        std::vector<int> last;
        for (int v = 0; v < k; ++v)
          if (degree[v] == 1) last.push_back(v);
        edges.emplace_back(last[0], last[1]);
        trees.push_back(edges);
        int i = 0;
        while (i < k - 2 && ++code[i] == k) code[i++] = 0;
        if (i == k - 2) break;
      }
    }
    const int edges = k - 1;
    for (const auto& tree : trees) {
      std::vector<int> genera(k, 0), place(n, 0);
      std::function<void(int, int)> genus_rec = [&](int v, int left) {
        if (v == k - 1) {
          genera[v] = left;
          std::function<void(int)> leg_rec = [&](int i) {
            if (i == n) {
              DecoratedGraph gr;
              for (int x = 0; x < k; ++x) gr.add_vertex(genera[x]);
              for (const auto& [a, b] : tree) gr.add_edge(a, b);
              for (int j = 1; j <= m; ++j) gr.add_leg(0, frozen_label(j));
              for (int j = 0; j < n; ++j) gr.add_leg(place[j], regular_label(j + 1));
              if (!is_stable(gr)) return;
              const RootedTreeView view(gr, 0);
              for (int t : view.top_vertices()) {
                bool regular = false;
                for (int h : gr.half_edges_at(t)) regular |= gr.half_edges[h].is_leg() && leg_kind(gr.half_edges[h].label) == LegKind::Regular;
                if (!regular) return;
              }
              DecoratedGraph keyed = gr;
              keyed.add_leg(0, "root");
              out.insert(canonical_key(keyed));
              return;
            }
            for (int x = 0; x < k; ++x) {
              place[i] = x;
              leg_rec(i + 1);
            }
          };
          leg_rec(0);
          return;
        }
        for (int x = 0; x <= left; ++x) {
          genera[v] = x;
          genus_rec(v + 1, left - x);
        }
      };
      genus_rec(0, g);
    }
  }
  return out;
}

inline PropertyResult shape_enumeration_brute_force() {
  PropertyResult r{"shape enumeration equals brute force (<= 4 vertices)"};
  for (auto [g, n, m] : std::vector<std::tuple<int, int, int>>{
           {0, 3, 2}, {0, 4, 1}, {1, 2, 2}, {1, 3, 1}, {1, 1, 3}, {2, 1, 2}, {2, 2, 1}, {1, 3, 2}, {0, 4, 2}}) {
    std::set<CanonicalKey> mine;
    for (const auto& s : enumerate_shapes(g, n, m)) {
      if (s.graph().num_vertices() > 4) continue;
      DecoratedGraph keyed = s.graph();
      keyed.add_leg(s.root(), "root");
      mine.insert(canonical_key(keyed));
    }
    ++r.cases;
    if (mine != brute_force_shapes(g, n, m, 4)) ++r.failures;
  }
  return r;
}

// Random stable genus-0 tree with the given legs, grown by splitting vertices.
inline DecoratedGraph random_genus0_tree(std::mt19937& rng, int legs, int splits) {
  DecoratedGraph g;
  g.add_vertex(0);
  for (int i = 1; i <= legs; ++i) g.add_leg(0, "x" + std::to_string(i));
  for (int s = 0; s < splits; ++s) {
    const int v = pick(rng, 0, g.num_vertices() - 1);
    const auto hs = g.half_edges_at(v);
    if (hs.size() < 4) continue;
    std::vector<int> order = hs;
    std::shuffle(order.begin(), order.end(), rng);
    const int cut = pick(rng, 2, static_cast<int>(order.size()) - 2);
    const int w = g.add_vertex(0);
    for (int i = cut; i < static_cast<int>(order.size()); ++i) g.half_edges[order[i]].vertex = w;
    g.add_edge(v, w);
  }
  return g;
}

inline PropertyResult certificate_soundness(std::mt19937& rng, int count) {
  PropertyResult r{"certificate replay soundness"};
  for (int i = 0; i < count; ++i) {
    const DecoratedGraph g = random_genus0_tree(rng, pick(rng, 5, 7), pick(rng, 1, 3));
    const AmbientSpace amb = ambient_of(g);
    const RelationBasis basis = generate_wdvv_relations(amb, {g}, {1, 5000, 1});
    if (basis.relations.empty()) continue;
    Expression e(amb);
    for (int k = 0; k < 3; ++k)
      e += scale(basis.relations[pick(rng, 0, static_cast<int>(basis.relations.size()) - 1)], random_rational(rng));
    ++r.cases;
    const ZeroCertificate c = span_zero_test(e, {2, 100000, 1});
    if (c.outcome != ZeroCertificate::Outcome::Zero || !replay(c, e)) {
      ++r.failures;
      continue;
    }
    if (!c.combination.empty()) {
      ZeroCertificate bad = c;
      bad.combination.front().first += 1;
      if (replay(bad, e)) ++r.failures;
    }
    // Anything certified must have vanishing pairings.
    for (const auto& p : pair_with_psi_monomials(e))
      if (p.value != 0) ++r.failures;
  }
  return r;
}

inline PropertyResult reduction_preserves_pairings(std::mt19937& rng, int count) {
  PropertyResult r{"psi reduction steps preserve pairings"};
  for (int i = 0; i < count; ++i) {
    const DecoratedGraph g = without_extras(random_graph(rng, 3, 7, 2));
    if (!is_stable(g) || g.psi_degree() == 0) continue;
    Expression e(ambient_of(g));
    e.add_term(random_rational(rng), g);
    if (e.empty() || *e.degree() > e.ambient().dimension()) continue;
    const int degree = *e.degree();
    const auto before = pair_with_psi_monomials(e, degree);
    const auto step = reduce_one_step(e.terms().begin()->second);
    ++r.cases;
    const auto after = pair_with_psi_monomials(*step, degree);
    for (std::size_t k = 0; k < before.size(); ++k)
      if (before[k].value != after[k].value) {
        ++r.failures;
        break;
      }
  }
  return r;
}

inline std::vector<PropertyResult> run_all_properties(unsigned seed, int scale_factor = 1) {
  std::mt19937 rng(seed);
  return {
      canonical_key_invariance(rng, 1000 * scale_factor),
      automorphisms_match_brute_force(rng, 200 * scale_factor),
      normalize_idempotent(rng, 300 * scale_factor),
      linear_algebra_laws(rng, 300 * scale_factor),
      pushforward_degree_bookkeeping(rng, 500 * scale_factor),
      shape_enumeration_brute_force(),
      certificate_soundness(rng, 100 * scale_factor),
      reduction_preserves_pairings(rng, 300 * scale_factor),
  };
}

}  // namespace taut::testing
