#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "taut/bclass.hpp"
#include "taut/bracket.hpp"
#include "taut/pushforward.hpp"

using namespace taut;

namespace {

Expression P(const std::string& text) { return parse_bracket(text); }

Expression fixture(const std::string& name) {
  return parse_bracket(read_bracket_file(std::string(TAUT_FIXTURE_DIR) + "/" + name));
}

const TreeShape& shape_matching(const std::vector<TreeShape>& shapes, const std::string& bracket) {
  const CanonicalKey key = P(bracket).terms().begin()->first;
  auto it = std::find_if(shapes.begin(), shapes.end(),
                         [&](const TreeShape& s) { return canonical_key(s.graph()) == key; });
  REQUIRE(it != shapes.end());
  return *it;
}

int count_contributing(const std::vector<TreeShape>& shapes, const WeightVector& d) {
  return static_cast<int>(std::count_if(shapes.begin(), shapes.end(),
                                        [&](const TreeShape& s) { return !class_B_of_shape(s, d).empty(); }));
}

}  // namespace

TEST_CASE("shape counts") {
  const auto shapes = enumerate_shapes(1, 2, 2);
  CHECK(shapes.size() == 8);
  CHECK(count_contributing(shapes, {2, 1}) == 6);

  const auto single = enumerate_shapes(1, 1, 2);
  CHECK(std::count_if(single.begin(), single.end(), [](const TreeShape& s) { return s.graph().num_vertices() == 1; }) ==
        1);

  CHECK(enumerate_shapes(0, 1, 4).size() == 1);
  const auto chains = enumerate_shapes(2, 1, 2);
  CHECK(chains.size() > 1);
  for (const auto& s : chains) CHECK_FALSE(s.branching_height().has_value());

  CHECK_THROWS_AS(enumerate_shapes(0, 1, 1), std::invalid_argument);
}

TEST_CASE("shapes are stable, rooted and duplicate-free") {
  for (auto [g, n, m] : std::vector<std::tuple<int, int, int>>{{1, 2, 2}, {1, 3, 2}, {0, 3, 3}, {2, 1, 2}}) {
    const auto shapes = enumerate_shapes(g, n, m);
    std::set<CanonicalKey> keys;
    for (const auto& s : shapes) {
      CHECK(is_stable(s.graph()));
      CHECK(genus(s.graph()) == g);
      CHECK(s.graph().total_extra() == 0);
      for (int v : s.top_vertices()) {
        bool regular = false;
        for (int h : s.graph().half_edges_at(v))
          regular |= s.graph().half_edges[h].is_leg() && leg_kind(s.graph().half_edges[h].label) == LegKind::Regular;
        CHECK(regular);
      }
      CHECK(keys.insert(canonical_key(s.graph())).second);
    }
  }
}

TEST_CASE("q_d decoration") {
  const auto shapes = enumerate_shapes(1, 2, 2);
  const TreeShape& single = shape_matching(shapes, "<V1 V2 U1 U2>_1");
  const auto q = q_d_decoration(single, {2, 1});
  const auto& g = single.graph();
  CHECK(q[g.leg_half_edge("U1")] == 2);
  CHECK(q[g.leg_half_edge("U2")] == 1);
  CHECK(q[g.leg_half_edge("V1")] == 0);

  const TreeShape& two = shape_matching(shapes, "<V1 V2 g>_1 <g* U1 U2>_0");
  const RootedTreeView decorated = with_extra_legs(two, ExtraLegAssignment{{0, 3}});
  const auto q2 = q_d_decoration(decorated, {2, 1});
  const int child = 1 - decorated.root();
  const int up = decorated.graph().half_edges[decorated.parent_half_edge(child)].partner;
  CHECK(q2[up] == 2);
  CHECK(q2[decorated.parent_half_edge(child)] == 0);
  CHECK_THROWS_AS(q_d_decoration(two, {2, 1}), std::invalid_argument);
}

TEST_CASE("acceptable assignments") {
  const auto shapes = enumerate_shapes(1, 2, 2);
  auto acc = enumerate_acceptable(shape_matching(shapes, "<V1 V2 g>_0 <g* U1 U2>_1"), {2, 1});
  CHECK(acc == std::vector<ExtraLegAssignment>{{{0, 1}}});
  acc = enumerate_acceptable(shape_matching(shapes, "<V1 V2 g>_1 <g* U1 U2>_0"), {2, 1});
  CHECK(acc == std::vector<ExtraLegAssignment>{{{0, 3}}});
}

TEST_CASE("pruned assignments push forward to zero") {
  for (const auto& d : std::vector<WeightVector>{{2, 1}, {1, 1}, {3, 0}}) {
    for (const auto& s : enumerate_shapes(1, 2, 2)) {
      const auto acc = enumerate_acceptable(s, d);
      const int k = s.graph().num_vertices();
      std::vector<int> extra(k, 0);
      // every assignment with 1..6 extra legs on each non-root vertex
      std::function<void(int)> visit = [&](int v) {
        if (v == k) {
          ExtraLegAssignment a{extra};
          if (std::find(acc.begin(), acc.end(), a) != acc.end()) return;
          CHECK(forget_extra_legs(decorated_trees(s, d, {a})).empty());
          return;
        }
        if (v == s.root()) return visit(v + 1);
        for (int c = 1; c <= 6; ++c) {
          extra[v] = c;
          visit(v + 1);
        }
      };
      visit(0);
    }
  }
}

TEST_CASE("class B golden values") {
  const Expression b = class_B(1, 2, {2, 1});
  CHECK(b == fixture("B21_raw.txt"));
  CHECK(b.size() == 7);
  CHECK(class_B(0, 2, {1}).empty());
  CHECK(class_B_of_shape(shape_matching(enumerate_shapes(1, 2, 2), "<V1 V2 U1 U2>_1"), {2, 1}) ==
        P("<V1 V2 P^2(U1) P(U2)>_1"));
  CHECK(class_B_of_shape(shape_matching(enumerate_shapes(1, 2, 2), "<V1 V2 g>_0 <g* U1 U2>_1"), {2, 1}) ==
        P("<V1 V2 g>_0 <g* P^2(U1) U2>_1 + <V1 V2 g>_0 <g* P(U1) P(U2)>_1"));
}

TEST_CASE("class B has cohomological degree |d|") {
  for (const auto& [g, m, d] : std::vector<std::tuple<int, int, WeightVector>>{
           {1, 2, {1, 1, 1}}, {1, 2, {2, 1}}, {0, 3, {1, 0, 1}}, {1, 3, {2, 2}}}) {
    const Expression b = class_B(g, m, d);
    int total = 0;
    for (int x : d) total += x;
    REQUIRE_FALSE(b.empty());
    CHECK(*b.degree() == total);
    CHECK(b.ambient() == b_ambient(g, static_cast<int>(d.size()), m));
  }
}

TEST_CASE("root-attached weight-0 leg behaves like an extra frozen leg") {
  for (const auto& [m, d] : std::vector<std::pair<int, WeightVector>>{{2, {1}}, {2, {2}}, {2, {1, 1}}, {3, {2, 1}}}) {
    const int n = static_cast<int>(d.size());
    WeightVector padded = d;
    padded.push_back(0);
    const std::string last = regular_label(n + 1);
    Expression s0(b_ambient(0, n, m + 1));
    for (const auto& s : enumerate_shapes(0, n + 1, m)) {
      if (s.graph().half_edges[s.graph().leg_half_edge(last)].vertex != s.root()) continue;
      const Expression part = class_B_of_shape(s, padded);
      const Rational sign = s.graph().num_edges() % 2 ? -1 : 1;
      for (const auto& [key, term] : part.terms()) {
        DecoratedGraph g = term.graph;
        g.half_edges[g.leg_half_edge(last)].label = frozen_label(m + 1);
        s0.add_term(sign * term.coefficient, g);
      }
    }
    CHECK(s0 == class_B(0, m + 1, d));
  }
}
