#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "taut/graph.hpp"
#include "test_support.hpp"

using namespace taut;

TEST_CASE("leg labels") {
  CHECK(leg_kind("U3") == LegKind::Regular);
  CHECK(leg_kind("V1") == LegKind::Frozen);
  CHECK(leg_kind("g") == LegKind::Named);
  CHECK(leg_kind("U0") == LegKind::Named);
  CHECK(label_less("V2", "U1"));
  CHECK(label_less("U2", "U10"));
  CHECK(label_less("U10", "f"));
}

TEST_CASE("validate") {
  DecoratedGraph g;
  int v = g.add_vertex(1);
  g.add_leg(v, "U1");
  g.add_leg(v, "U2");
  g.add_leg(v, "U3");
  CHECK(validate(g).empty());

  DecoratedGraph bad;
  int w = bad.add_vertex(0);
  for (int i = 0; i < 3; ++i) bad.half_edges.push_back(HalfEdge{w, 0, -1, {}});
  bad.half_edges[0].partner = 1;
  bad.half_edges[1].partner = 2;
  bad.half_edges[2].partner = 0;
  auto problems = validate(bad);
  CHECK(std::find(problems.begin(), problems.end(), "not an involution") != problems.end());

  DecoratedGraph split;
  split.add_leg(split.add_vertex(1), "U1");
  split.add_leg(split.add_vertex(1), "U2");
  problems = validate(split);
  CHECK(std::find(problems.begin(), problems.end(), "disconnected") != problems.end());

  DecoratedGraph dup;
  int d = dup.add_vertex(0);
  dup.add_leg(d, "U1");
  dup.add_leg(d, "U1");
  dup.add_leg(d, "U2");
  problems = validate(dup);
  CHECK(std::find(problems.begin(), problems.end(), "duplicate leg label") != problems.end());
}

TEST_CASE("genus and stability") {
  DecoratedGraph a;
  a.add_vertex(1);
  CHECK(genus(a) == 1);

  DecoratedGraph loop;
  int v = loop.add_vertex(0);
  loop.add_edge(v, v);
  loop.add_leg(v, "U1");
  CHECK(genus(loop) == 1);
  CHECK(is_stable(loop));

  DecoratedGraph k4;
  for (int i = 0; i < 4; ++i) k4.add_vertex(i);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) k4.add_edge(i, j);
  CHECK(genus(k4) == 3 + 0 + 1 + 2 + 3);

  DecoratedGraph small;
  int s = small.add_vertex(0);
  small.add_leg(s, "U1");
  small.add_leg(s, "U2");
  CHECK_FALSE(is_stable(small));
  small.add_leg(s, "U3");
  CHECK(is_stable(small));

  DecoratedGraph one;
  one.add_leg(one.add_vertex(1), "U1");
  CHECK(is_stable(one));
}

TEST_CASE("nondegenerate and balanced") {
  auto tree = [](int top_genus, std::vector<std::string> top_legs, int top_extra) {
    DecoratedGraph g;
    int root = g.add_vertex(0);
    g.add_leg(root, "V1");
    g.add_leg(root, "V2");
    int top = g.add_vertex(top_genus, top_extra);
    g.add_edge(root, top);
    for (auto& l : top_legs) g.add_leg(top, l);
    return RootedTreeView(g, root);
  };
  CHECK_FALSE(is_nondegenerate(tree(0, {"U1"}, 1)));
  CHECK(is_nondegenerate(tree(1, {}, 1)));
  CHECK(is_nondegenerate(tree(0, {"U1", "U2"}, 1)));
  CHECK(is_balanced(tree(0, {"U1", "U2"}, 1)));
  CHECK_FALSE(is_balanced(tree(0, {"U1", "U2"}, 0)));

  DecoratedGraph single;
  int r = single.add_vertex(0);
  for (auto l : {"V1", "U1", "U2"}) single.add_leg(r, l);
  CHECK(is_balanced(RootedTreeView(single, r)));
  single.vertices[r].extra = 1;
  CHECK_FALSE(is_balanced(RootedTreeView(single, r)));
}

TEST_CASE("rooted tree view") {
  DecoratedGraph g;
  int root = g.add_vertex(0);
  g.add_leg(root, "V1");
  g.add_leg(root, "V2");
  int mid = g.add_vertex(0, 1);
  g.add_edge(root, mid);
  g.add_leg(mid, "U1");
  int top = g.add_vertex(1, 1);
  g.add_edge(mid, top);
  g.add_leg(top, "U2");
  RootedTreeView t(g, root);
  CHECK(t.level(root) == 1);
  CHECK(t.level(mid) == 2);
  CHECK(t.level(top) == 3);
  CHECK(t.top_vertices() == std::vector<int>{top});
  CHECK(t.branching_height() == 2);
  int edges_from_levels = 0;
  for (int v = 0; v < g.num_vertices(); ++v) edges_from_levels += t.parent(v) >= 0 ? 1 : 0;
  CHECK(edges_from_levels == g.num_edges());

  DecoratedGraph chain;
  int a = chain.add_vertex(0);
  chain.add_leg(a, "V1");
  chain.add_leg(a, "V2");
  int b = chain.add_vertex(1, 1);
  chain.add_edge(a, b);
  chain.add_leg(b, "U1");
  CHECK_FALSE(RootedTreeView(chain, a).branching_height().has_value());

  DecoratedGraph off = g;
  off.half_edges[off.leg_half_edge("V2")].vertex = top;
  CHECK_THROWS(RootedTreeView(off, root));
  DecoratedGraph cyc = g;
  cyc.add_edge(root, top);
  CHECK_THROWS(RootedTreeView(cyc, root));
}

TEST_CASE("canonical keys") {
  // <V1 V2 g>_0 <g* U1 h>_0 <h* U2>_1 written with two different edge orders
  DecoratedGraph a;
  int r = a.add_vertex(0);
  int m = a.add_vertex(0);
  int t = a.add_vertex(1);
  a.add_leg(r, "V1");
  a.add_leg(r, "V2");
  a.add_edge(r, m, 0, 1);
  a.add_leg(m, "U1");
  a.add_edge(m, t);
  a.add_leg(t, "U2", 1);

  DecoratedGraph b;
  int t2 = b.add_vertex(1);
  int m2 = b.add_vertex(0);
  int r2 = b.add_vertex(0);
  b.add_leg(t2, "U2", 1);
  b.add_edge(t2, m2);
  b.add_leg(m2, "U1");
  b.add_edge(m2, r2, 1, 0);
  b.add_leg(r2, "V2");
  b.add_leg(r2, "V1");
  CHECK(canonical_key(a) == canonical_key(b));
  CHECK(canonical_form(a).graph == canonical_form(b).graph);

  DecoratedGraph swapped = a;
  swapped.half_edges[swapped.leg_half_edge("U1")].label = "X";
  swapped.half_edges[swapped.leg_half_edge("U2")].label = "U1";
  swapped.half_edges[swapped.leg_half_edge("X")].label = "U2";
  CHECK(canonical_key(a) != canonical_key(swapped));

  std::mt19937 rng(7);
  DecoratedGraph extras = a;
  extras.vertices[m].extra = 2;
  CHECK(canonical_key(extras) == canonical_key(testing::shuffled(extras, rng)));
}

TEST_CASE("automorphism order") {
  DecoratedGraph tree;
  int r = tree.add_vertex(0);
  tree.add_leg(r, "V1");
  tree.add_leg(r, "V2");
  int c = tree.add_vertex(0, 1);
  tree.add_edge(r, c, 0, 1);
  tree.add_leg(c, "U1");
  tree.add_leg(c, "U2");
  CHECK(automorphism_order(tree) == 1);

  DecoratedGraph loop;
  int v = loop.add_vertex(0);
  loop.add_leg(v, "U1");
  loop.add_edge(v, v);
  CHECK(automorphism_order(loop) == 2);
  loop.half_edges[1].exponent = 1;
  CHECK(automorphism_order(loop) == 1);

  DecoratedGraph banana;
  int x = banana.add_vertex(0);
  int y = banana.add_vertex(0);
  banana.add_leg(x, "U1");
  banana.add_leg(y, "U2");
  banana.add_edge(x, y);
  banana.add_edge(x, y);
  CHECK(automorphism_order(banana) == 2);

  DecoratedGraph sym;
  int hub = sym.add_vertex(0);
  sym.add_leg(hub, "U1");
  sym.add_edge(hub, sym.add_vertex(1));
  sym.add_edge(hub, sym.add_vertex(1));
  CHECK(automorphism_order(sym) == 2);
}

TEST_CASE("automorphism order matches brute force on small graphs") {
  std::mt19937 rng(2024);
  int checked = 0;
  while (checked < 300) {
    DecoratedGraph g = testing::random_graph(rng, 4, 6, 1);
    CHECK(automorphism_order(g) == testing::brute_force_automorphisms(g));
    ++checked;
  }
}
