#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "taut/reduce.hpp"

namespace taut {
namespace {

struct Contraction {
  DecoratedGraph graph;
  int vertex = -1;
  std::vector<int> side_a, side_b;  // half-edges of the merged vertex from either end
};

// Contracts the edge through h (between two distinct vertices); the far
// vertex is deleted and its half-edges move to the near one.
Contraction contract(const DecoratedGraph& g, int h) {
  const int hs = g.half_edges[h].partner;
  const int u = g.half_edges[h].vertex, w = g.half_edges[hs].vertex;
  Contraction c;
  std::vector<int> vmap(g.num_vertices(), -1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (v == w) continue;
    vmap[v] = c.graph.add_vertex(g.vertices[v].genus, g.vertices[v].extra);
  }
  vmap[w] = vmap[u];
  c.vertex = vmap[u];
  std::vector<int> hmap(g.num_half_edges(), -1);
  for (int i = 0; i < g.num_half_edges(); ++i) {
    if (i == h || i == hs) continue;
    hmap[i] = static_cast<int>(c.graph.half_edges.size());
    const auto& he = g.half_edges[i];
    c.graph.half_edges.push_back(HalfEdge{vmap[he.vertex], he.exponent, he.partner, he.label});
    if (he.vertex == u) c.side_a.push_back(hmap[i]);
    if (he.vertex == w) c.side_b.push_back(hmap[i]);
  }
  for (auto& he : c.graph.half_edges)
    if (he.partner >= 0) he.partner = hmap[he.partner];
  return c;
}

// D(i j | k l) at the genus-0 vertex m: sum over the ways of distributing the
// remaining half-edges of m over the two sides of a new edge.
void add_split_sum(Expression& out, const Rational& c, const DecoratedGraph& g, int m, int i, int j, int k, int l) {
  std::vector<int> rest;
  for (int h : g.half_edges_at(m))
    if (h != i && h != j && h != k && h != l) rest.push_back(h);
  const std::size_t r = rest.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
    DecoratedGraph s = g;
    const int w = s.add_vertex(0);
    s.half_edges[k].vertex = w;
    s.half_edges[l].vertex = w;
    for (std::size_t t = 0; t < r; ++t)
      if (!(mask >> t & 1)) s.half_edges[rest[t]].vertex = w;
    s.add_edge(m, w);
    out.add_term(c, s);
  }
}

std::vector<Expression> relations_at(const AmbientSpace& ambient, const DecoratedGraph& g) {
  std::vector<Expression> out;
  for (int h = 0; h < g.num_half_edges(); ++h) {
    const auto& he = g.half_edges[h];
    if (he.is_leg() || he.partner < h) continue;
    const auto& hs = g.half_edges[he.partner];
    const int u = he.vertex, w = hs.vertex;
    if (u == w || g.vertices[u].genus != 0 || g.vertices[w].genus != 0) continue;
    if (g.vertices[u].extra || g.vertices[w].extra || he.exponent || hs.exponent) continue;
    const Contraction c = contract(g, h);
    const auto& A = c.side_a;
    const auto& B = c.side_b;
    for (std::size_t a1 = 0; a1 < A.size(); ++a1)
      for (std::size_t a2 = a1 + 1; a2 < A.size(); ++a2)
        for (std::size_t b1 = 0; b1 < B.size(); ++b1)
          for (std::size_t b2 = b1 + 1; b2 < B.size(); ++b2) {
            const int p = A[a1], q = A[a2], r = B[b1], s = B[b2];
            Expression first(ambient), second(ambient);
            add_split_sum(first, 1, c.graph, c.vertex, p, q, r, s);
            add_split_sum(first, -1, c.graph, c.vertex, p, r, q, s);
            add_split_sum(second, 1, c.graph, c.vertex, p, q, r, s);
            add_split_sum(second, -1, c.graph, c.vertex, p, s, q, r);
            if (!first.empty()) out.push_back(std::move(first));
            if (!second.empty()) out.push_back(std::move(second));
          }
  }
  return out;
}

std::string fingerprint(const Expression& e) {
  std::ostringstream os;
  const Rational lead = e.terms().begin()->second.coefficient;
  for (const auto& [key, term] : e.terms()) {
    for (auto x : key.code) os << x << ',';
    os << ':' << Rational(term.coefficient / lead).get_str() << ';';
  }
  return os.str();
}

// Generates relations round by round from a growing set of graphs.
class RelationGenerator {
 public:
  RelationGenerator(AmbientSpace ambient, const Budget& budget) : ambient_(std::move(ambient)), budget_(budget) {}

  void seed(const DecoratedGraph& g) { offer(g); }

  // Processes the current frontier; returns the relations new in this round.
  std::vector<Expression> round() {
    std::vector<DecoratedGraph> frontier;
    frontier.swap(frontier_);
    std::vector<std::vector<Expression>> produced(frontier.size());
    const int threads = std::max(1, std::min<int>(budget_.threads, static_cast<int>(frontier.size())));
    if (threads <= 1) {
      for (std::size_t i = 0; i < frontier.size(); ++i) produced[i] = relations_at(ambient_, frontier[i]);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
          for (std::size_t i = t; i < frontier.size(); i += threads) produced[i] = relations_at(ambient_, frontier[i]);
        });
      for (auto& th : pool) th.join();
    }
    std::vector<Expression> fresh;
    for (auto& batch : produced)
      for (auto& rel : batch) {
        if (count_ >= budget_.max_relations) {
          overflow_ = true;
          return fresh;
        }
        if (!seen_relations_.insert(fingerprint(rel)).second) continue;
        for (const auto& [key, term] : rel.terms()) offer(term.graph);
        ++count_;
        fresh.push_back(std::move(rel));
      }
    return fresh;
  }

  bool overflow() const { return overflow_; }
  bool exhausted() const { return frontier_.empty(); }
  std::vector<CanonicalKey> support() const { return {seen_graphs_.begin(), seen_graphs_.end()}; }

 private:
  void offer(const DecoratedGraph& g) {
    CanonicalForm f = canonical_form(g);
    if (seen_graphs_.insert(f.key).second) frontier_.push_back(std::move(f.graph));
  }

  AmbientSpace ambient_;
  Budget budget_;
  std::set<CanonicalKey> seen_graphs_;
  std::vector<DecoratedGraph> frontier_;
  std::unordered_set<std::string> seen_relations_;
  std::size_t count_ = 0;
  bool overflow_ = false;
};

using Row = std::map<int, Rational>;

// Incremental sparse row echelon form over Q remembering how each basis row
// was built from the input relations.
class Echelon {
 public:
  int column(const CanonicalKey& k) {
    auto [it, inserted] = columns_.try_emplace(k, static_cast<int>(columns_.size()));
    return it->second;
  }

  Row row_of(const Expression& e) {
    Row r;
    for (const auto& [key, term] : e.terms()) r[column(key)] = term.coefficient;
    return r;
  }

  void insert(const Expression& relation, std::size_t relation_index) {
    Row r = row_of(relation);
    std::vector<std::pair<int, Rational>> used;
    reduce(r, used);
    if (r.empty()) return;
    const Rational lead = r.begin()->second;
    for (auto& [c, x] : r) x /= lead;
    pivots_[r.begin()->first] = static_cast<int>(rows_.size());
    rows_.push_back(BasisRow{std::move(r), relation_index, 1 / lead, std::move(used)});
  }

  // Reduces e; on success returns coefficients of e over the input relations.
  std::optional<std::map<std::size_t, Rational>> express(const Expression& e) {
    Row r = row_of(e);
    std::vector<std::pair<int, Rational>> used;
    reduce(r, used);
    if (!r.empty()) return std::nullopt;
    std::vector<Rational> weight(rows_.size(), 0);
    for (const auto& [j, f] : used) weight[j] += f;
    std::map<std::size_t, Rational> out;
    for (int k = static_cast<int>(rows_.size()) - 1; k >= 0; --k) {
      if (weight[k] == 0) continue;
      const Rational w = weight[k] * rows_[k].scale;
      out[rows_[k].relation] += w;
      for (const auto& [j, f] : rows_[k].used) weight[j] -= w * f;
    }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
  }

 private:
  struct BasisRow {
    Row entries;  // leading coefficient 1
    std::size_t relation;
    Rational scale;  // entries = scale * (relation - sum f_j * row_j)
    std::vector<std::pair<int, Rational>> used;
  };

  void reduce(Row& r, std::vector<std::pair<int, Rational>>& used) {
    auto it = r.begin();
    while (it != r.end()) {
      const int c = it->first;
      auto p = pivots_.find(c);
      if (p == pivots_.end()) {
        ++it;
        continue;
      }
      const Rational f = it->second;
      used.emplace_back(p->second, f);
      for (const auto& [col, x] : rows_[p->second].entries) {
        Rational& y = r[col];
        y -= f * x;
      }
      for (auto jt = r.lower_bound(c); jt != r.end();) jt = jt->second == 0 ? r.erase(jt) : std::next(jt);
      it = r.upper_bound(c);
    }
  }

  std::map<CanonicalKey, int> columns_;
  std::unordered_map<int, int> pivots_;
  std::vector<BasisRow> rows_;
};

}  // namespace

std::string to_string(ZeroCertificate::Outcome o) {
  switch (o) {
    case ZeroCertificate::Outcome::Zero: return "Zero";
    case ZeroCertificate::Outcome::Unknown: return "Unknown";
    case ZeroCertificate::Outcome::Overflow: return "Overflow";
  }
  return "?";
}

RelationBasis generate_wdvv_relations(const AmbientSpace& ambient, const std::vector<DecoratedGraph>& support,
                                      const Budget& budget) {
  RelationGenerator gen(ambient, budget);
  for (const auto& g : support) gen.seed(g);
  RelationBasis out{ambient, {}, {}, false};
  for (int r = 0; r < budget.rounds && !gen.exhausted() && !gen.overflow(); ++r)
    for (auto& rel : gen.round()) out.relations.push_back(std::move(rel));
  out.support = gen.support();
  out.overflow = gen.overflow();
  return out;
}

ZeroCertificate span_zero_test(const Expression& e, const Budget& budget) {
  ZeroCertificate cert;
  if (e.empty()) {
    cert.outcome = ZeroCertificate::Outcome::Zero;
    return cert;
  }
  RelationGenerator gen(e.ambient(), budget);
  for (const auto& [key, term] : e.terms()) gen.seed(term.graph);
  Echelon echelon;
  std::vector<Expression> relations;
  for (int r = 0; r < budget.rounds && !gen.exhausted(); ++r) {
    for (auto& rel : gen.round()) {
      echelon.insert(rel, relations.size());
      relations.push_back(std::move(rel));
    }
    cert.rounds_used = r + 1;
    if (auto combination = echelon.express(e)) {
      cert.outcome = ZeroCertificate::Outcome::Zero;
      for (const auto& [i, c] : *combination) cert.combination.emplace_back(c, relations[i]);
      cert.relations_used = cert.combination.size();
      return cert;
    }
    if (gen.overflow()) {
      cert.outcome = ZeroCertificate::Outcome::Overflow;
      return cert;
    }
  }
  cert.outcome = ZeroCertificate::Outcome::Unknown;
  return cert;
}

bool replay(const ZeroCertificate& certificate, const Expression& e) {
  if (certificate.outcome != ZeroCertificate::Outcome::Zero) return false;
  Expression sum(e.ambient());
  for (const auto& [c, rel] : certificate.combination) sum += scale(rel, c);
  return sum == e;
}

}  // namespace taut
