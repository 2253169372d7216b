#include <algorithm>
#include <map>
#include <mutex>

#include "taut/reduce.hpp"

namespace taut {
namespace {

Rational factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

}  // namespace

Rational genus0_integral(const std::vector<int>& q) {
  const int n = static_cast<int>(q.size());
  if (n < 3) throw ReduceError("M_{0,n} needs n >= 3");
  int sum = 0;
  for (int x : q) {
    if (x < 0) return 0;
    sum += x;
  }
  if (sum != n - 3) return 0;
  Rational out = factorial(n - 3);
  for (int x : q) out /= factorial(x);
  return out;
}

Rational genus1_integral(const std::vector<int>& q_in) {
  static std::mutex mutex;
  static std::map<std::vector<int>, Rational> memo;

  const int n = static_cast<int>(q_in.size());
  if (n < 1) throw ReduceError("M_{1,n} needs n >= 1");
  std::vector<int> q = q_in;
  std::sort(q.begin(), q.end(), std::greater<>());
  int sum = 0;
  for (int x : q) {
    if (x < 0) return 0;
    sum += x;
  }
  if (sum != n) return 0;
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(q); it != memo.end()) return it->second;
  }

  // psi on the first point: nonempty S of the others splits off a genus-0
  // component {x1, S, node}, plus 1/24 of the genus-0 self-glued term.
  Rational out = 0;
  const int k = n - 1;
  for (unsigned long mask = 1; mask < (1ul << k); ++mask) {
    std::vector<int> zero{q[0] - 1, 0}, one{0};
    for (int i = 0; i < k; ++i) (mask >> i & 1 ? zero : one).push_back(q[i + 1]);
    const Rational a = genus0_integral(zero);
    if (a == 0) continue;
    out += a * genus1_integral(one);
  }
  std::vector<int> loop = q;
  loop[0] -= 1;
  loop.push_back(0);
  loop.push_back(0);
  out += genus0_integral(loop) / 24;

  std::lock_guard lock(mutex);
  memo.emplace(std::move(q), out);
  return out;
}

Rational integrate(const Expression& e) {
  if (e.empty()) return 0;
  if (*e.degree() != e.ambient().dimension())
    throw ReduceError("integration needs degree " + std::to_string(e.ambient().dimension()) + ", got " +
                      std::to_string(*e.degree()));
  Rational total = 0;
  for (const auto& [key, term] : e.terms()) {
    const DecoratedGraph& g = term.graph;
    Rational value = term.coefficient;
    for (int v = 0; v < g.num_vertices() && value != 0; ++v) {
      std::vector<int> q;
      for (int h : g.half_edges_at(v)) q.push_back(g.half_edges[h].exponent);
      q.insert(q.end(), g.vertices[v].extra, 0);
      switch (g.vertices[v].genus) {
        case 0: value *= genus0_integral(q); break;
        case 1: value *= genus1_integral(q); break;
        default: throw ReduceError("integration at a vertex of genus >= 2 is not supported");
      }
    }
    total += value;
  }
  return total;
}

std::vector<Pairing> pair_with_psi_monomials(const Expression& e, std::optional<int> degree) {
  const auto d = e.degree() ? e.degree() : degree;
  if (!d) return {};
  const AmbientSpace& amb = e.ambient();
  const int n = static_cast<int>(amb.labels.size());
  const int need = amb.dimension() - *d;
  std::vector<Pairing> out;
  if (need < 0) return out;
  std::vector<int> b(n, 0);
  // Compositions of `need` into n parts, lexicographically decreasing.
  auto visit = [&](auto&& self, int i, int left) -> void {
    if (i == n - 1) {
      b[i] = left;
      Expression x = e;
      for (int j = 0; j < n; ++j)
        if (b[j]) x = multiply_by_leg_psi(x, amb.labels[j], b[j]);
      out.push_back(Pairing{b, x.empty() ? Rational(0) : integrate(x)});
      return;
    }
    for (int v = left; v >= 0; --v) {
      b[i] = v;
      self(self, i + 1, left - v);
    }
  };
  if (n == 0) {
    if (need == 0) out.push_back(Pairing{{}, e.empty() ? Rational(0) : integrate(e)});
    return out;
  }
  visit(visit, 0, need);
  return out;
}

}  // namespace taut
