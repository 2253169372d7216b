#include "taut/json_io.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace taut {

Json rational_to_json(const Rational& r) {
  return Json{{"num", r.get_num().get_str()}, {"den", r.get_den().get_str()}};
}

Rational rational_from_json(const Json& j) {
  auto part = [&](const char* key) {
    const Json& v = j.at(key);
    return v.is_string() ? v.get<std::string>() : std::to_string(v.get<long long>());
  };
  return parse_rational(part("num") + "/" + part("den"));
}

Json graph_to_json(const DecoratedGraph& g) {
  Json vertices = Json::array(), half_edges = Json::array(), involution = Json::array(), legs = Json::array();
  for (int v = 0; v < g.num_vertices(); ++v) vertices.push_back({{"id", v}, {"genus", g.vertices[v].genus}});
  for (int h = 0; h < g.num_half_edges(); ++h) {
    const auto& he = g.half_edges[h];
    half_edges.push_back({{"id", h}, {"vertex", he.vertex}, {"exponent", he.exponent}});
    if (!he.is_leg()) {
      if (he.partner > h) involution.push_back({h, he.partner});
      continue;
    }
    switch (leg_kind(he.label)) {
      case LegKind::Regular: legs.push_back({{"id", h}, {"kind", "regular"}, {"index", leg_index(he.label)}}); break;
      case LegKind::Frozen: legs.push_back({{"id", h}, {"kind", "frozen"}, {"index", leg_index(he.label)}}); break;
      case LegKind::Named: legs.push_back({{"id", h}, {"kind", "named"}, {"name", he.label}}); break;
    }
  }
  int id = g.num_half_edges();
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int k = 0; k < g.vertices[v].extra; ++k, ++id) {
      half_edges.push_back({{"id", id}, {"vertex", v}, {"exponent", 0}});
      legs.push_back({{"id", id}, {"kind", "extra"}});
    }
  return Json{{"vertices", vertices}, {"half_edges", half_edges}, {"involution", involution}, {"legs", legs}};
}

DecoratedGraph graph_from_json(const Json& j) {
  std::map<int, int> vertex_of_id;
  DecoratedGraph g;
  for (const auto& v : j.at("vertices")) vertex_of_id[v.at("id").get<int>()] = g.add_vertex(v.at("genus").get<int>());

  struct Raw {
    int vertex, exponent;
  };
  std::map<int, Raw> raw;
  for (const auto& h : j.at("half_edges")) {
    const int vid = h.at("vertex").get<int>();
    if (!vertex_of_id.count(vid)) throw std::invalid_argument("half-edge on unknown vertex " + std::to_string(vid));
    if (!raw.emplace(h.at("id").get<int>(), Raw{vertex_of_id[vid], h.value("exponent", 0)}).second)
      throw std::invalid_argument("duplicate half-edge id");
  }
  std::map<int, std::string> labels;
  std::set<int> extras;
  for (const auto& l : j.at("legs")) {
    const int id = l.at("id").get<int>();
    const std::string kind = l.at("kind").get<std::string>();
    if (!raw.count(id)) throw std::invalid_argument("leg on unknown half-edge " + std::to_string(id));
    if (kind == "regular") labels[id] = regular_label(l.at("index").get<int>());
    else if (kind == "frozen") labels[id] = frozen_label(l.at("index").get<int>());
    else if (kind == "named") labels[id] = l.at("name").get<std::string>();
    else if (kind == "extra") extras.insert(id);
    else throw std::invalid_argument("unknown leg kind '" + kind + "'");
  }
  std::map<int, int> partner;
  for (const auto& pair : j.at("involution")) {
    const int a = pair.at(0).get<int>(), b = pair.at(1).get<int>();
    if (!raw.count(a) || !raw.count(b) || a == b || partner.count(a) || partner.count(b))
      throw std::invalid_argument("not an involution");
    partner[a] = b;
    partner[b] = a;
  }
  std::map<int, int> index_of_id;
  for (const auto& [id, r] : raw) {
    if (extras.count(id)) {
      if (r.exponent != 0 || partner.count(id)) throw std::invalid_argument("extra leg with decoration or partner");
      ++g.vertices[r.vertex].extra;
      continue;
    }
    const bool is_leg = labels.count(id) > 0;
    if (is_leg == (partner.count(id) > 0)) throw std::invalid_argument("half-edge " + std::to_string(id) + " is neither leg nor edge half");
    index_of_id[id] = g.num_half_edges();
    g.half_edges.push_back(HalfEdge{r.vertex, r.exponent, -1, is_leg ? labels[id] : std::string{}});
  }
  for (const auto& [a, b] : partner) g.half_edges[index_of_id[a]].partner = index_of_id[b];
  return g;
}

Json expression_to_json(const Expression& e) {
  Json terms = Json::array();
  for (const auto& [key, term] : e.terms())
    terms.push_back({{"coefficient", rational_to_json(term.coefficient)}, {"graph", graph_to_json(term.graph)}});
  return Json{{"schema", 1},
              {"ambient", {{"genus", e.ambient().genus}, {"labels", e.ambient().labels}}},
              {"terms", terms}};
}

Expression expression_from_json(const Json& j) {
  if (j.value("schema", 1) != 1) throw std::invalid_argument("unsupported schema");
  const auto& a = j.at("ambient");
  Expression out(make_ambient(a.at("genus").get<int>(), a.at("labels").get<std::vector<std::string>>()));
  for (const auto& t : j.at("terms")) out.add_term(rational_from_json(t.at("coefficient")), graph_from_json(t.at("graph")));
  return out;
}

}  // namespace taut
