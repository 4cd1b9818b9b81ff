#pragma once

// JSON wire formats.  Schemas:
//   QP          {"vertices":[int], "arrows":[{"id","src","tgt"}],
//                "potential":[{"coef":int,"cycle":[id]}]}
//   WDMS        {"genus":int, "boundaries":[int], "decorations":[int]}
//   Dissection  {"m":int, "diagonals":[[int,int]]}
//   Torus state {"h":[int,int], "v":[int,int], "bubble":"BL|TL|TR|BR"}
//   Seed        QP fields plus "C" and "G", column-major
//   Graph       {"metadata":{...}, "vertices":[{"key","state"}], "edges":[[s,t,op]]}

#include <string>
#include <vector>

#include <json.hpp>

#include "quivex/errors.hpp"
#include "quivex/exchange.hpp"
#include "quivex/qp.hpp"
#include "quivex/quotient.hpp"
#include "quivex/seeds.hpp"
#include "quivex/surface.hpp"
#include "quivex/torus.hpp"

namespace quivex {

using nlohmann::json;

inline json to_json(const QP& qp) {
  json arrows = json::array();
  for (const auto& a : qp.quiver.arrows)
    arrows.push_back({{"id", a.id}, {"src", a.src}, {"tgt", a.tgt}});
  json pot = json::array();
  for (const auto& t : qp.potential.terms) pot.push_back({{"coef", t.coef}, {"cycle", t.cycle}});
  return {{"vertices", qp.quiver.vertices}, {"arrows", arrows}, {"potential", pot}};
}

inline QP qp_from_json(const json& j) {
  Quiver q;
  q.vertices = j.at("vertices").get<std::vector<VertexId>>();
  std::sort(q.vertices.begin(), q.vertices.end());
  for (const auto& a : j.at("arrows"))
    q.arrows.push_back(Arrow{a.at("id").get<std::string>(), a.at("src").get<VertexId>(),
                             a.at("tgt").get<VertexId>()});
  Potential w;
  for (const auto& t : j.value("potential", json::array()))
    w.terms.push_back(
        PotentialTerm{t.at("coef").get<long long>(), t.at("cycle").get<std::vector<ArrowId>>()});
  return make_qp(std::move(q), std::move(w));
}

inline json to_json(const Wdms& s) {
  return {{"genus", s.genus}, {"boundaries", s.boundaries}, {"decorations", s.decorations}};
}

inline Wdms wdms_from_json(const json& j) {
  Wdms s;
  s.genus = j.at("genus").get<int>();
  s.boundaries = j.at("boundaries").get<std::vector<int>>();
  s.decorations = j.at("decorations").get<std::vector<int>>();
  s.punctures = j.value("punctures", 0);
  return s;
}

inline json to_json(const CollapseDatum& d) {
  json comps = json::array();
  for (const auto& c : d.components)
    comps.push_back({{"genus", c.genus}, {"kappas", c.kappas}, {"contains", c.contains}});
  return {{"components", comps}};
}

inline CollapseDatum collapse_datum_from_json(const json& j) {
  CollapseDatum d;
  for (const auto& c : j.at("components"))
    d.components.push_back(CollapseComponent{c.value("genus", 0),
                                             c.at("kappas").get<std::vector<int>>(),
                                             c.at("contains").get<std::vector<int>>()});
  return d;
}

inline json to_json(const PolygonDissection& a) {
  json ds = json::array();
  for (const auto& d : a.diagonals) ds.push_back({d.first, d.second});
  return {{"m", a.m}, {"diagonals", ds}};
}

inline PolygonDissection dissection_from_json(const json& j) {
  std::vector<Diag> ds;
  for (const auto& d : j.at("diagonals")) ds.push_back({d.at(0).get<int>(), d.at(1).get<int>()});
  return make_dissection(j.at("m").get<int>(), std::move(ds));
}

inline json to_json(const TorusState& s) {
  return {{"h", {s.mat[0][0], s.mat[0][1]}},
          {"v", {s.mat[1][0], s.mat[1][1]}},
          {"bubble", bubble_name(s.bubble)}};
}

inline TorusState torus_from_json(const json& j) {
  TorusState s;
  s.mat[0] = {j.at("h").at(0).get<long long>(), j.at("h").at(1).get<long long>()};
  s.mat[1] = {j.at("v").at(0).get<long long>(), j.at("v").at(1).get<long long>()};
  std::string b = j.at("bubble").get<std::string>();
  if (b == "BL")
    s.bubble = Bubble::BL;
  else if (b == "TL")
    s.bubble = Bubble::TL;
  else if (b == "TR")
    s.bubble = Bubble::TR;
  else if (b == "BR")
    s.bubble = Bubble::BR;
  else
    fail(errc::usage, "bubble must be one of BL, TL, TR, BR");
  return s;
}

inline json to_json(const Seed& s) {
  json j = to_json(s.qp);
  j["C"] = s.C;
  j["G"] = s.G;
  return j;
}

inline Seed seed_from_json(const json& j) {
  Seed s;
  s.qp = qp_from_json(j);
  s.C = j.at("C").get<IntMatrix>();
  s.G = j.at("G").get<IntMatrix>();
  return s;
}

inline json to_json(const QuotientState& s) {
  json arcs = json::array();
  for (const auto& a : s.arcs) arcs.push_back({a.first, a.second});
  return {{"arcs", arcs}, {"matrix", s.matrix}};
}

inline json to_json(const QuotientReport& r) {
  return {{"vertices_left", r.vertices_left},
          {"vertices_right", r.vertices_right},
          {"bijection_ok", r.bijection_ok},
          {"edge_commute_ok", r.edge_commute_ok},
          {"collisions", r.collisions}};
}

template <class State, class StateToJson>
json graph_to_json(const ExchangeGraph<State>& g, StateToJson&& state_to_json) {
  json verts = json::array();
  for (size_t i = 0; i < g.keys.size(); ++i)
    verts.push_back({{"key", g.keys[i]}, {"state", state_to_json(g.states[i])}});
  json edges = json::array();
  for (const auto& e : g.edges) edges.push_back({e[0], e[1], e[2]});
  return {{"metadata",
           {{"generator", g.generator},
            {"truncated", g.truncated},
            {"num_operators", g.num_operators}}},
          {"vertices", verts},
          {"edges", edges}};
}

template <class State, class StateFromJson>
ExchangeGraph<State> graph_from_json(const json& j, StateFromJson&& state_from_json) {
  ExchangeGraph<State> g;
  g.generator = j.at("metadata").at("generator").get<std::string>();
  g.truncated = j.at("metadata").at("truncated").get<bool>();
  g.num_operators = j.at("metadata").at("num_operators").get<int>();
  for (const auto& v : j.at("vertices")) {
    g.keys.push_back(v.at("key").get<std::string>());
    g.states.push_back(state_from_json(v.at("state")));
  }
  for (const auto& e : j.at("edges"))
    g.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
  return g;
}

}  // namespace quivex
