#pragma once

// Generic exchange-graph construction: BFS closure of a state under an
// indexed family of operators, with canonical string keys, component and
// regularity analysis, the rotation quotient for polygon states, and DOT
// export.  Vertex numbering is canonical: indices follow the sorted key
// order, so identical inputs give byte-identical exports regardless of
// expansion scheduling.

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "quivex/errors.hpp"
#include "quivex/surface.hpp"

namespace quivex {

template <class State>
struct ExchangeGraph {
  std::vector<std::string> keys;               // sorted; index i is vertex i
  std::vector<State> states;                   // parallel to keys
  std::vector<std::array<int, 3>> edges;       // (src, tgt, operator), sorted
  int num_operators = 0;
  bool truncated = false;
  std::string generator;

  int index_of(const std::string& key) const {
    auto it = std::lower_bound(keys.begin(), keys.end(), key);
    if (it == keys.end() || *it != key) return -1;
    return static_cast<int>(it - keys.begin());
  }
};

struct BuildLimits {
  std::size_t max_vertices = std::numeric_limits<std::size_t>::max();
  int max_depth = -1;  // negative: unbounded
};

// BFS closure from `start`.  `apply(state, op)` returns the op-image of a
// state; `key` must be injective on states.  The frontier is expanded in
// sorted key order.  Hitting a limit sets the truncation flag; only expanded
// vertices contribute out-edges.
template <class State, class Apply, class Key>
ExchangeGraph<State> build_exchange_graph(const State& start, int num_operators, Apply&& apply,
                                          Key&& key, std::string generator,
                                          BuildLimits limits = {}) {
  std::map<std::string, State> seen;
  std::map<std::string, int> depth;
  std::vector<std::pair<std::string, std::pair<std::string, int>>> edge_acc;  // src -> (tgt, op)
  std::set<std::string> frontier;
  bool truncated = false;

  std::string k0 = key(start);
  seen.emplace(k0, start);
  depth[k0] = 0;
  frontier.insert(k0);

  while (!frontier.empty()) {
    std::string cur = *frontier.begin();
    frontier.erase(frontier.begin());
    int cur_depth = depth[cur];
    if (limits.max_depth >= 0 && cur_depth >= limits.max_depth) {
      truncated = true;
      continue;
    }
    const State cur_state = seen.at(cur);
    for (int op = 0; op < num_operators; ++op) {
      State next;
      try {
        next = apply(cur_state, op);
      } catch (const error& e) {
        fail(errc::operator_failure,
             "operator " + std::to_string(op) + " failed at '" + cur + "': " + e.what());
      }
      std::string nk = key(next);
      edge_acc.push_back({cur, {nk, op}});
      if (!seen.count(nk)) {
        if (seen.size() >= limits.max_vertices) {
          truncated = true;
          continue;
        }
        seen.emplace(nk, std::move(next));
        depth[nk] = cur_depth + 1;
        frontier.insert(nk);
      }
    }
  }

  ExchangeGraph<State> g;
  g.num_operators = num_operators;
  g.truncated = truncated;
  g.generator = std::move(generator);
  for (auto& [k, s] : seen) {
    g.keys.push_back(k);
    g.states.push_back(s);
  }
  for (const auto& [src, rest] : edge_acc) {
    int si = g.index_of(src);
    int ti = g.index_of(rest.first);
    if (si < 0 || ti < 0) continue;  // edge into a truncated-away vertex
    g.edges.push_back({si, ti, rest.second});
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

// Weakly-connected components as a partition of keys, each class sorted,
// classes ordered by smallest member.
template <class State>
std::vector<std::vector<std::string>> components(const ExchangeGraph<State>& g) {
  if (g.truncated) fail(errc::truncated, "component analysis needs an untruncated graph");
  std::vector<int> parent(g.keys.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges) parent[find(e[0])] = find(e[1]);
  std::map<int, std::vector<std::string>> cls;
  for (size_t i = 0; i < g.keys.size(); ++i) cls[find(static_cast<int>(i))].push_back(g.keys[i]);
  std::vector<std::vector<std::string>> out;
  for (auto& [root, members] : cls) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

template <class State>
bool regularity(const ExchangeGraph<State>& g, int m) {
  if (g.truncated) fail(errc::truncated, "regularity check needs an untruncated graph");
  std::vector<int> outdeg(g.keys.size(), 0), indeg(g.keys.size(), 0);
  for (const auto& e : g.edges) {
    ++outdeg[e[0]];
    ++indeg[e[1]];
  }
  for (size_t i = 0; i < g.keys.size(); ++i)
    if (outdeg[i] != m || indeg[i] != m) return false;
  return true;
}

inline std::string dissection_key(const PolygonDissection& a) {
  std::string k = "m" + std::to_string(a.m);
  for (const auto& d : a.diagonals)
    k += ";" + std::to_string(d.first) + "-" + std::to_string(d.second);
  return k;
}

inline PolygonDissection rotate_dissection(const PolygonDissection& a, int shift) {
  std::vector<Diag> nd;
  for (const auto& d : a.diagonals)
    nd.push_back({(d.first + shift) % a.m, (d.second + shift) % a.m});
  return make_dissection(a.m, std::move(nd));
}

struct RotationQuotient {
  ExchangeGraph<PolygonDissection> graph;  // one vertex per rotation orbit
  std::vector<int> vertex_orbit_sizes;     // parallel to graph.keys
  std::vector<int> edge_orbit_sizes;       // parallel to graph.edges
};

// Quotient of a polygon flip graph by the cyclic relabeling i -> i+1 mod m.
// Vertices become orbit representatives (minimal key in the orbit); an edge
// orbit is the set of rotated images of a (source state, flipped arc) pair.
inline RotationQuotient rotation_quotient(const ExchangeGraph<PolygonDissection>& g, int m) {
  auto rep_of = [&](const PolygonDissection& a) {
    PolygonDissection best = a;
    std::string bk = dissection_key(a);
    for (int r = 1; r < m; ++r) {
      PolygonDissection rot = rotate_dissection(a, r);
      std::string rk = dissection_key(rot);
      if (rk < bk) {
        bk = rk;
        best = rot;
      }
    }
    return best;
  };

  std::map<std::string, PolygonDissection> orbit_reps;   // rep key -> rep state
  std::map<std::string, int> orbit_size;                 // rep key -> orbit size
  for (const auto& s : g.states) {
    PolygonDissection rep = rep_of(s);
    std::string rk = dissection_key(rep);
    if (orbit_reps.count(rk)) continue;
    std::set<std::string> orbit;
    for (int r = 0; r < m; ++r) orbit.insert(dissection_key(rotate_dissection(s, r)));
    orbit_reps.emplace(rk, rep);
    orbit_size[rk] = static_cast<int>(orbit.size());
  }

  RotationQuotient out;
  out.graph.num_operators = g.num_operators;
  out.graph.truncated = g.truncated;
  out.graph.generator = g.generator + "/rotation";
  for (auto& [k, s] : orbit_reps) {
    out.graph.keys.push_back(k);
    out.graph.states.push_back(s);
    out.vertex_orbit_sizes.push_back(orbit_size[k]);
  }

  // Edge orbits: rotate (source, arc, target), take the lexicographically
  // smallest image whose source is the orbit representative.
  std::map<std::array<int, 3>, int> edge_orbits;  // quotient edge -> upstairs count
  for (const auto& e : g.edges) {
    const PolygonDissection& src = g.states[e[0]];
    Diag arc = src.diagonals[e[2]];
    std::optional<std::array<int, 3>> best;
    for (int r = 0; r < m; ++r) {
      PolygonDissection rsrc = rotate_dissection(src, r);
      if (dissection_key(rsrc) != dissection_key(rep_of(src))) continue;
      Diag ra{(arc.first + r) % m, (arc.second + r) % m};
      if (ra.first > ra.second) std::swap(ra.first, ra.second);
      int op = static_cast<int>(std::lower_bound(rsrc.diagonals.begin(), rsrc.diagonals.end(), ra) -
                                rsrc.diagonals.begin());
      PolygonDissection rtgt = rotate_dissection(g.states[e[1]], r);
      int si = out.graph.index_of(dissection_key(rsrc));
      int ti = out.graph.index_of(dissection_key(rep_of(rtgt)));
      std::array<int, 3> cand{si, ti, op};
      if (!best || cand < *best) best = cand;
    }
    ++edge_orbits[*best];
  }
  for (const auto& [e, upstairs] : edge_orbits) {
    out.graph.edges.push_back(e);
    // upstairs count per quotient edge = orbit size of that edge
    out.edge_orbit_sizes.push_back(upstairs);
  }
  return out;
}

template <class State>
std::string export_dot(const ExchangeGraph<State>& g) {
  std::ostringstream os;
  os << "digraph {\n";
  for (const auto& k : g.keys) os << "  \"" << k << "\";\n";
  for (const auto& e : g.edges)
    os << "  \"" << g.keys[e[0]] << "\" -> \"" << g.keys[e[1]] << "\" [label=" << e[2] << "];\n";
  os << "}\n";
  return os.str();
}

}  // namespace quivex
