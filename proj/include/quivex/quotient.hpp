#pragma once

// Quotient-heart seeds for a collapse.  The collapsed index set I singles out
// the complementary arcs of a refinement; class data of the quotient heart is
// the projection of the ambient C matrix to the rows and columns of I^c.
// Projected class data is invariant under tilts at vertices of I, which is
// what makes the quotient state of a mixed-angulation independent of the
// chosen refinement.
//
// The quotient-heart exchange graph anchors one state per mixed-angulation:
// the projected class data of the initial seed on a refinement, with columns
// labeled by the arcs.  Edges are induced tilts, each computed on a
// refinement that satisfies the no-arrow condition and whose triangulation
// flip tracks the dissection flip.  Class data composed along coarse-graph
// cycles drifts by the class action of the twist group (the coarse graph is
// the twist quotient of the decorated one), so states are anchored per
// dissection rather than carried cumulatively; the per-edge landing checks
// and the I-tilt invariance of the projection carry the class-level content.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "quivex/errors.hpp"
#include "quivex/exchange.hpp"
#include "quivex/qp.hpp"
#include "quivex/seeds.hpp"
#include "quivex/surface.hpp"

namespace quivex {

struct QuotientSeed {
  Seed base;
  std::vector<VertexId> collapsed;  // I, sorted

  std::vector<VertexId> kept() const {
    std::vector<VertexId> out;
    for (VertexId v : base.qp.quiver.vertices)
      if (!std::binary_search(collapsed.begin(), collapsed.end(), v)) out.push_back(v);
    return out;
  }

  // Rows and columns of base.C indexed by I^c, ascending vertex order.
  IntMatrix projected_c() const {
    std::vector<VertexId> keep = kept();
    std::vector<size_t> pos;
    for (VertexId v : keep) pos.push_back(detail::vertex_index(base.qp.quiver, v));
    IntMatrix out;
    for (size_t j : pos) {
      std::vector<long long> col;
      for (size_t i : pos) col.push_back(base.C[j][i]);
      out.push_back(std::move(col));
    }
    return out;
  }
};

inline void check_support(const Seed& s, const std::vector<VertexId>& I) {
  for (VertexId v : I) {
    size_t j = detail::vertex_index(s.qp.quiver, v);
    for (size_t i = 0; i < s.size(); ++i) {
      VertexId row = s.qp.quiver.vertices[i];
      if (s.C[j][i] != 0 && !std::binary_search(I.begin(), I.end(), row))
        fail(errc::support_violation, "column of collapsed vertex " + std::to_string(v) +
                                          " has support outside I at row " + std::to_string(row));
    }
  }
}

inline QuotientSeed project(const Seed& s, std::vector<VertexId> I) {
  std::sort(I.begin(), I.end());
  I.erase(std::unique(I.begin(), I.end()), I.end());
  if (I.empty() || I.size() >= s.qp.quiver.vertices.size())
    fail(errc::bad_subset, "collapsed set must be a proper nonempty vertex subset");
  for (VertexId v : I) detail::vertex_index(s.qp.quiver, v);  // existence
  check_support(s, I);
  return QuotientSeed{s, std::move(I)};
}

struct TiltStep {
  VertexId vertex;
  bool forward = true;
};

// True iff the projected class data is unchanged by the walk, every step of
// which must tilt at a vertex of I.
inline bool quotient_invariance_check(const Seed& s, const std::vector<VertexId>& I,
                                      const std::vector<TiltStep>& walk) {
  QuotientSeed before = project(s, I);
  Seed cur = s;
  for (const auto& step : walk) {
    if (!std::binary_search(before.collapsed.begin(), before.collapsed.end(), step.vertex))
      fail(errc::bad_subset, "walk tilts at vertex " + std::to_string(step.vertex) + " outside I");
    cur = tilt(cur, step.vertex, step.forward);
  }
  QuotientSeed after = project(cur, before.collapsed);
  return before.projected_c() == after.projected_c();
}

namespace detail {

inline bool no_arrow_into_collapsed(const QP& qp, VertexId from,
                                    const std::vector<int>& collapsed_vertices) {
  for (const auto& a : qp.quiver.arrows)
    if (a.src == from &&
        std::binary_search(collapsed_vertices.begin(), collapsed_vertices.end(), a.tgt))
      return false;
  return true;
}

// Does the forward flip of t at g, with the complementary arcs of t (rel. a)
// forgotten, give exactly the forward flip of a at g?
inline bool tracks_flip(const Triangulation& t, const PolygonDissection& a, Diag g,
                        const PolygonDissection& flipped_a) {
  Triangulation ft = flip_forward(t, g);
  std::vector<Diag> kept;
  for (const auto& d : ft.diagonals) {
    bool complementary = std::binary_search(t.diagonals.begin(), t.diagonals.end(), d) &&
                         !std::binary_search(a.diagonals.begin(), a.diagonals.end(), d);
    if (!complementary) kept.push_back(d);
  }
  return PolygonDissection{a.m, kept} == flipped_a;
}

}  // namespace detail

struct InducedTilt {
  Triangulation refinement;
  QuotientSeed before;
  QuotientSeed after;
  Diag new_arc;
};

// Searches the refinements of a for one whose quiver has no arrow from the
// vertex of g to any complementary vertex (preferring refinements that also
// track the flip), builds the initial seed there, tilts forward at g and
// projects both sides.
inline InducedTilt induced_tilt(const PolygonDissection& a, Diag g) {
  if (g.first > g.second) std::swap(g.first, g.second);
  if (!std::binary_search(a.diagonals.begin(), a.diagonals.end(), g))
    fail(errc::not_a_diagonal, "arc is not in the dissection");
  PolygonDissection flipped = flip_forward(a, g);

  std::optional<Triangulation> chosen;
  for (bool require_tracking : {true, false}) {
    for (const auto& t : refinements(a)) {
      QP qp = quiver_from_triangulation(t);
      auto icomp = complementary_arcs(t, a);
      size_t gpos = static_cast<size_t>(
          std::lower_bound(t.diagonals.begin(), t.diagonals.end(), g) - t.diagonals.begin());
      if (!detail::no_arrow_into_collapsed(qp, static_cast<VertexId>(gpos), icomp)) continue;
      if (require_tracking && !detail::tracks_flip(t, a, g, flipped)) continue;
      chosen = t;
      break;
    }
    if (chosen) break;
  }
  if (!chosen)
    fail(errc::no_admissible_refinement,
         "no refinement avoids arrows from the flipped arc into the complementary set");

  const Triangulation& t = *chosen;
  Seed seed = init_seed(quiver_from_triangulation(t));
  auto icomp = complementary_arcs(t, a);
  std::vector<VertexId> I(icomp.begin(), icomp.end());
  size_t gpos = static_cast<size_t>(
      std::lower_bound(t.diagonals.begin(), t.diagonals.end(), g) - t.diagonals.begin());
  Seed tilted = tilt_forward(seed, static_cast<VertexId>(gpos));

  Diag new_arc = [&] {
    Triangulation ft = flip_forward(t, g);
    for (const auto& d : ft.diagonals)
      if (!std::binary_search(t.diagonals.begin(), t.diagonals.end(), d)) return d;
    fail(errc::degenerate_flip, "flip did not change the triangulation");
  }();

  if (I.empty()) {
    // a is already a triangulation; the projection is the whole matrix.
    return InducedTilt{t, QuotientSeed{seed, {}}, QuotientSeed{tilted, {}}, new_arc};
  }
  return InducedTilt{t, project(seed, I), project(tilted, I), new_arc};
}

// ---------------------------------------------------------------------------
// Quotient-heart exchange graph

struct QuotientState {
  std::vector<Diag> arcs;  // arc label per projected column, ascending
  IntMatrix matrix;        // projected C of the anchoring seed

  friend bool operator==(const QuotientState&, const QuotientState&) = default;
};

inline std::string quotient_state_key(const QuotientState& s) {
  std::ostringstream os;
  for (size_t j = 0; j < s.arcs.size(); ++j) {
    os << "(" << s.arcs[j].first << "-" << s.arcs[j].second << ":";
    for (size_t i = 0; i < s.matrix[j].size(); ++i) {
      if (i) os << ",";
      os << s.matrix[j][i];
    }
    os << ")";
  }
  if (s.arcs.empty()) os << "()";
  return os.str();
}

struct QuotientReport {
  int vertices_left = 0;   // dissections in the flip graph
  int vertices_right = 0;  // quotient-heart states
  bool bijection_ok = false;
  bool edge_commute_ok = false;
  std::vector<std::string> collisions;
};

struct QuotientGraphResult {
  ExchangeGraph<PolygonDissection> flip_graph;
  ExchangeGraph<QuotientState> heart_graph;
  QuotientReport report;
};

// The anchored quotient state of a dissection: the projection of the initial
// seed on its first refinement, columns labeled by the arcs.
inline QuotientState quotient_state_of(const PolygonDissection& a) {
  QuotientState st;
  st.arcs = a.diagonals;
  if (a.diagonals.empty()) return st;
  Triangulation t = refinements(a).front();
  Seed seed = init_seed(quiver_from_triangulation(t));
  auto icomp = complementary_arcs(t, a);
  if (icomp.empty()) {
    st.matrix = seed.C;
    return st;
  }
  std::vector<VertexId> I(icomp.begin(), icomp.end());
  st.matrix = project(seed, I).projected_c();
  return st;
}

// Builds the flip graph of dissections of the (m, weights) system and the
// quotient-heart graph over it, and checks that dissection -> quotient state
// is a bijection and that every flip edge is matched by an induced tilt
// landing on the state of the flipped dissection.
inline QuotientGraphResult quotient_graph(int m, const std::vector<int>& weights) {
  auto all = enumerate_dissections(m, weights);
  if (all.empty()) fail(errc::infeasible_weights, "no dissection realizes the weight system");
  const PolygonDissection start = all.front();
  const int nops = static_cast<int>(start.diagonals.size());

  QuotientGraphResult res;
  res.flip_graph = build_exchange_graph<PolygonDissection>(
      start, nops,
      [](const PolygonDissection& s, int op) { return flip_forward(s, s.diagonals[op]); },
      dissection_key,
      "polygon flips m=" + std::to_string(m));
  res.report.vertices_left = static_cast<int>(res.flip_graph.keys.size());
  if (res.flip_graph.keys.size() != all.size())
    res.report.collisions.push_back("flip graph covers " +
                                    std::to_string(res.flip_graph.keys.size()) + " of " +
                                    std::to_string(all.size()) + " dissections");

  bool commute_ok = true;
  bool bijection_ok = true;

  // Vertices: one anchored state per dissection; collisions are states whose
  // keys coincide across distinct dissections.
  res.heart_graph.num_operators = nops;
  res.heart_graph.generator = "quotient hearts m=" + std::to_string(m);
  std::map<std::string, std::string> owner;  // state key -> dissection key
  std::vector<QuotientState> state_of(res.flip_graph.keys.size());
  std::vector<int> heart_index(res.flip_graph.keys.size(), -1);
  std::vector<std::pair<std::string, int>> order;
  for (size_t i = 0; i < res.flip_graph.keys.size(); ++i) {
    state_of[i] = quotient_state_of(res.flip_graph.states[i]);
    std::string sk = quotient_state_key(state_of[i]);
    auto [it, fresh] = owner.emplace(sk, res.flip_graph.keys[i]);
    if (!fresh) {
      bijection_ok = false;
      res.report.collisions.push_back("dissections " + it->second + " and " +
                                      res.flip_graph.keys[i] + " share the projected key " + sk);
      sk += "#" + res.flip_graph.keys[i];  // fall back to keying by the dissection
    }
    order.emplace_back(sk, static_cast<int>(i));
  }
  std::sort(order.begin(), order.end());
  for (const auto& [sk, i] : order) {
    heart_index[i] = static_cast<int>(res.heart_graph.keys.size());
    res.heart_graph.keys.push_back(sk);
    res.heart_graph.states.push_back(state_of[i]);
  }

  // Edges: one induced tilt per flip edge; it must land on the flipped
  // dissection's anchored state (same arcs; the tilted class data expressed
  // in the new heart's own simples is again the anchored projection).
  for (const auto& e : res.flip_graph.edges) {
    const PolygonDissection& src = res.flip_graph.states[e[0]];
    const PolygonDissection& tgt = res.flip_graph.states[e[1]];
    Diag g = src.diagonals[e[2]];
    bool ok = true;
    try {
      InducedTilt it = induced_tilt(src, g);
      if (!detail::tracks_flip(it.refinement, src, g, tgt)) ok = false;
      std::vector<Diag> landed = src.diagonals;
      landed.erase(std::remove(landed.begin(), landed.end(), g), landed.end());
      landed.push_back(it.new_arc);
      std::sort(landed.begin(), landed.end());
      if (landed != tgt.diagonals) ok = false;
      // the flipped arc's class must be the negated old one in the projection
      if (!it.before.collapsed.empty()) {
        auto kept = it.before.kept();
        size_t gcol = 0, n = kept.size();
        Triangulation t = it.refinement;
        size_t gpos = static_cast<size_t>(
            std::lower_bound(t.diagonals.begin(), t.diagonals.end(), g) - t.diagonals.begin());
        for (size_t j = 0; j < n; ++j)
          if (kept[j] == static_cast<VertexId>(gpos)) gcol = j;
        IntMatrix before = it.before.projected_c();
        IntMatrix after = it.after.projected_c();
        for (size_t i = 0; i < n; ++i)
          if (after[gcol][i] != -before[gcol][i]) ok = false;
      }
    } catch (const error&) {
      ok = false;
    }
    if (!ok) commute_ok = false;
    res.heart_graph.edges.push_back({heart_index[e[0]], heart_index[e[1]], e[2]});
  }
  std::sort(res.heart_graph.edges.begin(), res.heart_graph.edges.end());

  res.report.vertices_right = static_cast<int>(res.heart_graph.keys.size());
  res.report.bijection_ok = bijection_ok &&
                            res.report.vertices_right == res.report.vertices_left &&
                            static_cast<size_t>(res.report.vertices_left) == all.size();
  res.report.edge_commute_ok =
      commute_ok && res.heart_graph.edges.size() == res.flip_graph.edges.size();
  return res;
}

}  // namespace quivex
