#pragma once

// Weighted decorated marked surfaces as bookkeeping data, and the concrete
// disc model: mixed-angulations of a labeled m-gon given by noncrossing
// diagonal sets, with forward/backward flips, refinements, and the quiver
// with potential of a triangulation.
//
// Polygon conventions: boundary vertices 0..m-1 counterclockwise.  A forward
// flip moves both endpoints of an arc anticlockwise: at each endpoint the new
// position is the far end of the first side met when rotating the ray from
// the arc clockwise.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quivex/errors.hpp"
#include "quivex/qp.hpp"

namespace quivex {

// ---------------------------------------------------------------------------
// Weighted decorated marked surfaces

struct Wdms {
  int genus = 0;
  std::vector<int> boundaries;   // marked-point count per boundary component
  int punctures = 0;             // must be 0
  std::vector<int> decorations;  // weights, each >= 1
};

inline int total_marked(const Wdms& s) {
  return std::accumulate(s.boundaries.begin(), s.boundaries.end(), 0);
}

inline void validate_wdms(const Wdms& s) {
  if (s.boundaries.empty()) fail(errc::no_boundary, "a wDMS needs at least one boundary component");
  for (int b : s.boundaries)
    if (b < 1) fail(errc::no_boundary, "every boundary component needs a marked point");
  if (s.punctures != 0) fail(errc::has_punctures, "punctured surfaces are not supported");
  if (s.genus < 0) fail(errc::incompatible, "negative genus");
  for (int w : s.decorations)
    if (w < 1) fail(errc::incompatible, "decoration weights must be >= 1");
  long long lhs = std::accumulate(s.decorations.begin(), s.decorations.end(), 0LL) -
                  (total_marked(s) + 2LL * static_cast<long long>(s.boundaries.size()));
  long long rhs = 4LL * s.genus - 4;
  if (lhs != rhs)
    fail(errc::incompatible, "weight sum minus (marked points + 2#boundaries) is " +
                                 std::to_string(lhs) + ", expected 4g-4 = " + std::to_string(rhs));
}

inline int rank(const Wdms& s) {
  validate_wdms(s);
  return 6 * s.genus + 3 * s.punctures + 3 * static_cast<int>(s.boundaries.size()) +
         total_marked(s) - 6;
}

struct CollapseComponent {
  int genus = 0;
  std::vector<int> kappas;    // boundary enhancements, one per boundary curve
  std::vector<int> contains;  // indices into the ambient decorations
};

struct CollapseDatum {
  std::vector<CollapseComponent> components;
};

// Collapse of a subsurface of a simply-weighted surface: the contained
// decorations disappear and each enhanced boundary curve is filled by a disc
// with one decoration of weight kappa - 2.
inline Wdms collapse(const Wdms& s, const CollapseDatum& d) {
  validate_wdms(s);
  for (int w : s.decorations)
    if (w != 1) fail(errc::not_simple_weights, "collapse input must have all weights 1");

  std::set<int> used;
  int genus_drop = 0;
  for (size_t ci = 0; ci < d.components.size(); ++ci) {
    const auto& comp = d.components[ci];
    if (comp.genus < 0) fail(errc::enhancement_violated, "component genus negative");
    if (comp.kappas.empty())
      fail(errc::enhancement_violated, "component without boundary enhancements");
    long long ksum = 0;
    for (int k : comp.kappas) {
      if (k < 3) fail(errc::kappa_too_small, "enhancement " + std::to_string(k) + " < 3");
      ksum += k + 2;
    }
    long long wsum = 0;
    for (int idx : comp.contains) {
      if (idx < 0 || idx >= static_cast<int>(s.decorations.size()))
        fail(errc::enhancement_violated, "decoration index out of range");
      if (!used.insert(idx).second)
        fail(errc::enhancement_violated, "decoration listed in two components");
      wsum += s.decorations[idx];
    }
    if (-ksum + wsum != 4LL * comp.genus - 4)
      fail(errc::enhancement_violated,
           "component " + std::to_string(ci) + ": -sum(kappa+2) + weights = " +
               std::to_string(-ksum + wsum) + ", expected " + std::to_string(4 * comp.genus - 4));
    genus_drop += comp.genus + static_cast<int>(comp.kappas.size()) - 1;
  }

  Wdms out;
  out.genus = s.genus - genus_drop;
  out.boundaries = s.boundaries;
  out.punctures = 0;
  for (size_t i = 0; i < s.decorations.size(); ++i)
    if (!used.count(i)) out.decorations.push_back(s.decorations[i]);
  for (const auto& comp : d.components)
    for (int k : comp.kappas) out.decorations.push_back(k - 2);
  validate_wdms(out);
  return out;
}

// ---------------------------------------------------------------------------
// Polygon dissections (mixed-angulations of the disc)

using Diag = std::pair<int, int>;

struct PolygonDissection {
  int m = 0;
  std::vector<Diag> diagonals;  // normalized p < q, sorted, unique

  friend bool operator==(const PolygonDissection&, const PolygonDissection&) = default;
  friend auto operator<=>(const PolygonDissection&, const PolygonDissection&) = default;
};

using Triangulation = PolygonDissection;

namespace detail {

inline bool chords_cross(const Diag& a, const Diag& b) {
  auto between = [](int x, int lo, int hi) { return lo < x && x < hi; };
  return (between(b.first, a.first, a.second) != between(b.second, a.first, a.second)) &&
         b.first != a.first && b.first != a.second && b.second != a.first && b.second != a.second;
}

inline bool is_boundary_edge(int m, int p, int q) {
  return (p + 1) % m == q || (q + 1) % m == p;
}

}  // namespace detail

inline void validate_dissection(const PolygonDissection& a) {
  if (a.m < 3) fail(errc::infeasible_weights, "polygon needs at least 3 vertices");
  std::set<Diag> seen;
  for (const auto& d : a.diagonals) {
    if (d.first < 0 || d.second < 0 || d.first >= a.m || d.second >= a.m || d.first >= d.second)
      fail(errc::not_a_diagonal, "chord endpoints out of range or not normalized");
    if (detail::is_boundary_edge(a.m, d.first, d.second) || d.first == d.second)
      fail(errc::not_a_diagonal, "chord (" + std::to_string(d.first) + "," +
                                     std::to_string(d.second) + ") is not a diagonal");
    if (!seen.insert(d).second) fail(errc::not_a_diagonal, "duplicate diagonal");
  }
  for (size_t i = 0; i < a.diagonals.size(); ++i)
    for (size_t j = i + 1; j < a.diagonals.size(); ++j)
      if (detail::chords_cross(a.diagonals[i], a.diagonals[j]))
        fail(errc::not_a_diagonal, "diagonals cross");
}

inline PolygonDissection make_dissection(int m, std::vector<Diag> diagonals) {
  for (auto& d : diagonals)
    if (d.first > d.second) std::swap(d.first, d.second);
  std::sort(diagonals.begin(), diagonals.end());
  PolygonDissection a{m, std::move(diagonals)};
  validate_dissection(a);
  return a;
}

// Cells of the dissection, each as a counterclockwise corner cycle (rotated
// so the smallest corner comes first); cells sorted.
inline std::vector<std::vector<int>> cells(const PolygonDissection& a) {
  std::vector<std::vector<int>> out;
  std::vector<int> all(a.m);
  std::iota(all.begin(), all.end(), 0);

  // Recursive splitting along diagonals; noncrossing guarantees each
  // remaining diagonal falls entirely inside one side of a split.
  auto split = [&](auto&& self, std::vector<int> corners, std::vector<Diag> diags) -> void {
    Diag cut{-1, -1};
    size_t cut_idx = 0;
    for (size_t i = 0; i < diags.size(); ++i) {
      auto pos_p = std::find(corners.begin(), corners.end(), diags[i].first);
      auto pos_q = std::find(corners.begin(), corners.end(), diags[i].second);
      size_t ip = static_cast<size_t>(pos_p - corners.begin());
      size_t iq = static_cast<size_t>(pos_q - corners.begin());
      size_t n = corners.size();
      bool adjacent = (ip + 1) % n == iq || (iq + 1) % n == ip;
      if (!adjacent) {
        cut = diags[i];
        cut_idx = i;
        break;
      }
    }
    if (cut.first < 0) {
      out.push_back(std::move(corners));
      return;
    }
    diags.erase(diags.begin() + cut_idx);
    size_t ip = static_cast<size_t>(
        std::find(corners.begin(), corners.end(), cut.first) - corners.begin());
    size_t iq = static_cast<size_t>(
        std::find(corners.begin(), corners.end(), cut.second) - corners.begin());
    if (ip > iq) std::swap(ip, iq);
    std::vector<int> side1(corners.begin() + ip, corners.begin() + iq + 1);
    std::vector<int> side2(corners.begin() + iq, corners.end());
    side2.insert(side2.end(), corners.begin(), corners.begin() + ip + 1);
    auto inside = [](const std::vector<int>& cs, const Diag& d) {
      return std::find(cs.begin(), cs.end(), d.first) != cs.end() &&
             std::find(cs.begin(), cs.end(), d.second) != cs.end();
    };
    std::vector<Diag> d1, d2;
    for (const auto& d : diags) (inside(side1, d) ? d1 : d2).push_back(d);
    self(self, std::move(side1), std::move(d1));
    self(self, std::move(side2), std::move(d2));
  };
  split(split, std::move(all), a.diagonals);

  for (auto& cell : out) {
    auto mn = std::min_element(cell.begin(), cell.end());
    std::rotate(cell.begin(), mn, cell.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Multiset of cell weights (cell size - 2), sorted ascending.
inline std::vector<int> cell_weights(const PolygonDissection& a) {
  std::vector<int> ws;
  for (const auto& c : cells(a)) ws.push_back(static_cast<int>(c.size()) - 2);
  std::sort(ws.begin(), ws.end());
  return ws;
}

inline bool is_triangulation(const PolygonDissection& a) {
  return static_cast<int>(a.diagonals.size()) == a.m - 3;
}

// All dissections of the m-gon whose cell-weight multiset equals `weights`,
// in sorted order.
inline std::vector<PolygonDissection> enumerate_dissections(int m, std::vector<int> weights) {
  if (m < 3) fail(errc::infeasible_weights, "polygon needs at least 3 vertices");
  std::sort(weights.begin(), weights.end());
  long long total = 0;
  for (int w : weights) {
    if (w < 1) fail(errc::infeasible_weights, "cell weights must be >= 1");
    total += w + 2;
  }
  long long twice_d = total - m;
  if (twice_d < 0 || twice_d % 2 != 0)
    fail(errc::infeasible_weights, "weight multiset does not fit an m-gon");
  int d = static_cast<int>(twice_d / 2);

  std::vector<Diag> all;
  for (int p = 0; p < m; ++p)
    for (int q = p + 2; q < m; ++q)
      if (!(p == 0 && q == m - 1)) all.push_back({p, q});

  std::vector<PolygonDissection> out;
  std::vector<Diag> cur;
  auto rec = [&](auto&& self, size_t start) -> void {
    if (static_cast<int>(cur.size()) == d) {
      PolygonDissection a{m, cur};
      if (cell_weights(a) == weights) out.push_back(a);
      return;
    }
    for (size_t i = start; i < all.size(); ++i) {
      bool ok = std::none_of(cur.begin(), cur.end(),
                             [&](const Diag& c) { return detail::chords_cross(c, all[i]); });
      if (!ok) continue;
      cur.push_back(all[i]);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline bool is_side(const PolygonDissection& a, int p, int w) {
  if (is_boundary_edge(a.m, p, w)) return true;
  Diag d{std::min(p, w), std::max(p, w)};
  return std::binary_search(a.diagonals.begin(), a.diagonals.end(), d);
}

// New endpoint of an arc end at p (other end q): far end of the first side
// met when rotating the ray p->q one step at a time.  dir=-1 rotates the ray
// clockwise (endpoint moves anticlockwise, forward flip), dir=+1 the mirror.
inline int slide_endpoint(const PolygonDissection& a, int p, int q, int dir) {
  int w = (q + dir + a.m) % a.m;
  while (w != p) {
    if (is_side(a, p, w)) return w;
    w = (w + dir + a.m) % a.m;
  }
  fail(errc::degenerate_flip, "no side found around endpoint " + std::to_string(p));
}

inline PolygonDissection flip_impl(const PolygonDissection& a, Diag g, int dir) {
  validate_dissection(a);
  if (g.first > g.second) std::swap(g.first, g.second);
  if (!std::binary_search(a.diagonals.begin(), a.diagonals.end(), g))
    fail(errc::not_a_diagonal, "arc (" + std::to_string(g.first) + "," +
                                   std::to_string(g.second) + ") is not in the dissection");
  int p2 = slide_endpoint(a, g.first, g.second, dir);
  int q2 = slide_endpoint(a, g.second, g.first, dir);
  Diag ng{std::min(p2, q2), std::max(p2, q2)};
  if (is_boundary_edge(a.m, ng.first, ng.second) || ng.first == ng.second)
    fail(errc::degenerate_flip, "flipped arc lands on the boundary");
  std::vector<Diag> nd;
  for (const auto& d : a.diagonals)
    if (d != g) nd.push_back(d);
  if (std::find(nd.begin(), nd.end(), ng) != nd.end())
    fail(errc::degenerate_flip, "flipped arc duplicates an existing diagonal");
  nd.push_back(ng);
  std::sort(nd.begin(), nd.end());
  PolygonDissection out{a.m, std::move(nd)};
  try {
    validate_dissection(out);
  } catch (const error&) {
    fail(errc::degenerate_flip, "flipped arc crosses the dissection");
  }
  return out;
}

}  // namespace detail

inline PolygonDissection flip_forward(const PolygonDissection& a, Diag g) {
  return detail::flip_impl(a, g, -1);
}

inline PolygonDissection flip_backward(const PolygonDissection& a, Diag g) {
  return detail::flip_impl(a, g, +1);
}

namespace detail {

// All triangulations of the convex sub-polygon with corner chain cs (as chord
// sets on ambient labels), by the standard Catalan recursion.
inline std::vector<std::vector<Diag>> cell_triangulations(const std::vector<int>& cs) {
  size_t n = cs.size();
  auto rec = [&](auto&& self, size_t i, size_t j) -> std::vector<std::vector<Diag>> {
    if (j - i < 2) return {{}};
    std::vector<std::vector<Diag>> out;
    for (size_t k = i + 1; k < j; ++k) {
      auto left = self(self, i, k);
      auto right = self(self, k, j);
      for (const auto& l : left)
        for (const auto& r : right) {
          std::vector<Diag> t = l;
          t.insert(t.end(), r.begin(), r.end());
          if (k > i + 1) t.push_back({std::min(cs[i], cs[k]), std::max(cs[i], cs[k])});
          if (j > k + 1) t.push_back({std::min(cs[k], cs[j]), std::max(cs[k], cs[j])});
          out.push_back(std::move(t));
        }
    }
    return out;
  };
  return rec(rec, 0, n - 1);
}

}  // namespace detail

// All triangulations refining the dissection (each cell triangulated
// independently), sorted.
inline std::vector<Triangulation> refinements(const PolygonDissection& a) {
  validate_dissection(a);
  std::vector<std::vector<std::vector<Diag>>> per_cell;
  for (const auto& c : cells(a)) per_cell.push_back(detail::cell_triangulations(c));

  std::vector<Triangulation> out;
  std::vector<Diag> acc = a.diagonals;
  auto rec = [&](auto&& self, size_t ci) -> void {
    if (ci == per_cell.size()) {
      out.push_back(make_dissection(a.m, acc));
      return;
    }
    for (const auto& choice : per_cell[ci]) {
      size_t mark = acc.size();
      acc.insert(acc.end(), choice.begin(), choice.end());
      self(self, ci + 1);
      acc.resize(mark);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// Indices (into t.diagonals) of the arcs of t that are not in a.
inline std::vector<int> complementary_arcs(const Triangulation& t, const PolygonDissection& a) {
  if (t.m != a.m) fail(errc::not_a_refinement, "polygon sizes differ");
  if (!is_triangulation(t)) fail(errc::not_a_refinement, "refinement is not a triangulation");
  for (const auto& d : a.diagonals)
    if (!std::binary_search(t.diagonals.begin(), t.diagonals.end(), d))
      fail(errc::not_a_refinement, "dissection arc missing from the triangulation");
  std::vector<int> idx;
  for (size_t i = 0; i < t.diagonals.size(); ++i)
    if (!std::binary_search(a.diagonals.begin(), a.diagonals.end(), t.diagonals[i]))
      idx.push_back(static_cast<int>(i));
  return idx;
}

// Quiver with potential of a triangulation: one vertex per diagonal (indexed
// by position in the sorted diagonal list); in every triangle each pair of
// diagonal sides that are counterclockwise-consecutive contributes one arrow
// from the earlier side to the later one; every triangle all of whose sides
// are diagonals contributes its 3-cycle to the potential.
inline QP quiver_from_triangulation(const Triangulation& t) {
  validate_dissection(t);
  if (!is_triangulation(t)) fail(errc::not_a_refinement, "not a triangulation");

  std::map<Diag, VertexId> vid;
  for (size_t i = 0; i < t.diagonals.size(); ++i)
    vid[t.diagonals[i]] = static_cast<VertexId>(i);

  Quiver q;
  for (size_t i = 0; i < t.diagonals.size(); ++i) q.vertices.push_back(static_cast<VertexId>(i));
  Potential w;
  int counter = 0;
  for (const auto& tri : cells(t)) {
    // ccw sides of the triangle
    std::array<Diag, 3> side;
    for (int i = 0; i < 3; ++i) {
      int x = tri[i], y = tri[(i + 1) % 3];
      side[i] = {std::min(x, y), std::max(x, y)};
    }
    std::array<bool, 3> is_diag;
    for (int i = 0; i < 3; ++i) is_diag[i] = vid.count(side[i]) > 0;
    std::array<ArrowId, 3> arrow_at;
    for (int i = 0; i < 3; ++i) {
      int j = (i + 1) % 3;
      if (is_diag[i] && is_diag[j]) {
        ArrowId id = "a" + std::to_string(counter++);
        q.arrows.push_back(Arrow{id, vid[side[i]], vid[side[j]]});
        arrow_at[i] = id;
      }
    }
    if (is_diag[0] && is_diag[1] && is_diag[2])
      w.terms.push_back(PotentialTerm{1, {arrow_at[0], arrow_at[1], arrow_at[2]}});
  }
  return make_qp(std::move(q), std::move(w));
}

// A refinement t of a such that the forward flip of t at g, followed by
// forgetting the complementary arcs, equals the forward flip of a at g.
// Found by exhaustive search; by the refinement property one always exists.
inline Triangulation refine_flip_witness(const PolygonDissection& a, Diag g) {
  if (g.first > g.second) std::swap(g.first, g.second);
  PolygonDissection flipped = flip_forward(a, g);
  for (const auto& t : refinements(a)) {
    Triangulation ft = flip_forward(t, g);
    std::vector<Diag> kept;
    for (const auto& d : ft.diagonals) {
      bool complementary =
          std::binary_search(t.diagonals.begin(), t.diagonals.end(), d) &&
          !std::binary_search(a.diagonals.begin(), a.diagonals.end(), d);
      if (!complementary) kept.push_back(d);
    }
    if (PolygonDissection{a.m, kept} == flipped) return t;
  }
  fail(errc::no_witness, "no refinement of the dissection refines the flip");
}

}  // namespace quivex
