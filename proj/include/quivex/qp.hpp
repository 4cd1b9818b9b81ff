#pragma once

// Quivers with potential: validation, cyclic derivatives, premutation,
// 2-cycle reduction, mutation, restriction to full subquivers, and the
// graded-quiver presentation with its differential.
//
// Conventions used throughout:
//   * paths compose left to right: in a word (x1,...,xn) the target of xi is
//     the source of x(i+1); a cycle additionally closes up, tgt(xn) == src(x1);
//   * a potential is a finite integer combination of cycles, kept in canonical
//     form (each cycle rotated so its lexicographically smallest rotation comes
//     first, terms sorted, equal cycles merged, zero coefficients dropped).

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "quivex/errors.hpp"

namespace quivex {

using VertexId = int;
using ArrowId = std::string;

struct Arrow {
  ArrowId id;
  VertexId src = 0;
  VertexId tgt = 0;

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

struct Quiver {
  std::vector<VertexId> vertices;  // sorted, unique
  std::vector<Arrow> arrows;

  bool has_vertex(VertexId v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
  }
  const Arrow* find_arrow(const ArrowId& id) const {
    for (const auto& a : arrows)
      if (a.id == id) return &a;
    return nullptr;
  }
  int count_arrows(VertexId from, VertexId to) const {
    int n = 0;
    for (const auto& a : arrows)
      if (a.src == from && a.tgt == to) ++n;
    return n;
  }
};

inline Quiver make_quiver(std::vector<VertexId> vertices, std::vector<Arrow> arrows) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return Quiver{std::move(vertices), std::move(arrows)};
}

struct PotentialTerm {
  long long coef = 0;
  std::vector<ArrowId> cycle;  // nonempty closed path

  friend bool operator==(const PotentialTerm&, const PotentialTerm&) = default;
};

struct Potential {
  std::vector<PotentialTerm> terms;

  bool empty() const { return terms.empty(); }
  friend bool operator==(const Potential&, const Potential&) = default;
};

// A formal integer combination of (open) paths; used for cyclic derivatives
// and differentials.
struct PathTerm {
  long long coef = 0;
  std::vector<ArrowId> path;

  friend bool operator==(const PathTerm&, const PathTerm&) = default;
};

struct PathSum {
  std::vector<PathTerm> terms;

  bool zero() const { return terms.empty(); }
  friend bool operator==(const PathSum&, const PathSum&) = default;
};

inline PathSum canonical(PathSum s) {
  std::sort(s.terms.begin(), s.terms.end(),
            [](const PathTerm& a, const PathTerm& b) { return a.path < b.path; });
  std::vector<PathTerm> merged;
  for (auto& t : s.terms) {
    if (!merged.empty() && merged.back().path == t.path)
      merged.back().coef += t.coef;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const PathTerm& t) { return t.coef == 0; });
  return PathSum{std::move(merged)};
}

// Rotation putting the lexicographically smallest rotation of the cycle first.
inline std::vector<ArrowId> canonical_rotation(const std::vector<ArrowId>& cycle) {
  std::vector<ArrowId> best = cycle;
  std::vector<ArrowId> rot = cycle;
  for (size_t k = 1; k < cycle.size(); ++k) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

inline Potential canonical(Potential w) {
  for (auto& t : w.terms) t.cycle = canonical_rotation(t.cycle);
  std::sort(w.terms.begin(), w.terms.end(),
            [](const PotentialTerm& a, const PotentialTerm& b) { return a.cycle < b.cycle; });
  std::vector<PotentialTerm> merged;
  for (auto& t : w.terms) {
    if (!merged.empty() && merged.back().cycle == t.cycle)
      merged.back().coef += t.coef;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const PotentialTerm& t) { return t.coef == 0; });
  return Potential{std::move(merged)};
}

struct QP {
  Quiver quiver;
  Potential potential;
};

// Premutation output: the same shape as a QP but 2-cycles are permitted until
// reduce() has run.
struct RawQP {
  Quiver quiver;
  Potential potential;
};

inline QP make_qp(Quiver q, Potential w = {}) { return QP{std::move(q), canonical(std::move(w))}; }

namespace detail {

inline void validate_quiver(const Quiver& q) {
  std::set<ArrowId> ids;
  for (const auto& a : q.arrows) {
    if (!q.has_vertex(a.src) || !q.has_vertex(a.tgt))
      fail(errc::unknown_vertex, "arrow '" + a.id + "' touches a vertex outside the quiver");
    if (a.src == a.tgt) fail(errc::loop_arrow, "arrow '" + a.id + "' is a loop");
    if (!ids.insert(a.id).second) fail(errc::unknown_vertex, "duplicate arrow id '" + a.id + "'");
  }
  for (size_t i = 0; i < q.arrows.size(); ++i)
    for (size_t j = i + 1; j < q.arrows.size(); ++j)
      if (q.arrows[i].src == q.arrows[j].tgt && q.arrows[i].tgt == q.arrows[j].src)
        fail(errc::two_cycle_arrows,
             "arrows '" + q.arrows[i].id + "' and '" + q.arrows[j].id + "' form a 2-cycle");
}

// Checks composability/closedness of every potential cycle against the quiver.
inline void validate_potential(const Quiver& q, const Potential& w) {
  for (const auto& t : w.terms) {
    if (t.cycle.empty()) fail(errc::non_composable_cycle, "empty cycle in potential");
    std::vector<const Arrow*> path;
    for (const auto& id : t.cycle) {
      const Arrow* a = q.find_arrow(id);
      if (!a) fail(errc::unknown_arrow_in_potential, "arrow '" + id + "' not in quiver");
      path.push_back(a);
    }
    for (size_t i = 0; i < path.size(); ++i) {
      const Arrow* cur = path[i];
      const Arrow* nxt = path[(i + 1) % path.size()];
      if (cur->tgt != nxt->src)
        fail(errc::non_composable_cycle,
             "cycle breaks between '" + cur->id + "' and '" + nxt->id + "'");
    }
  }
}

}  // namespace detail

inline void validate_qp(const QP& qp) {
  detail::validate_quiver(qp.quiver);
  detail::validate_potential(qp.quiver, qp.potential);
}

// d/da of a potential: for every occurrence of `a` in a cycle, the cycle is
// rotated so that `a` comes first and `a` is deleted.  An arrow absent from
// all cycles gives the zero sum.
inline PathSum cyclic_derivative(const Potential& w, const ArrowId& a) {
  PathSum out;
  for (const auto& t : w.terms) {
    for (size_t k = 0; k < t.cycle.size(); ++k) {
      if (t.cycle[k] != a) continue;
      std::vector<ArrowId> rest;
      rest.reserve(t.cycle.size() - 1);
      for (size_t j = 1; j < t.cycle.size(); ++j) rest.push_back(t.cycle[(k + j) % t.cycle.size()]);
      out.terms.push_back(PathTerm{t.coef, std::move(rest)});
    }
  }
  return canonical(std::move(out));
}

// DWZ premutation at vertex k: add composites [ab] through k, reverse the
// arrows incident to k, substitute composites into the potential and append
// the correction terms [ab]b*a*.  The result may contain 2-cycles.
inline RawQP premutate(const QP& qp, VertexId k) {
  if (!qp.quiver.has_vertex(k)) fail(errc::unknown_vertex, "vertex " + std::to_string(k));

  std::vector<Arrow> in_k, out_k, rest;
  for (const auto& a : qp.quiver.arrows) {
    if (a.tgt == k)
      in_k.push_back(a);
    else if (a.src == k)
      out_k.push_back(a);
    else
      rest.push_back(a);
  }

  Quiver nq;
  nq.vertices = qp.quiver.vertices;
  nq.arrows = rest;
  std::map<std::pair<ArrowId, ArrowId>, ArrowId> composite;
  for (const auto& a : in_k)
    for (const auto& b : out_k) {
      ArrowId id = "[" + a.id + b.id + "]";
      composite[{a.id, b.id}] = id;
      nq.arrows.push_back(Arrow{id, a.src, b.tgt});
    }
  for (const auto& a : in_k) nq.arrows.push_back(Arrow{a.id + "*", k, a.src});
  for (const auto& b : out_k) nq.arrows.push_back(Arrow{b.id + "*", b.tgt, k});

  auto is_in = [&](const ArrowId& id) {
    return std::any_of(in_k.begin(), in_k.end(), [&](const Arrow& a) { return a.id == id; });
  };
  auto is_out = [&](const ArrowId& id) {
    return std::any_of(out_k.begin(), out_k.end(), [&](const Arrow& a) { return a.id == id; });
  };

  // W': every passage of a cycle through k is a factor a.b with a into k and
  // b out of k; each such factor becomes the composite [ab].  Rotate the
  // cycle first so that no factor straddles the word boundary (a rotation
  // with that property always exists, since two adjacent factors would force
  // a loop at k).
  Potential nw;
  for (const auto& t : qp.potential.terms) {
    std::vector<ArrowId> c = t.cycle;
    const size_t n = c.size();
    for (size_t r = 0; r < n; ++r) {
      if (!(is_in(c[n - 1]) && is_out(c[0]))) break;
      std::rotate(c.begin(), c.begin() + 1, c.end());
    }
    std::vector<ArrowId> replaced;
    for (size_t i = 0; i < n; ++i) {
      if (i + 1 < n && is_in(c[i]) && is_out(c[i + 1])) {
        replaced.push_back(composite.at({c[i], c[i + 1]}));
        ++i;
      } else {
        replaced.push_back(c[i]);
      }
    }
    nw.terms.push_back(PotentialTerm{t.coef, std::move(replaced)});
  }
  // W'': one correction 3-cycle per composite.
  for (const auto& a : in_k)
    for (const auto& b : out_k)
      nw.terms.push_back(
          PotentialTerm{1, {composite.at({a.id, b.id}), b.id + "*", a.id + "*"}});

  return RawQP{std::move(nq), canonical(std::move(nw))};
}

namespace detail {

// Rotates `cycle` so that `id` (which must occur exactly once) comes first,
// then drops it; the remainder is the complementary path.
inline std::vector<ArrowId> complement_of(const std::vector<ArrowId>& cycle, const ArrowId& id) {
  size_t pos = 0;
  for (size_t i = 0; i < cycle.size(); ++i)
    if (cycle[i] == id) pos = i;
  std::vector<ArrowId> rest;
  for (size_t j = 1; j < cycle.size(); ++j) rest.push_back(cycle[(pos + j) % cycle.size()]);
  return rest;
}

inline int occurrences(const std::vector<ArrowId>& cycle, const ArrowId& id) {
  return static_cast<int>(std::count(cycle.begin(), cycle.end(), id));
}

}  // namespace detail

// Removes the trivial part of the potential: iteratively cancels each
// length-2 term e.uv via the substitution u -> u - B, v -> v - A, where A and
// B are the complementary paths of u and v in their (unique) other terms.
// Supported only when the 2-cycle coefficient is a unit and each of u, v
// occurs in at most one other term; anything else raises UnsupportedReduction.
inline QP reduce(RawQP raw) {
  Quiver q = raw.quiver;
  Potential w = canonical(raw.potential);

  for (;;) {
    const PotentialTerm* two = nullptr;
    for (const auto& t : w.terms)
      if (t.cycle.size() == 2) {
        two = &t;
        break;
      }
    if (!two) break;

    if (two->coef != 1 && two->coef != -1)
      fail(errc::unsupported_reduction,
           "2-cycle term (" + two->cycle[0] + "," + two->cycle[1] + ") has non-unit coefficient");
    const long long eps = two->coef;
    const ArrowId u = two->cycle[0], v = two->cycle[1];

    std::optional<PathTerm> a_path, b_path;  // u.A and B.v complements
    Potential keep;
    for (const auto& t : w.terms) {
      if (&t == two) continue;
      int cu = detail::occurrences(t.cycle, u);
      int cv = detail::occurrences(t.cycle, v);
      if (cu == 0 && cv == 0) {
        keep.terms.push_back(t);
        continue;
      }
      if (cu + cv > 1 || (cu && a_path) || (cv && b_path))
        fail(errc::unsupported_reduction, "arrow '" + (cu ? u : v) +
                                              "' of a 2-cycle appears more than once in the "
                                              "remaining potential");
      if (cu)
        a_path = PathTerm{t.coef, detail::complement_of(t.cycle, u)};
      else
        b_path = PathTerm{t.coef, detail::complement_of(t.cycle, v)};
    }
    for (const auto& p : {a_path, b_path})
      if (p && (detail::occurrences(p->path, u) || detail::occurrences(p->path, v)))
        fail(errc::unsupported_reduction, "complementary path of a 2-cycle re-enters the 2-cycle");

    if (a_path && b_path) {
      std::vector<ArrowId> ba = b_path->path;
      ba.insert(ba.end(), a_path->path.begin(), a_path->path.end());
      keep.terms.push_back(PotentialTerm{-eps * a_path->coef * b_path->coef, std::move(ba)});
    }
    std::erase_if(q.arrows, [&](const Arrow& a) { return a.id == u || a.id == v; });
    w = canonical(std::move(keep));
  }

  QP out{std::move(q), std::move(w)};
  try {
    validate_qp(out);
  } catch (const error& e) {
    // A surviving 2-cycle with no cancelling term means the input was outside
    // the supported class, not merely invalid.
    fail(errc::unsupported_reduction, std::string("reduction left an invalid QP (") + e.what() + ")");
  }
  return out;
}

inline QP mutate(const QP& qp, VertexId k) { return reduce(premutate(qp, k)); }

// Full sub-QP on the vertex subset `keep`: arrows with both ends kept,
// potential terms whose cycles survive entirely.
inline QP restrict_qp(const QP& qp, const std::vector<VertexId>& keep) {
  std::set<VertexId> all(qp.quiver.vertices.begin(), qp.quiver.vertices.end());
  std::set<VertexId> sel(keep.begin(), keep.end());
  for (VertexId v : sel)
    if (!all.count(v)) fail(errc::unknown_vertex, "vertex " + std::to_string(v));
  if (sel.empty() || sel.size() == all.size())
    fail(errc::bad_subset, "restriction needs a proper nonempty vertex subset");

  Quiver q;
  q.vertices.assign(sel.begin(), sel.end());
  std::set<ArrowId> kept_ids;
  for (const auto& a : qp.quiver.arrows)
    if (sel.count(a.src) && sel.count(a.tgt)) {
      q.arrows.push_back(a);
      kept_ids.insert(a.id);
    }
  Potential w;
  for (const auto& t : qp.potential.terms) {
    bool ok = std::all_of(t.cycle.begin(), t.cycle.end(),
                          [&](const ArrowId& id) { return kept_ids.count(id) > 0; });
    if (ok) w.terms.push_back(t);
  }
  return QP{std::move(q), canonical(std::move(w))};
}

inline bool same_arrow_multiset(const Quiver& a, const Quiver& b) {
  if (a.vertices != b.vertices) return false;
  std::vector<std::pair<VertexId, VertexId>> ma, mb;
  for (const auto& x : a.arrows) ma.emplace_back(x.src, x.tgt);
  for (const auto& x : b.arrows) mb.emplace_back(x.src, x.tgt);
  std::sort(ma.begin(), ma.end());
  std::sort(mb.begin(), mb.end());
  return ma == mb;
}

struct MuresReport {
  bool quiver_equal = false;
  bool potential_equal = false;
};

// Compares restrict(mutate(qp,i), I) against mutate(restrict(qp,I), i).
inline MuresReport mures_check(const QP& qp, const std::vector<VertexId>& I, VertexId i) {
  QP left = restrict_qp(mutate(qp, i), I);
  QP right = mutate(restrict_qp(qp, I), i);
  return MuresReport{same_arrow_multiset(left.quiver, right.quiver),
                     left.potential == right.potential};
}

struct GradedArrow {
  ArrowId id;
  VertexId src = 0;
  VertexId tgt = 0;
  int degree = 0;
};

struct GinzburgPresentation {
  std::vector<GradedArrow> arrows;
  std::vector<std::pair<ArrowId, PathSum>> differential;  // one entry per generator

  const PathSum* d(const ArrowId& id) const {
    for (const auto& [k, v] : differential)
      if (k == id) return &v;
    return nullptr;
  }
};

// Graded quiver of (Q,W): original arrows in degree 0, reversed arrows a* in
// degree -1, a loop e_i in degree -2 at each vertex.  Differential:
//   d(a)   = 0
//   d(a*)  = cyclic derivative of W at a
//   d(e_i) = sum over arrows of the commutator loops at i, the loop leaving i
//            along a and returning along a* counted with sign -1 and the loop
//            leaving along a* and returning along a with sign +1.
inline GinzburgPresentation ginzburg(const QP& qp) {
  validate_qp(qp);
  GinzburgPresentation g;
  for (const auto& a : qp.quiver.arrows) g.arrows.push_back({a.id, a.src, a.tgt, 0});
  for (const auto& a : qp.quiver.arrows) g.arrows.push_back({a.id + "*", a.tgt, a.src, -1});
  for (VertexId v : qp.quiver.vertices)
    g.arrows.push_back({"e" + std::to_string(v), v, v, -2});

  for (const auto& a : qp.quiver.arrows) g.differential.emplace_back(a.id, PathSum{});
  for (const auto& a : qp.quiver.arrows)
    g.differential.emplace_back(a.id + "*", cyclic_derivative(qp.potential, a.id));
  for (VertexId v : qp.quiver.vertices) {
    PathSum de;
    for (const auto& a : qp.quiver.arrows) {
      if (a.src == v) de.terms.push_back(PathTerm{-1, {a.id, a.id + "*"}});
      if (a.tgt == v) de.terms.push_back(PathTerm{1, {a.id + "*", a.id}});
    }
    g.differential.emplace_back("e" + std::to_string(v), canonical(std::move(de)));
  }
  return g;
}

}  // namespace quivex
