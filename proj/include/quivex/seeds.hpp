#pragma once

// Class-level heart/silting seeds: a quiver with potential together with the
// integer matrix C of simple classes and G of silting classes.  Simple
// forward/backward tilts update C by the short-exact-sequence formula and G
// by silting mutation; the duality pairing G^T C = Id is preserved exactly.
//
// Ext convention: dim Ext^1(S_i, S_j) is the number of arrows j -> i in the
// current quiver.

#include <algorithm>
#include <string>
#include <vector>

#include "quivex/errors.hpp"
#include "quivex/qp.hpp"

namespace quivex {

// Column-major integer matrix: cols[j][i] is entry (row i, column j).
using IntMatrix = std::vector<std::vector<long long>>;

inline IntMatrix identity_matrix(size_t n) {
  IntMatrix m(n, std::vector<long long>(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline bool is_identity(const IntMatrix& m) {
  for (size_t j = 0; j < m.size(); ++j)
    for (size_t i = 0; i < m[j].size(); ++i)
      if (m[j][i] != (i == j ? 1 : 0)) return false;
  return true;
}

// G^T C with both matrices column-major square.
inline IntMatrix transpose_product(const IntMatrix& g, const IntMatrix& c) {
  size_t n = g.size();
  IntMatrix out(n, std::vector<long long>(n, 0));
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < n; ++i) {
      long long acc = 0;
      for (size_t k = 0; k < n; ++k) acc += g[i][k] * c[j][k];
      out[j][i] = acc;
    }
  return out;
}

// Integer determinant by fraction-free (Bareiss) elimination.
inline long long int_determinant(IntMatrix m) {
  size_t n = m.size();
  if (n == 0) return 1;
  long long sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (size_t j = k + 1; j < n; ++j)
      for (size_t i = k + 1; i < n; ++i)
        m[j][i] = (m[j][i] * m[k][k] - m[k][i] * m[j][k]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

struct Seed {
  QP qp;
  IntMatrix C;  // column j = class of the j-th simple
  IntMatrix G;  // column j = class of the j-th silting summand

  size_t size() const { return C.size(); }
};

namespace detail {

inline size_t vertex_index(const Quiver& q, VertexId k) {
  auto it = std::lower_bound(q.vertices.begin(), q.vertices.end(), k);
  if (it == q.vertices.end() || *it != k)
    fail(errc::unknown_vertex, "vertex " + std::to_string(k));
  return static_cast<size_t>(it - q.vertices.begin());
}

}  // namespace detail

inline Seed init_seed(const QP& qp) {
  validate_qp(qp);
  size_t n = qp.quiver.vertices.size();
  return Seed{qp, identity_matrix(n), identity_matrix(n)};
}

inline bool duality_check(const Seed& s) { return is_identity(transpose_product(s.G, s.C)); }

// Forward tilt at vertex k:
//   c_k <- -c_k,            c_j <- c_j + #arrows(k->j) c_k   (j != k)
//   g_k <- -g_k + sum_{i != k} #arrows(k->i) g_i,  g_j unchanged
// followed by mutation of the quiver with potential at k.
inline Seed tilt_forward(const Seed& s, VertexId k) {
  size_t kk = detail::vertex_index(s.qp.quiver, k);
  size_t n = s.size();
  Seed out = s;
  std::vector<long long> counts(n, 0);  // #arrows k -> vertex j
  for (const auto& a : s.qp.quiver.arrows)
    if (a.src == k) ++counts[detail::vertex_index(s.qp.quiver, a.tgt)];

  const std::vector<long long> ck = s.C[kk];
  for (size_t j = 0; j < n; ++j) {
    if (j == kk) continue;
    if (counts[j] == 0) continue;
    for (size_t i = 0; i < n; ++i) out.C[j][i] += counts[j] * ck[i];
  }
  for (size_t i = 0; i < n; ++i) out.C[kk][i] = -ck[i];

  std::vector<long long> gk(n, 0);
  for (size_t i = 0; i < n; ++i) gk[i] = -s.G[kk][i];
  for (size_t j = 0; j < n; ++j) {
    if (j == kk) continue;
    for (size_t i = 0; i < n; ++i) gk[i] += counts[j] * s.G[j][i];
  }
  out.G[kk] = std::move(gk);

  out.qp = mutate(s.qp, k);
  return out;
}

// Exact inverse of the forward tilt at the same vertex; uses incoming arrow
// counts instead of outgoing ones.
inline Seed tilt_backward(const Seed& s, VertexId k) {
  size_t kk = detail::vertex_index(s.qp.quiver, k);
  size_t n = s.size();
  Seed out = s;
  std::vector<long long> counts(n, 0);  // #arrows vertex j -> k
  for (const auto& a : s.qp.quiver.arrows)
    if (a.tgt == k) ++counts[detail::vertex_index(s.qp.quiver, a.src)];

  const std::vector<long long> ck = s.C[kk];
  for (size_t j = 0; j < n; ++j) {
    if (j == kk || counts[j] == 0) continue;
    for (size_t i = 0; i < n; ++i) out.C[j][i] += counts[j] * ck[i];
  }
  for (size_t i = 0; i < n; ++i) out.C[kk][i] = -ck[i];

  std::vector<long long> gk(n, 0);
  for (size_t i = 0; i < n; ++i) gk[i] = -s.G[kk][i];
  for (size_t j = 0; j < n; ++j) {
    if (j == kk) continue;
    for (size_t i = 0; i < n; ++i) gk[i] += counts[j] * s.G[j][i];
  }
  out.G[kk] = std::move(gk);

  out.qp = mutate(s.qp, k);
  return out;
}

inline Seed tilt(const Seed& s, VertexId k, bool forward) {
  return forward ? tilt_forward(s, k) : tilt_backward(s, k);
}

}  // namespace quivex
