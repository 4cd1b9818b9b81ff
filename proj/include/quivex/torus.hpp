#pragma once

// Coarse matrix model of mixed-angulations on the once-boundary torus with a
// single weight-3 decoration.  A state is the 2x2 integer matrix with rows
// h (horizontal arc homology) and v (vertical arc homology) plus a marker
// recording at which corner of the fundamental square the boundary bubble
// sits.  Corner moves are the equivalences
//   (h,v; BL) ~ (v,-h; TL) ~ (-h,-v; TR) ~ (-v,h; BR),
// normal form puts the bubble bottom-left.  The four flips act by left
// multiplication in normal form, and (h+v) mod 3 is a flip invariant.

#include <array>
#include <cstdint>
#include <string>
#include <utility>

#include "quivex/errors.hpp"

namespace quivex {

enum class Bubble { BL, TL, TR, BR };

inline const char* bubble_name(Bubble b) {
  switch (b) {
    case Bubble::BL: return "BL";
    case Bubble::TL: return "TL";
    case Bubble::TR: return "TR";
    case Bubble::BR: return "BR";
  }
  return "?";
}

using Mat2 = std::array<std::array<long long, 2>, 2>;  // rows: h, v

struct TorusState {
  Mat2 mat{{{1, 0}, {0, 1}}};
  Bubble bubble = Bubble::BL;

  friend bool operator==(const TorusState&, const TorusState&) = default;
};

inline long long det(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

inline Mat2 mul(const Mat2& a, const Mat2& b) {
  Mat2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

enum class TorusFlip { H_fwd, H_fwd_inverse_arc, V_fwd, V_fwd_inverse_arc };

inline const char* torus_flip_name(TorusFlip f) {
  switch (f) {
    case TorusFlip::H_fwd: return "H_fwd";
    case TorusFlip::H_fwd_inverse_arc: return "H_fwd_inverse_arc";
    case TorusFlip::V_fwd: return "V_fwd";
    case TorusFlip::V_fwd_inverse_arc: return "V_fwd_inverse_arc";
  }
  return "?";
}

inline Mat2 torus_flip_matrix(TorusFlip f) {
  switch (f) {
    case TorusFlip::H_fwd: return Mat2{{{0, -1}, {1, 2}}};              // M''_X
    case TorusFlip::H_fwd_inverse_arc: return Mat2{{{-1, 1}, {-1, 0}}}; // M'_X
    case TorusFlip::V_fwd: return Mat2{{{2, 1}, {-1, 0}}};              // M''_Y
    case TorusFlip::V_fwd_inverse_arc: return Mat2{{{0, -1}, {1, -1}}}; // M'_Y
  }
  fail(errc::usage, "unknown torus flip");
}

inline TorusState normal_form(TorusState s) {
  if (det(s.mat) != 1 && det(s.mat) != -1)
    fail(errc::non_unimodular, "|det| of the homology matrix must be 1");
  while (s.bubble != Bubble::BL) {
    // one corner step backwards: (h,v) <- (-v,h)
    Mat2 n;
    n[0] = {-s.mat[1][0], -s.mat[1][1]};
    n[1] = s.mat[0];
    s.mat = n;
    switch (s.bubble) {
      case Bubble::TL: s.bubble = Bubble::BL; break;
      case Bubble::TR: s.bubble = Bubble::TL; break;
      case Bubble::BR: s.bubble = Bubble::TR; break;
      case Bubble::BL: break;
    }
  }
  return s;
}

inline TorusState flip(const TorusState& s, TorusFlip f) {
  if (s.bubble != Bubble::BL) fail(errc::non_normal_form, "flip requires normal form");
  if (det(s.mat) != 1 && det(s.mat) != -1)
    fail(errc::non_unimodular, "|det| of the homology matrix must be 1");
  TorusState out{mul(torus_flip_matrix(f), s.mat), Bubble::BL};
  return normal_form(out);
}

// (h + v) mod 3, componentwise, on a normal-form state.
inline std::pair<int, int> invariant(const TorusState& s) {
  if (s.bubble != Bubble::BL) fail(errc::non_normal_form, "invariant requires normal form");
  auto mod3 = [](long long x) { return static_cast<int>(((x % 3) + 3) % 3); };
  return {mod3(s.mat[0][0] + s.mat[1][0]), mod3(s.mat[0][1] + s.mat[1][1])};
}

inline std::string torus_key(const TorusState& s) {
  return std::string(bubble_name(s.bubble)) + ":" + std::to_string(s.mat[0][0]) + "," +
         std::to_string(s.mat[0][1]) + ";" + std::to_string(s.mat[1][0]) + "," +
         std::to_string(s.mat[1][1]);
}

}  // namespace quivex
