#pragma once

#include <array>
#include <utility>

#include "bks/scalar.hpp"

namespace bks {

// Column vector in the real 3-dimensional ambient space, with exact scalar
// entries. All constructions in the derivation pipeline are division-free;
// vectors standing for projector rays are kept projectively (any nonzero
// scalar multiple names the same ray).
using Vec3 = std::array<ExactScalar, 3>;

Vec3 vadd(const Vec3& a, const Vec3& b);
Vec3 vsub(const Vec3& a, const Vec3& b);
Vec3 vscale(const ExactScalar& s, const Vec3& a);
Vec3 vneg(const Vec3& a);
ExactScalar vdot(const Vec3& a, const Vec3& b);
Vec3 vcross(const Vec3& a, const Vec3& b);
ExactScalar det3(const Vec3& a, const Vec3& b, const Vec3& c);

// Structural zero (no certified sign involved).
bool vzero_form(const Vec3& a);
// Exact zero in the quotient ring, component-wise.
bool vzero(const Vec3& a);
// Rays coincide: cross product vanishes exactly (callers separately certify
// that both vectors are nonzero).
bool parallel(const Vec3& a, const Vec3& b);

// The affine plane of vectors P with <P, g> = 1 around a unit pole g,
// carrying the Parseval inner product of displacements. For exact members
// P, Q of the plane the plane inner product is <P, Q> - 1.
struct SFrame {
  Vec3 g;   // unit pole
  Vec3 h1;  // orthonormal basis of the displacement plane
  Vec3 h2;

  // Standard frame with pole e_axis and the other two coordinate axes in
  // cyclic order.
  static SFrame standard(int axis, const ScalarTower& tower);

  // g + p1*h1 + p2*h2.
  Vec3 point(const ExactScalar& p1, const ExactScalar& p2) const;
  // Displacement d = p1*h1 + p2*h2.
  Vec3 displacement(const ExactScalar& p1, const ExactScalar& p2) const;
  // Basis coordinates of (P - <P,g> g), exact.
  std::pair<ExactScalar, ExactScalar> coords(const Vec3& p) const;
};

// Plane inner product of two exact plane members (<P,g> = <Q,g> = 1 is the
// caller's responsibility; verified checks enforce it ring-exactly).
ExactScalar s_inner(const Vec3& p, const Vec3& q);

// Two-point combination in the plane around pole g, kept projectively
// scaled by the positive factor (2+bp+bq):
//   (2+bp+bq)g + (1+bq)(p-g) + (1+bp)(q-g)
// with bp, bq the plane norms of p and q. For exact plane members this
// equals <q,q>p + <p,p>q with ambient norms.
Vec3 w_combine_plane_scaled(const Vec3& g, const Vec3& p, const Vec3& q);

}  // namespace bks
