#include "bks/geometry.hpp"

#include "bks/error.hpp"

namespace bks {

Vec3 vadd(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

Vec3 vsub(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

Vec3 vscale(const ExactScalar& s, const Vec3& a) {
  return {s * a[0], s * a[1], s * a[2]};
}

Vec3 vneg(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }

ExactScalar vdot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3 vcross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1],
          a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

ExactScalar det3(const Vec3& a, const Vec3& b, const Vec3& c) {
  return vdot(a, vcross(b, c));
}

bool vzero_form(const Vec3& a) {
  return a[0].is_zero_form() && a[1].is_zero_form() && a[2].is_zero_form();
}

bool vzero(const Vec3& a) {
  return a[0].is_zero() && a[1].is_zero() && a[2].is_zero();
}

bool parallel(const Vec3& a, const Vec3& b) { return vzero(vcross(a, b)); }

SFrame SFrame::standard(int axis, const ScalarTower& tower) {
  if (axis < 0 || axis > 2) throw Error(ErrorKind::Usage, "frame axis must be 0, 1 or 2");
  const ExactScalar zero = tower.integer(0);
  const ExactScalar one = tower.integer(1);
  auto unit = [&](int k) {
    Vec3 v{zero, zero, zero};
    v[k] = one;
    return v;
  };
  return SFrame{unit(axis), unit((axis + 1) % 3), unit((axis + 2) % 3)};
}

Vec3 SFrame::point(const ExactScalar& p1, const ExactScalar& p2) const {
  return vadd(g, displacement(p1, p2));
}

Vec3 SFrame::displacement(const ExactScalar& p1, const ExactScalar& p2) const {
  return vadd(vscale(p1, h1), vscale(p2, h2));
}

std::pair<ExactScalar, ExactScalar> SFrame::coords(const Vec3& p) const {
  return {vdot(p, h1), vdot(p, h2)};
}

ExactScalar s_inner(const Vec3& p, const Vec3& q) {
  ExactScalar d = vdot(p, q);
  return d - d.tower_constant(1);
}

Vec3 w_combine_plane_scaled(const Vec3& g, const Vec3& p, const Vec3& q) {
  ExactScalar one = vdot(g, g).tower_constant(1);
  Vec3 ps = vsub(p, g);
  Vec3 qs = vsub(q, g);
  ExactScalar bp = vdot(ps, ps);
  ExactScalar bq = vdot(qs, qs);
  ExactScalar den = one + one + bp + bq;
  return vadd(vscale(den, g), vadd(vscale(one + bq, ps), vscale(one + bp, qs)));
}

}  // namespace bks
