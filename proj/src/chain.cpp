#include "bks/chain.hpp"

#include <sstream>

#include "bks/error.hpp"

namespace bks {

namespace {

mpq_class require_rational(const ExactScalar& s, const char* what) {
  if (auto f = s.as_field()) {
    if (auto r = f->as_rational()) return *r;
  }
  throw Error(ErrorKind::Validate, std::string(what) + " must be rational");
}

FieldElem require_field(const ExactScalar& s, const char* what) {
  if (auto f = s.as_field()) return *f;
  throw Error(ErrorKind::Validate, std::string(what) + " must be free of chain symbols");
}

int ensure_chain_var(ScalarTower& tower, int n, const ExactScalar& c,
                     const ExactScalar& s, const PrecisionConfig& cfg) {
  for (int i = 0; i < tower.chain_count(); ++i) {
    const ChainVarDef& def = tower.chain_def(i);
    if (def.n == n && def.cos_theta.equals(c) && def.sin_theta.equals(s)) return i;
  }
  return tower.add_chain_var(n, c, s, cfg);
}

int ensure_root_var(ScalarTower& tower, const ExactScalar& radicand,
                    const PrecisionConfig& cfg) {
  for (int i = 0; i < tower.root_count(); ++i) {
    if (tower.root_def(i).radicand.equals(radicand)) return i;
  }
  return tower.add_root_var(radicand, cfg);
}

// Exact 2-dimensional plane coordinates of a chain under construction.
struct PlanePoint {
  ExactScalar a;  // first basis coordinate
  ExactScalar b;  // second basis coordinate
};

class DescentEmitter {
 public:
  DescentEmitter(DerivationBuilder& b, const SFrame& frame, int context, int pole_fact)
      : b_(b), frame_(frame), ctx_(context), pole_fact_(pole_fact),
        tower_(b.peek().tower), cfg_(b.peek().precision) {}

  DescentResult run(int x_fact, const Vec3& x, const Vec3& y, int max_links) {
    check_frame();
    check_member(x, "descent base");
    check_member(y, "descent target");
    auto [x1, x2] = frame_.coords(vsub(x, frame_.g));
    auto [y1, y2] = frame_.coords(vsub(y, frame_.g));
    PlanePoint xs{x1, x2};
    PlanePoint ys{y1, y2};
    mpq_class bx = require_rational(x1 * x1 + x2 * x2, "base plane norm");
    mpq_class by = require_rational(y1 * y1 + y2 * y2, "target plane norm");
    if (bx <= 0) throw Error(ErrorKind::Validate, "descent base must differ from the pole");
    if (by <= bx)
      throw Error(ErrorKind::Validate, "descent target norm must exceed the base norm");
    DescentResult res = descend(x_fact, xs, bx, ys, by, max_links);
    res.final_fact = align_fact(res.final_fact, y);
    return res;
  }

 private:
  DerivationBuilder& b_;
  const SFrame& frame_;
  int ctx_;
  int pole_fact_;
  ScalarTower tower_;  // shares storage with the derivation's tower
  PrecisionConfig cfg_;

  void check_frame() const {
    ExactScalar one = tower_.integer(1);
    bool ok = (vdot(frame_.g, frame_.g) - one).is_zero() &&
              (vdot(frame_.h1, frame_.h1) - one).is_zero() &&
              (vdot(frame_.h2, frame_.h2) - one).is_zero() &&
              vdot(frame_.g, frame_.h1).is_zero() &&
              vdot(frame_.g, frame_.h2).is_zero() &&
              vdot(frame_.h1, frame_.h2).is_zero();
    if (!ok) throw Error(ErrorKind::Validate, "descent frame is not orthonormal");
  }

  void check_member(const Vec3& p, const char* what) const {
    if (!(vdot(p, frame_.g) - tower_.integer(1)).is_zero())
      throw Error(ErrorKind::Validate, std::string(what) + " is not an exact plane member");
    auto [c1, c2] = frame_.coords(vsub(p, frame_.g));
    if (!vzero(vsub(p, frame_.point(c1, c2))))
      throw Error(ErrorKind::Validate, std::string(what) + " leaves the frame plane");
  }

  Vec3 as_point(const PlanePoint& p) const { return frame_.point(p.a, p.b); }
  Vec3 as_disp(const PlanePoint& p) const { return frame_.displacement(p.a, p.b); }

  // One monotone step from `point` along `disp`, then the fact propagation
  // v(point) = 0 => v(target) = 0. Returns {fact node, target id}.
  std::pair<int, int> step(int point_fact, const Vec3& point, const Vec3& disp) {
    auto [mono, target_id] = emit_monotone(b_, ctx_, pole_fact_, point, disp);
    int fact = b_.add_node(NodeKind::FactFromLeq, ctx_, {mono, point_fact}, {},
                           Conclusion::fact(target_id, 0));
    return {fact, target_id};
  }

  // Two monotone steps lifting v = 0 from the plane point with coordinates
  // xs to its stretch by alpha > 1 (exactly; alpha - 1 certified positive).
  std::pair<int, PlanePoint> emit_scale_down(int x_fact, const PlanePoint& xs,
                                             const ExactScalar& alpha) {
    ExactScalar radicand = alpha - tower_.integer(1);
    ExactScalar mu = tower_.root_sym(ensure_root_var(tower_, radicand, cfg_));
    // Perpendicular auxiliary displacement with plane norm (alpha-1)|xs|^2.
    PlanePoint aux{-(mu * xs.b), mu * xs.a};
    Vec3 x = as_point(xs);
    auto [f1, t1] = step(x_fact, x, as_disp(aux));
    (void)t1;
    PlanePoint mid{xs.a + aux.a, xs.b + aux.b};
    ExactScalar am1 = alpha - tower_.integer(1);
    PlanePoint d2{am1 * xs.a - aux.a, am1 * xs.b - aux.b};
    auto [f2, t2] = step(f1, as_point(mid), as_disp(d2));
    (void)t2;
    PlanePoint scaled{alpha * xs.a, alpha * xs.b};
    return {f2, scaled};
  }

  // A chain endpoint provably equals its target, but the closed form may
  // reduce to the target coordinates only modulo the sine relations, leaving
  // a different canonical form. A scale node transfers the fact onto the
  // literal vector so downstream steps can reference it by id.
  int align_fact(int fact, const Vec3& want) {
    int got = b_.node(fact).conclusion.vecs[0];
    if (got == b_.intern(want)) return fact;
    return emit_scale(b_, ctx_, fact, want);
  }

  DescentResult descend(int x_fact, const PlanePoint& xs, const mpq_class& bx,
                        const PlanePoint& ys, const mpq_class& by, int max_links) {
    DescentResult res = dispatch(x_fact, xs, bx, ys, by, max_links);
    res.final_fact = align_fact(res.final_fact, as_point(ys));
    return res;
  }

  DescentResult dispatch(int x_fact, const PlanePoint& xs, const mpq_class& bx,
                         const PlanePoint& ys, const mpq_class& by, int max_links) {
    ExactScalar delta = xs.a * ys.b - xs.b * ys.a;
    int sd = delta.sign(cfg_);
    if (sd != 0) return rotate_chain(x_fact, xs, bx, ys, by, sd, max_links);

    ExactScalar bxy = xs.a * ys.a + xs.b * ys.b;
    int sxy = bxy.sign(cfg_);
    if (sxy > 0) {
      // Same ray in the plane: pure stretch by lambda = bxy/bx > 1.
      ExactScalar lambda =
          ExactScalar(require_field(bxy, "collinear stretch") *
                          FieldElem(mpq_class(1) / bx),
                      tower_.raw());
      if (!(ys.a - lambda * xs.a).is_zero() || !(ys.b - lambda * xs.b).is_zero())
        throw Error(ErrorKind::Arithmetic, "collinear stretch target mismatch");
      auto [fact, scaled] = emit_scale_down(x_fact, xs, lambda);
      (void)scaled;
      return DescentResult{fact, 0, 1};
    }
    if (sxy < 0) {
      // Opposite rays: route through a perpendicular waypoint of
      // intermediate rational norm, then descend twice.
      mpq_class bp = (bx + by) / 2;
      ExactScalar t(FieldElem::sqrt_rational(bp / bx), tower_.raw());
      PlanePoint ps{-(t * xs.b), t * xs.a};
      DescentResult first = descend(x_fact, xs, bx, ps, bp, max_links);
      DescentResult second = descend(first.final_fact, ps, bp, ys, by, max_links);
      return DescentResult{second.final_fact, first.links + second.links,
                           first.scale_downs + second.scale_downs};
    }
    throw Error(ErrorKind::Arithmetic, "degenerate descent pair");
  }

  DescentResult rotate_chain(int x_fact, const PlanePoint& xs, const mpq_class& bx,
                             const PlanePoint& ys, const mpq_class& by, int eps,
                             int max_links) {
    ExactScalar bxy = xs.a * ys.a + xs.b * ys.b;
    FieldElem root_bxby = FieldElem::sqrt_rational(bx * by);
    ExactScalar cos_theta(require_field(bxy, "plane inner product") / root_bxby,
                          tower_.raw());
    ChainSearch search = chain_search(cos_theta, by / bx, cfg_, max_links);
    ExactScalar c = cos_theta;
    ExactScalar s = search.sin_theta;
    if (search.n >= 2) {
      int id = ensure_chain_var(tower_, search.n, cos_theta, search.sin_theta, cfg_);
      c = tower_.chain_cos(id);
      s = tower_.chain_sin(id);
    }
    const int n = search.n;
    ExactScalar rho(FieldElem::sqrt_rational(by / bx), tower_.raw());
    ExactScalar alpha = rho * c.pow(static_cast<unsigned long>(n));

    int fact = x_fact;
    int scale_downs = 0;
    if (search.alpha_is_one) {
      if (!(alpha - tower_.integer(1)).is_zero())
        throw Error(ErrorKind::Arithmetic, "boundary stretch is not exactly 1");
    } else {
      auto [f, scaled] = emit_scale_down(x_fact, xs, alpha);
      (void)scaled;
      fact = f;
      scale_downs = 1;
    }

    // Link points rho * c^(n-i) * (c + i*eps*s)^i applied to the base
    // coordinates as a complex rotation, i = 0..n. The stretch base is the
    // i = 0 point; the i = n point lands exactly on the target.
    ExactScalar sgn = eps > 0 ? s : -s;
    ExactScalar wa = tower_.integer(1);  // Re((c + i sgn)^i)
    ExactScalar wb = tower_.integer(0);  // Im
    PlanePoint prev{alpha * xs.a, alpha * xs.b};
    for (int i = 1; i <= n; ++i) {
      ExactScalar na = wa * c - wb * sgn;
      ExactScalar nb = wa * sgn + wb * c;
      wa = na;
      wb = nb;
      ExactScalar scale = rho * c.pow(static_cast<unsigned long>(n - i));
      ExactScalar ra = scale * (wa * xs.a - wb * xs.b);
      ExactScalar rb = scale * (wa * xs.b + wb * xs.a);
      PlanePoint cur{ra, rb};
      PlanePoint disp{cur.a - prev.a, cur.b - prev.b};
      auto [f, tid] = step(fact, as_point(prev), as_disp(disp));
      (void)tid;
      fact = f;
      prev = cur;
    }
    if (!(prev.a - ys.a).is_zero() || !(prev.b - ys.b).is_zero())
      throw Error(ErrorKind::Arithmetic, "rotation endpoint missed the target");
    return DescentResult{fact, n, scale_downs};
  }
};

}  // namespace

ChainSearch chain_search(const ExactScalar& cos_theta, const mpq_class& ratio,
                         const PrecisionConfig& cfg, int max_links) {
  ChainSearch out;
  out.cos_theta = cos_theta;
  out.ratio = ratio;
  if (ratio <= 1)
    throw Error(ErrorKind::Validate, "descent ratio must exceed 1");
  FieldElem cf = require_field(cos_theta, "step angle cosine");
  FieldElem one(1);
  FieldElem s2 = one - cf * cf;
  auto s2q = s2.as_rational();
  if (!s2q)
    throw Error(ErrorKind::Validate, "step angle is not representable in the scalar field");
  if (sgn(*s2q) <= 0)
    throw Error(ErrorKind::Validate, "step angle cosine must lie strictly inside (-1, 1)");
  out.sin_theta = ExactScalar(FieldElem::sqrt_rational(*s2q), cos_theta.tower());

  FieldElem ratio_f{mpq_class(ratio)};
  for (int k = 1; k <= max_links; ++k) {
    // Enclose cos(theta/k)^k for reporting regardless of how feasibility of
    // this k is decided.
    Interval ci = cf.eval(cfg.bits);
    Interval ck = ci.acos_clamped().div_ui(static_cast<unsigned long>(k)).cos_on_0_pi();
    out.cos_powers.emplace_back(k, ck.pow_ui(static_cast<unsigned long>(k)));

    int verdict;  // -1 infeasible, 0 exact boundary, +1 strictly feasible
    if (k == 1) {
      // alpha(1) = sqrt(ratio) * C: feasible only for C > 0, decided in the
      // field without intervals.
      if (cf.sign() <= 0) {
        verdict = -1;
      } else {
        verdict = (ratio_f * cf * cf - one).sign();
      }
    } else {
      Interval a2 = ck.pow_ui(static_cast<unsigned long>(2 * k));
      Interval gap = a2 * Interval::from_rational(mpq_class(ratio), cfg.bits) -
                     Interval::from_long(1, cfg.bits);
      if (gap.strictly_positive()) {
        verdict = 1;
      } else if (gap.strictly_negative()) {
        verdict = -1;
      } else {
        // Boundary candidate: decide exactly in a scratch tower.
        ScalarTower scratch;
        ExactScalar sc = scratch.constant(cf);
        ExactScalar ss = scratch.constant(FieldElem::sqrt_rational(*s2q));
        int id = scratch.add_chain_var(k, sc, ss, cfg);
        ExactScalar alpha2 = scratch.constant(ratio_f) *
                             scratch.chain_cos(id).pow(static_cast<unsigned long>(2 * k));
        verdict = (alpha2 - scratch.integer(1)).sign(cfg);
      }
    }
    if (verdict >= 0) {
      out.n = k;
      out.alpha_is_one = (verdict == 0);
      return out;
    }
  }
  std::ostringstream os;
  os << "no feasible link count within " << max_links << " steps";
  throw Error(ErrorKind::Validate, os.str());
}

DescentResult emit_descent(DerivationBuilder& b, const SFrame& frame, int context,
                           int pole_fact, int x_fact, const Vec3& x, const Vec3& y,
                           int max_links) {
  DescentEmitter em(b, frame, context, pole_fact);
  return em.run(x_fact, x, y, max_links);
}

}  // namespace bks
