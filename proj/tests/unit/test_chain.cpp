#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "bks/chain.hpp"
#include "bks/error.hpp"

using namespace bks;

namespace {

struct Env {
  ScalarTower tower;
  PrecisionConfig cfg;
  SFrame frame;
  DerivationBuilder b;
  int pole_fact;

  Env() : frame(SFrame::standard(0, tower)), b(tower, cfg) {
    pole_fact = emit_assumption(b, frame.g);
  }

  ExactScalar k(long v) const { return tower.integer(v); }
  ExactScalar f(const FieldElem& v) const { return tower.constant(v); }
  Vec3 vec(long a, long c, long d) const { return {k(a), k(c), k(d)}; }

  // A fact v(p) = 0 obtained by forcing against an orthogonal unit pole.
  int zero_fact(const Vec3& p, const Vec3& unit_pole) {
    int a = emit_assumption(b, unit_pole);
    return emit_orth_force(b, 0, a, p);
  }
};

void expect_error(ErrorKind kind, const std::string& needle,
                  const std::function<void()>& body) {
  try {
    body();
    FAIL("expected an error mentioning: " << needle);
  } catch (const Error& err) {
    CHECK(err.kind() == kind);
    std::string msg = err.what();
    CHECK_MESSAGE(msg.find(needle) != std::string::npos,
                  "message was: " << msg << " (wanted: " << needle << ")");
  }
}

}  // namespace

TEST_CASE("link counts are minimal across angle regimes") {
  ScalarTower tower;
  PrecisionConfig cfg;
  auto fe = [&](const FieldElem& v) { return tower.constant(v); };

  SUBCASE("obtuse angle needs six links at ratio 3") {
    FieldElem c = FieldElem(mpq_class(-1, 3)) * FieldElem::sqrt_int(6);
    ChainSearch cs = chain_search(fe(c), mpq_class(3), cfg, 64);
    CHECK(cs.n == 6);
    CHECK_FALSE(cs.alpha_is_one);
    CHECK(cs.cos_powers.size() == 6);
    CHECK(cs.cos_powers.back().first == 6);
    FieldElem s = FieldElem(mpq_class(1, 3)) * FieldElem::sqrt_int(3);
    CHECK((cs.sin_theta - fe(s)).is_zero());
  }

  SUBCASE("acute angle descends in one link") {
    FieldElem c = FieldElem(mpq_class(1, 3)) * FieldElem::sqrt_int(6);
    ChainSearch cs = chain_search(fe(c), mpq_class(3), cfg, 64);
    CHECK(cs.n == 1);
    CHECK_FALSE(cs.alpha_is_one);
  }

  SUBCASE("field-level exact boundary at one link") {
    ChainSearch cs = chain_search(fe(FieldElem(mpq_class(1, 2))), mpq_class(4), cfg, 64);
    CHECK(cs.n == 1);
    CHECK(cs.alpha_is_one);
  }

  SUBCASE("ring-level exact boundary at two links") {
    // cos(theta) = -1/3 with ratio 9: cos(theta/2)^2 = 1/3 exactly, so the
    // interval test straddles zero and the scratch-tower sign decides.
    ChainSearch cs = chain_search(fe(FieldElem(mpq_class(-1, 3))), mpq_class(9), cfg, 64);
    CHECK(cs.n == 2);
    CHECK(cs.alpha_is_one);
  }

  SUBCASE("quarter turn at moderate ratio") {
    ChainSearch cs = chain_search(fe(FieldElem(0)), mpq_class(5, 2), cfg, 64);
    CHECK(cs.n == 3);
    CHECK_FALSE(cs.alpha_is_one);
  }

  SUBCASE("rejects ratios at or below 1") {
    expect_error(ErrorKind::Validate, "ratio must exceed 1",
                 [&] { chain_search(fe(FieldElem(0)), mpq_class(1), cfg, 64); });
  }

  SUBCASE("rejects cosines with irrational square") {
    FieldElem c = FieldElem(mpq_class(1, 2)) + FieldElem(mpq_class(1, 3)) * FieldElem::sqrt_int(2);
    expect_error(ErrorKind::Validate, "not representable",
                 [&] { chain_search(fe(c), mpq_class(3), cfg, 64); });
  }

  SUBCASE("rejects cosines outside the open unit interval") {
    expect_error(ErrorKind::Validate, "strictly inside",
                 [&] { chain_search(fe(FieldElem(1)), mpq_class(3), cfg, 64); });
    expect_error(ErrorKind::Validate, "strictly inside",
                 [&] { chain_search(fe(FieldElem(mpq_class(-3, 2))), mpq_class(3), cfg, 64); });
  }

  SUBCASE("reports infeasibility within the link budget") {
    expect_error(ErrorKind::Validate, "no feasible link count", [&] {
      chain_search(fe(FieldElem(mpq_class(-99, 100))), mpq_class(101, 100), cfg, 64);
    });
  }
}

TEST_CASE("exact-boundary descent emits a pure rotation") {
  Env e;
  // Base (1,1,0) at plane coordinates (1,0); target (1,-1,2*sqrt(2)) at
  // (-1, 2*sqrt(2)) has norm 9 and inner product -1 with the base, so the
  // two-link boundary chain applies with no stretch correction.
  Vec3 x = e.vec(1, 1, 0);
  ExactScalar r8 = e.f(FieldElem(2) * FieldElem::sqrt_int(2));
  Vec3 y{e.k(1), e.k(-1), r8};
  ExactScalar h = e.f(FieldElem(mpq_class(1, 2)) * FieldElem::sqrt_int(2));
  int fx = e.zero_fact(x, Vec3{h, -h, e.k(0)});

  DescentResult r = emit_descent(e.b, e.frame, 0, e.pole_fact, fx, x, y);
  CHECK(r.links == 2);
  CHECK(r.scale_downs == 0);
  CHECK(e.b.peek().tower.chain_count() == 1);
  CHECK(e.b.peek().tower.root_count() == 0);
  const Conclusion& c = e.b.node(r.final_fact).conclusion;
  CHECK(c.type == ConclusionType::Fact);
  CHECK(c.value == 0);
  CHECK(vzero(vsub(e.b.vector(c.vecs[0]), y)));

  Derivation d = e.b.take();
  VerifyStats st = verify_derivation(d, false);
  CHECK(st.triples == 1 + 3 * 2);  // forcing triple plus two monotone steps
}

TEST_CASE("collinear descent is a pure stretch") {
  Env e;
  Vec3 x = e.vec(1, 0, 1);
  Vec3 y = e.vec(1, 0, 3);
  ExactScalar h = e.f(FieldElem(mpq_class(1, 2)) * FieldElem::sqrt_int(2));
  int fx = e.zero_fact(x, Vec3{h, e.k(0), -h});

  DescentResult r = emit_descent(e.b, e.frame, 0, e.pole_fact, fx, x, y);
  CHECK(r.links == 0);
  CHECK(r.scale_downs == 1);
  CHECK(e.b.peek().tower.chain_count() == 0);
  CHECK(e.b.peek().tower.root_count() == 1);
  CHECK(vzero(vsub(e.b.vector(e.b.node(r.final_fact).conclusion.vecs[0]), y)));
  verify_derivation(e.b.take(), false);
}

TEST_CASE("opposite-ray descent routes through a perpendicular waypoint") {
  Env e;
  Vec3 x = e.vec(1, 0, 1);
  Vec3 y = e.vec(1, 0, -2);
  ExactScalar h = e.f(FieldElem(mpq_class(1, 2)) * FieldElem::sqrt_int(2));
  int fx = e.zero_fact(x, Vec3{h, e.k(0), -h});

  DescentResult r = emit_descent(e.b, e.frame, 0, e.pole_fact, fx, x, y);
  // Quarter-turn legs at ratios 5/2 and 8/5 need 3 and 6 links.
  CHECK(r.links == 9);
  CHECK(r.scale_downs == 2);
  CHECK(e.b.peek().tower.chain_count() == 2);
  CHECK(vzero(vsub(e.b.vector(e.b.node(r.final_fact).conclusion.vecs[0]), y)));
  verify_derivation(e.b.take(), false);
}

TEST_CASE("case-split opening descends to both flank points and merges") {
  Env e;
  Vec3 bp = e.vec(1, 0, 1);
  Vec3 bm = e.vec(1, 0, -1);
  int sr = emit_sum_rule(e.b, 0, e.pole_fact, bp, bm, e.frame.g);
  CaseSplitResult cs = emit_case_split(e.b, 0, sr, e.pole_fact);

  ExactScalar r2 = e.f(FieldElem::sqrt_int(2));
  Vec3 ap{e.k(1), e.k(1), r2};
  Vec3 am{e.k(1), e.k(1), -r2};
  Vec3 y1 = e.vec(1, 1, 0);

  int lifted[2];
  for (int br = 0; br < 2; ++br) {
    int ctx = cs.contexts[br];
    // The summand valued 0 in this branch is the descent base for both
    // flank points.
    int zf = br == 0 ? cs.y_facts[0] : cs.x_facts[1];
    const Vec3& base = br == 0 ? bm : bp;
    DescentResult rp = emit_descent(e.b, e.frame, ctx, e.pole_fact, zf, base, ap);
    DescentResult rm = emit_descent(e.b, e.frame, ctx, e.pole_fact, zf, base, am);
    CHECK(rp.links + rm.links == 7);  // one obtuse six-link chain, one acute link
    CHECK(rp.scale_downs + rm.scale_downs == 2);
    int sr2 = emit_sum_rule(e.b, ctx, e.pole_fact, ap, am, y1);
    const Node& sn = e.b.node(sr2);
    lifted[br] = e.b.add_node(
        NodeKind::FactFromSum, ctx,
        {sr2, e.b.node(rp.final_fact).id, e.b.node(rm.final_fact).id}, {},
        Conclusion::fact(sn.conclusion.vecs[2], 0));
  }
  int y1_id = e.b.node(lifted[0]).conclusion.vecs[0];
  CHECK(vzero(vsub(e.b.vector(y1_id), y1)));
  int mrg = e.b.add_node(NodeKind::Merge, 0, {cs.node, lifted[0], lifted[1]}, {},
                         Conclusion::fact(y1_id, 0));
  CHECK(e.b.node(mrg).context == 0);

  // Both branches use the same obtuse angle, and both stretch radicands
  // repeat, so the tower stays small.
  CHECK(e.b.peek().tower.chain_count() == 1);
  CHECK(e.b.peek().tower.root_count() == 2);

  Derivation d = e.b.take();
  VerifyStats st = verify_derivation(d, false);
  CHECK(st.contexts == 3);
  CHECK(st.sign_checks > 0);
}

TEST_CASE("descent rejects unusable geometry") {
  Env e;

  SUBCASE("norms must strictly increase") {
    expect_error(ErrorKind::Validate, "must exceed the base norm", [&] {
      emit_descent(e.b, e.frame, 0, e.pole_fact, e.pole_fact, e.vec(1, 1, 0),
                   e.vec(1, 0, 1));
    });
    expect_error(ErrorKind::Validate, "must exceed the base norm", [&] {
      emit_descent(e.b, e.frame, 0, e.pole_fact, e.pole_fact, e.vec(1, 1, 0), e.frame.g);
    });
  }

  SUBCASE("base must leave the pole") {
    expect_error(ErrorKind::Validate, "must differ from the pole", [&] {
      emit_descent(e.b, e.frame, 0, e.pole_fact, e.pole_fact, e.frame.g, e.vec(1, 0, 1));
    });
  }

  SUBCASE("points must lie on the unit-inner-product plane") {
    expect_error(ErrorKind::Validate, "not an exact plane member", [&] {
      emit_descent(e.b, e.frame, 0, e.pole_fact, e.pole_fact, e.vec(2, 0, 1),
                   e.vec(1, 0, 3));
    });
  }

  SUBCASE("plane norms must be rational") {
    ExactScalar c = e.f(FieldElem(1) + FieldElem::sqrt_int(2));
    Vec3 x{e.k(1), c, e.k(0)};
    expect_error(ErrorKind::Validate, "base plane norm must be rational", [&] {
      emit_descent(e.b, e.frame, 0, e.pole_fact, e.pole_fact, x, e.vec(1, 0, 3));
    });
  }

  SUBCASE("the step angle must have a rational squared cosine") {
    ExactScalar ya = e.f(FieldElem(1) + FieldElem::sqrt_int(2));
    ExactScalar yb = e.f(FieldElem(1) - FieldElem::sqrt_int(2));
    Vec3 y{e.k(1), ya, yb};  // plane norm 6, inner product 1 + sqrt(2)
    expect_error(ErrorKind::Validate, "not representable", [&] {
      emit_descent(e.b, e.frame, 0, e.pole_fact, e.pole_fact, e.vec(1, 1, 0), y);
    });
  }
}
