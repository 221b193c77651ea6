#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bks/compile.hpp"
#include "bks/error.hpp"
#include "bks/generate.hpp"

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
  Vec3 vec(long a, long c, long d) const { return {k(a), k(c), k(d)}; }
};

}  // namespace

TEST_CASE("a forcing node expands to one triple") {
  Env e;
  int f = emit_orth_force(e.b, 0, e.pole_fact, e.vec(0, 1, 1));
  ContextSet cs = expand_to_triples(e.b.take());
  CHECK(cs.points.size() == 3);
  REQUIRE(cs.triples.size() == 1);
  CHECK(cs.provenance[0] == std::vector<int>{f});
  CHECK(cs.triples[0][0] < cs.triples[0][1]);
  CHECK(cs.triples[0][1] < cs.triples[0][2]);
}

TEST_CASE("a generic sum rule expands to three triples on seven rays") {
  Env e;
  ExactScalar r2 = e.tower.constant(FieldElem::sqrt_int(2));
  Vec3 ap{e.k(1), e.k(1), r2};
  Vec3 am{e.k(1), e.k(1), -r2};
  emit_sum_rule(e.b, 0, e.pole_fact, ap, am, e.vec(1, 1, 0));
  ContextSet cs = expand_to_triples(e.b.take());
  CHECK(cs.triples.size() == 3);
  CHECK(cs.points.size() == 7);
}

TEST_CASE("a sum rule collapsing onto its own pole degenerates") {
  Env e;
  // With the combination point equal to the pole, the completion ray also
  // lands on the bridging axis, so two of the three gadget triples coincide:
  // five rays, two triples.
  emit_sum_rule(e.b, 0, e.pole_fact, e.vec(1, 0, 1), e.vec(1, 0, -1), e.frame.g);
  ContextSet cs = expand_to_triples(e.b.take());
  CHECK(cs.triples.size() == 2);
  CHECK(cs.points.size() == 5);
}

TEST_CASE("parallel vectors collapse to one point") {
  Env e;

  SUBCASE("integer scaling") {
    int f1 = emit_orth_force(e.b, 0, e.pole_fact, e.vec(0, 1, 1));
    int f2 = emit_orth_force(e.b, 0, e.pole_fact, e.vec(0, 2, 2));
    ContextSet cs = expand_to_triples(e.b.take());
    CHECK(cs.points.size() == 3);
    REQUIRE(cs.triples.size() == 1);
    CHECK(cs.provenance[0] == std::vector<int>{f1, f2});
  }

  SUBCASE("irrational scaling") {
    ExactScalar r2 = e.tower.constant(FieldElem::sqrt_int(2));
    emit_orth_force(e.b, 0, e.pole_fact, Vec3{e.k(0), e.k(1), r2});
    emit_orth_force(e.b, 0, e.pole_fact, Vec3{e.k(0), r2, e.k(2)});
    ContextSet cs = expand_to_triples(e.b.take());
    CHECK(cs.points.size() == 3);
    CHECK(cs.triples.size() == 1);
  }

  SUBCASE("nearby but distinct rays stay separate") {
    emit_orth_force(e.b, 0, e.pole_fact, e.vec(0, 1000000, 999999));
    emit_orth_force(e.b, 0, e.pole_fact, e.vec(0, 1000000, 1000001));
    ContextSet cs = expand_to_triples(e.b.take());
    CHECK(cs.points.size() == 5);
    CHECK(cs.triples.size() == 2);
  }
}

TEST_CASE("expansion re-verifies the derivation") {
  Env e;
  emit_orth_force(e.b, 0, e.pole_fact, e.vec(0, 1, 1));
  Derivation d = e.b.take();
  d.nodes.back().conclusion.value = 1;
  CHECK_THROWS_AS(expand_to_triples(d), Error);
}

TEST_CASE("a generated instance expands to a closed finite set") {
  GenerateOptions opt;
  opt.seed_axis = 0;
  GenerateResult r = generate_derivation(opt);
  ContextSet cs = expand_to_triples(r.derivation);

  // The collapse is what ties the chain endpoints to the flank points the
  // sum rules mention, so the point count must fall well below the raw
  // vector count.
  CHECK(cs.points.size() < r.derivation.vectors.size());
  CHECK(cs.points.size() > 20);
  CHECK(cs.triples.size() == cs.provenance.size());

  int n = static_cast<int>(cs.points.size());
  for (const std::array<int, 3>& t : cs.triples) {
    CHECK(t[0] >= 0);
    CHECK(t[0] < t[1]);
    CHECK(t[1] < t[2]);
    CHECK(t[2] < n);
  }

  // The seed pole survives as a point, available for pinning.
  int seed_vec = r.seeds[0].seed_point;
  CHECK(cs.point_of[static_cast<size_t>(seed_vec)] >= 0);
}
