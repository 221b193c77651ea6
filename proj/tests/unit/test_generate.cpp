#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "bks/error.hpp"
#include "bks/generate.hpp"

using namespace bks;

namespace {

void expect_usage(const std::string& needle, const std::function<void()>& body) {
  try {
    body();
    FAIL("expected a usage error mentioning: " << needle);
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::Usage);
    std::string msg = err.what();
    CHECK_MESSAGE(msg.find(needle) != std::string::npos,
                  "message was: " << msg << " (wanted: " << needle << ")");
  }
}

std::array<FieldElem, 3> target(const FieldElem& a, const FieldElem& b,
                                const FieldElem& c) {
  return {a, b, c};
}

// The root-context merge carrying v(point) = 0: the unconditional collapse
// fact the pipeline exists to derive.
int root_zero_merge(const Derivation& d) {
  for (const Node& n : d.nodes)
    if (n.kind == NodeKind::Merge && n.context == 0 &&
        n.conclusion.type == ConclusionType::Fact && n.conclusion.value == 0)
      return n.id;
  return -1;
}

}  // namespace

TEST_CASE("default single-seed instance verifies end to end") {
  GenerateOptions opt;
  opt.seed_axis = 0;
  GenerateResult r = generate_derivation(opt);
  const Derivation& d = r.derivation;

  VerifyStats st = verify_derivation(d, true);
  CHECK(st.contexts == 3);
  CHECK(st.sign_checks > 0);

  REQUIRE(d.seeds.size() == 1);
  CHECK(d.nodes[static_cast<size_t>(d.seeds[0])].kind == NodeKind::Assumption);
  CHECK(d.nodes[static_cast<size_t>(d.goal)].conclusion == Conclusion::bottom());
  CHECK(d.nodes[static_cast<size_t>(d.goal)].context == 0);

  REQUIRE(r.seeds.size() == 1);
  CHECK(r.seeds[0].axis == 0);
  // Each branch runs four descents: two obtuse six-link chains and two
  // one-link acute steps, each followed by one stretch correction.
  CHECK(r.seeds[0].links == 28);
  CHECK(r.seeds[0].scale_downs == 8);
  const Vec3& pole = d.vectors[static_cast<size_t>(r.seeds[0].seed_point)];
  CHECK(pole[0].equals(d.tower.integer(1)));
  CHECK(pole[1].is_zero());
  CHECK(pole[2].is_zero());

  // One shared obtuse angle and two shared stretch radicands.
  CHECK(d.tower.chain_count() == 1);
  CHECK(d.tower.root_count() == 2);
}

TEST_CASE("seed axes produce congruent derivations") {
  GenerateOptions opt;
  opt.seed_axis = 0;
  GenerateResult r0 = generate_derivation(opt);
  for (int axis = 1; axis < 3; ++axis) {
    opt.seed_axis = axis;
    GenerateResult r = generate_derivation(opt);
    CHECK(r.derivation.nodes.size() == r0.derivation.nodes.size());
    CHECK(r.derivation.vectors.size() == r0.derivation.vectors.size());
    CHECK(r.seeds[0].links == r0.seeds[0].links);
    CHECK(r.seeds[0].scale_downs == r0.seeds[0].scale_downs);
    VerifyStats st = verify_derivation(r.derivation, true);
    VerifyStats st0 = verify_derivation(r0.derivation, true);
    CHECK(st.triples == st0.triples);
  }
}

TEST_CASE("three-seed instance closes every branch of the axis triple") {
  GenerateOptions single;
  single.seed_axis = 0;
  size_t pipeline_nodes = generate_derivation(single).derivation.nodes.size() - 1;

  GenerateOptions opt;  // all axes by default
  GenerateResult r = generate_derivation(opt);
  const Derivation& d = r.derivation;

  VerifyStats st = verify_derivation(d, true);
  CHECK(st.contexts == 10);  // root, three axis branches, six split branches

  CHECK(d.seeds.empty());
  CHECK(d.nodes[static_cast<size_t>(d.goal)].kind == NodeKind::Merge);
  CHECK(d.nodes[static_cast<size_t>(d.goal)].conclusion == Conclusion::bottom());

  // Triple sum, triple split with nine branch facts, three seed pipelines
  // (less their assumptions), and the closing merge.
  CHECK(d.nodes.size() == 2 + 9 + 3 * pipeline_nodes + 1);

  REQUIRE(r.seeds.size() == 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(r.seeds[static_cast<size_t>(k)].axis == k);
    CHECK(r.seeds[static_cast<size_t>(k)].links == 28);
  }

  // The angle and both radicands repeat across all three seeds.
  CHECK(d.tower.chain_count() == 1);
  CHECK(d.tower.root_count() == 2);
}

TEST_CASE("custom targets steer the collapsed ray") {
  GenerateOptions opt;
  opt.seed_axis = 0;

  SUBCASE("rational direction off the axes") {
    opt.target = target(FieldElem(4), FieldElem(3), FieldElem(0));
    GenerateResult r = generate_derivation(opt);
    verify_derivation(r.derivation, true);
    int mf = root_zero_merge(r.derivation);
    REQUIRE(mf >= 0);
    int vid = r.derivation.nodes[static_cast<size_t>(mf)].conclusion.vecs[0];
    const ScalarTower& t = r.derivation.tower;
    Vec3 want{t.integer(4), t.integer(3), t.integer(0)};
    CHECK(parallel(r.derivation.vectors[static_cast<size_t>(vid)], want));
  }

  SUBCASE("target orthogonal to the seed is shifted onto its plane") {
    opt.target = target(FieldElem(0), FieldElem(1), FieldElem(1));
    GenerateResult r = generate_derivation(opt);
    verify_derivation(r.derivation, true);
    int mf = root_zero_merge(r.derivation);
    REQUIRE(mf >= 0);
    int vid = r.derivation.nodes[static_cast<size_t>(mf)].conclusion.vecs[0];
    const ScalarTower& t = r.derivation.tower;
    Vec3 want{t.integer(1), t.integer(1), t.integer(1)};
    CHECK(parallel(r.derivation.vectors[static_cast<size_t>(vid)], want));
  }

  SUBCASE("zero target is rejected") {
    opt.target = target(FieldElem(0), FieldElem(0), FieldElem(0));
    expect_usage("nonzero", [&] { generate_derivation(opt); });
  }

  SUBCASE("target along the seed axis is rejected") {
    opt.target = target(FieldElem(2), FieldElem(0), FieldElem(0));
    expect_usage("span of seed axis", [&] { generate_derivation(opt); });
  }

  SUBCASE("irrational displacement length is rejected") {
    opt.target = target(FieldElem(1), FieldElem(1) + FieldElem::sqrt_int(2), FieldElem(0));
    expect_usage("rational squared length", [&] { generate_derivation(opt); });
  }

  SUBCASE("seed axis must name an axis") {
    opt.seed_axis = 5;
    expect_usage("seed axis", [&] { generate_derivation(opt); });
  }
}
