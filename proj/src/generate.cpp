#include "bks/generate.hpp"

#include <string>

#include "bks/error.hpp"

namespace bks {

namespace {

struct PipelineStats {
  int links = 0;
  int scale_downs = 0;
};

void count(PipelineStats& st, const DescentResult& r) {
  st.links += r.links;
  st.scale_downs += r.scale_downs;
}

// One full collapse pipeline for the seed pole g = frame.g against a flank
// displacement yt (nonzero, orthogonal to g, rational squared length):
// derives v(g + yt) = 0 and v(g - yt/<yt,yt>) = 0 by chain descents inside
// both branches of the split on g +- z, then contradicts v(g) = 1 through
// the two-point sum whose combination collapses back to g. Returns the
// contradiction node.
int emit_seed_pipeline(DerivationBuilder& b, const ScalarTower& tower, int context,
                       int pole_fact, const SFrame& frame, const Vec3& yt,
                       const mpq_class& by, int max_links, PipelineStats& stats) {
  const Vec3& g = frame.g;
  const Vec3& z = frame.h2;

  Vec3 bp = vadd(g, z);
  Vec3 bm = vsub(g, z);
  int sr = emit_sum_rule(b, context, pole_fact, bp, bm, g);
  CaseSplitResult cs = emit_case_split(b, context, sr, pole_fact);

  // Flank pair around g + yt: adding +-sqrt(1 + by) z gives two plane points
  // that are mutually orthogonal and combine exactly to g + yt; the pair
  // around the counter-flank g - yt/by works the same with its own offset.
  ExactScalar alpha = tower.constant(FieldElem(mpq_class(1) / by));
  ExactScalar q = tower.constant(FieldElem::sqrt_rational(1 + by));
  ExactScalar qa = tower.constant(FieldElem::sqrt_rational(1 + mpq_class(1) / by));
  Vec3 x_flank = vadd(g, yt);
  Vec3 x_counter = vsub(g, vscale(alpha, yt));
  Vec3 flank[2] = {vadd(x_flank, vscale(q, z)), vsub(x_flank, vscale(q, z))};
  Vec3 counter[2] = {vadd(x_counter, vscale(qa, z)), vsub(x_counter, vscale(qa, z))};

  int lift_flank[2];
  int lift_counter[2];
  for (int br = 0; br < 2; ++br) {
    int ctx = cs.contexts[br];
    int zero_fact = br == 0 ? cs.y_facts[0] : cs.x_facts[1];
    const Vec3& base = br == 0 ? bm : bp;

    DescentResult r1 =
        emit_descent(b, frame, ctx, pole_fact, zero_fact, base, flank[0], max_links);
    DescentResult r2 =
        emit_descent(b, frame, ctx, pole_fact, zero_fact, base, flank[1], max_links);
    count(stats, r1);
    count(stats, r2);
    int s1 = emit_sum_rule(b, ctx, pole_fact, flank[0], flank[1], x_flank);
    lift_flank[br] =
        b.add_node(NodeKind::FactFromSum, ctx, {s1, r1.final_fact, r2.final_fact}, {},
                   Conclusion::fact(b.node(s1).conclusion.vecs[2], 0));

    DescentResult r3 =
        emit_descent(b, frame, ctx, pole_fact, zero_fact, base, counter[0], max_links);
    DescentResult r4 =
        emit_descent(b, frame, ctx, pole_fact, zero_fact, base, counter[1], max_links);
    count(stats, r3);
    count(stats, r4);
    int s2 = emit_sum_rule(b, ctx, pole_fact, counter[0], counter[1], x_counter);
    lift_counter[br] =
        b.add_node(NodeKind::FactFromSum, ctx, {s2, r3.final_fact, r4.final_fact}, {},
                   Conclusion::fact(b.node(s2).conclusion.vecs[2], 0));
  }

  int mf = b.add_node(NodeKind::Merge, context, {cs.node, lift_flank[0], lift_flank[1]},
                      {}, b.node(lift_flank[0]).conclusion);
  int mc = b.add_node(NodeKind::Merge, context,
                      {cs.node, lift_counter[0], lift_counter[1]}, {},
                      b.node(lift_counter[0]).conclusion);
  int srx = emit_sum_rule(b, context, pole_fact, x_flank, x_counter, g);
  return b.add_node(NodeKind::Contradiction, context, {srx, mf, mc, pole_fact}, {},
                    Conclusion::bottom());
}

Vec3 axis_vec(const ScalarTower& tower, int axis) {
  Vec3 v{tower.integer(0), tower.integer(0), tower.integer(0)};
  v[static_cast<size_t>(axis)] = tower.integer(1);
  return v;
}

// Resolves the flank displacement for one seed: normalize the target onto
// the seed's unit-inner-product plane and split off the displacement part.
std::array<FieldElem, 3> resolve_displacement(const GenerateOptions& opt, int axis) {
  std::array<FieldElem, 3> h{FieldElem(0), FieldElem(0), FieldElem(0)};
  if (opt.target) {
    h = *opt.target;
  } else {
    h[static_cast<size_t>(axis)] = FieldElem(1);
    h[static_cast<size_t>((axis + 1) % 3)] = FieldElem(1);
  }
  if (h[0] == FieldElem(0) && h[1] == FieldElem(0) && h[2] == FieldElem(0))
    throw Error(ErrorKind::Usage, "target must be nonzero");
  FieldElem hk = h[static_cast<size_t>(axis)];
  if (hk == FieldElem(0)) {
    // A target orthogonal to the seed is shifted by the seed axis; zeroing
    // the shifted vector is impossible after the nonzero check above.
    h[static_cast<size_t>(axis)] = FieldElem(1);
    hk = FieldElem(1);
  }
  std::array<FieldElem, 3> y;
  for (size_t i = 0; i < 3; ++i) y[i] = h[i] / hk;
  y[static_cast<size_t>(axis)] = y[static_cast<size_t>(axis)] - FieldElem(1);
  if (y[0] == FieldElem(0) && y[1] == FieldElem(0) && y[2] == FieldElem(0))
    throw Error(ErrorKind::Usage,
                "target lies in the span of seed axis " + std::to_string(axis + 1));
  return y;
}

}  // namespace

GenerateResult generate_derivation(const GenerateOptions& opt) {
  if (opt.seed_axis < -1 || opt.seed_axis > 2)
    throw Error(ErrorKind::Usage, "seed axis must be 1, 2, 3 or all");

  ScalarTower tower;
  DerivationBuilder b(tower, opt.precision);
  GenerateResult out;

  auto run_seed = [&](int axis, int context, int pole_fact) {
    std::array<FieldElem, 3> y = resolve_displacement(opt, axis);
    FieldElem by_f = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
    auto by = by_f.as_rational();
    if (!by)
      throw Error(ErrorKind::Usage,
                  "target displacement must have a rational squared length");
    Vec3 g = axis_vec(tower, axis);
    Vec3 yt{tower.constant(y[0]), tower.constant(y[1]), tower.constant(y[2])};
    FieldElem inv_len = FieldElem(1) / FieldElem::sqrt_rational(*by);
    ExactScalar s = tower.constant(inv_len);
    SFrame frame{g, vscale(s, yt), vscale(s, vcross(g, yt))};

    PipelineStats st;
    int bot = emit_seed_pipeline(b, tower, context, pole_fact, frame, yt, *by,
                                 opt.max_links, st);
    out.seeds.push_back(SeedReport{axis, b.intern(g), b.intern(frame.h1),
                                   b.intern(frame.h2), st.links, st.scale_downs});
    return bot;
  };

  if (opt.seed_axis >= 0) {
    Vec3 g = axis_vec(tower, opt.seed_axis);
    int assumption = emit_assumption(b, g);
    b.set_goal(run_seed(opt.seed_axis, 0, assumption));
  } else {
    int ts = emit_triple_sum(b, 0, axis_vec(tower, 0), axis_vec(tower, 1),
                             axis_vec(tower, 2));
    TripleSplitResult sp = emit_triple_split(b, 0, ts);
    std::array<int, 3> bots{};
    for (int k = 0; k < 3; ++k)
      bots[static_cast<size_t>(k)] = run_seed(k, sp.contexts[k], sp.facts[k][k]);
    int mrg = b.add_node(NodeKind::Merge, 0, {sp.node, bots[0], bots[1], bots[2]}, {},
                         Conclusion::bottom());
    b.set_goal(mrg);
  }

  out.derivation = b.take();
  return out;
}

}  // namespace bks
