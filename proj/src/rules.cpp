#include "bks/rules.hpp"

#include <algorithm>
#include <initializer_list>
#include <sstream>

#include "bks/error.hpp"

namespace bks {

namespace {

constexpr std::pair<NodeKind, const char*> kKindNames[] = {
    {NodeKind::Assumption, "assumption"},
    {NodeKind::BranchFact, "branch_fact"},
    {NodeKind::TripleSum, "triple_sum"},
    {NodeKind::TripleSplit, "triple_split"},
    {NodeKind::CaseSplit, "case_split"},
    {NodeKind::OrthForce, "orth_force"},
    {NodeKind::Scale, "scale"},
    {NodeKind::SumRule, "sum_rule"},
    {NodeKind::Monotone, "monotone"},
    {NodeKind::FactFromSum, "fact_from_sum"},
    {NodeKind::FactFromLeq, "fact_from_leq"},
    {NodeKind::Merge, "merge"},
    {NodeKind::Contradiction, "contradiction"},
};

}  // namespace

const char* node_kind_name(NodeKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "unknown";
}

std::optional<NodeKind> node_kind_from_name(const std::string& s) {
  for (const auto& [kind, name] : kKindNames) {
    if (s == name) return kind;
  }
  return std::nullopt;
}

std::vector<std::array<int, 3>> node_triples(const Node& node) {
  auto role = [&](const char* r) { return node.vecs.at(r); };
  switch (node.kind) {
    case NodeKind::TripleSum:
      return {{role("a"), role("b"), role("c")}};
    case NodeKind::OrthForce:
      return {{role("pole"), role("point"), role("force")}};
    case NodeKind::SumRule:
      return {{role("x"), role("y"), role("axis")},
              {role("w"), role("z"), role("axis")},
              {role("z"), role("pole"), role("force")}};
    case NodeKind::Monotone:
      return {{role("wpoint"), role("target"), role("axis")},
              {role("point"), role("disp"), role("axis")},
              {role("disp"), role("pole"), role("force")}};
    default:
      return {};
  }
}

DerivationBuilder::DerivationBuilder(const ScalarTower& tower, const PrecisionConfig& cfg) {
  der_.tower = tower;
  der_.precision = cfg;
  der_.contexts.push_back(Context{0, -1, -1, -1});
}

int DerivationBuilder::intern(const Vec3& v) {
  std::array<std::string, 3> key{v[0].str(), v[1].str(), v[2].str()};
  auto it = intern_.find(key);
  if (it != intern_.end()) return it->second;
  int id = static_cast<int>(der_.vectors.size());
  der_.vectors.push_back(v);
  intern_.emplace(std::move(key), id);
  return id;
}

int DerivationBuilder::add_context(int parent, int split_node, int branch) {
  int id = static_cast<int>(der_.contexts.size());
  der_.contexts.push_back(Context{id, parent, split_node, branch});
  return id;
}

int DerivationBuilder::add_node(NodeKind kind, int context, std::vector<int> inputs,
                                std::map<std::string, int> vecs, Conclusion conclusion,
                                std::vector<int> children) {
  Node n;
  n.id = static_cast<int>(der_.nodes.size());
  n.kind = kind;
  n.context = context;
  n.inputs = std::move(inputs);
  n.vecs = std::move(vecs);
  n.conclusion = std::move(conclusion);
  n.children = std::move(children);
  der_.nodes.push_back(std::move(n));
  return der_.nodes.back().id;
}

Derivation DerivationBuilder::take() { return std::move(der_); }

namespace {

class Checker {
 public:
  Checker(const Derivation& d, bool require_goal) : d_(d), require_goal_(require_goal) {}

  VerifyStats run() {
    check_contexts();
    for (const Node& n : d_.nodes) check_node(n);
    check_goal_and_seeds();
    stats_.nodes = static_cast<int>(d_.nodes.size());
    stats_.contexts = static_cast<int>(d_.contexts.size());
    return stats_;
  }

 private:
  const Derivation& d_;
  bool require_goal_;
  VerifyStats stats_;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Validate, msg);
  }
  [[noreturn]] void fail_node(const Node& n, const std::string& msg) const {
    std::ostringstream os;
    os << "node " << n.id << " (" << node_kind_name(n.kind) << "): " << msg;
    fail(os.str());
  }

  const Vec3& vec_id(const Node& n, int id) const {
    if (id < 0 || id >= static_cast<int>(d_.vectors.size()))
      fail_node(n, "vector id out of range");
    return d_.vectors[static_cast<size_t>(id)];
  }
  int role_id(const Node& n, const char* role) const {
    auto it = n.vecs.find(role);
    if (it == n.vecs.end()) fail_node(n, std::string("missing vector role '") + role + "'");
    return it->second;
  }
  const Vec3& role(const Node& n, const char* r) const { return vec_id(n, role_id(n, r)); }

  bool ancestor_or_self(int anc, int ctx) const {
    while (ctx >= 0) {
      if (ctx == anc) return true;
      ctx = d_.contexts[static_cast<size_t>(ctx)].parent;
    }
    return false;
  }

  // Input without the visibility requirement; only merges may use it, since
  // lifting across sibling branches is exactly their job.
  const Node& input_any_context(const Node& n, size_t i) const {
    if (i >= n.inputs.size()) fail_node(n, "missing input");
    int id = n.inputs[i];
    if (id < 0 || id >= n.id) fail_node(n, "input id must precede the node");
    return d_.nodes[static_cast<size_t>(id)];
  }

  const Node& input(const Node& n, size_t i) const {
    const Node& in = input_any_context(n, i);
    if (!ancestor_or_self(in.context, n.context))
      fail_node(n, "input conclusion is not visible from this context");
    return in;
  }

  void need_arity(const Node& n, size_t k) const {
    if (n.inputs.size() != k) fail_node(n, "wrong number of inputs");
  }

  void check_zero(const Node& n, const ExactScalar& s, const char* what) const {
    if (!s.is_zero()) fail_node(n, std::string(what) + " must vanish exactly");
  }

  void check_positive(const Node& n, const ExactScalar& s, const char* what) {
    ++stats_.sign_checks;
    if (s.sign(d_.precision) != 1) fail_node(n, std::string(what) + " must be positive");
  }

  void check_nonzero_vec(const Node& n, const Vec3& v, const char* what) {
    check_positive(n, vdot(v, v), (std::string(what) + " norm").c_str());
  }

  void check_exact_vec(const Node& n, const Vec3& stored, const Vec3& expected,
                       const char* what) const {
    if (!vzero(vsub(stored, expected)))
      fail_node(n, std::string(what) + " does not match its defining expression");
  }

  // An emitted triple: pairwise orthogonal, all members certified nonzero.
  void check_triple(const Node& n, const Vec3& a, const Vec3& b, const Vec3& c,
                    const char* what) {
    check_zero(n, vdot(a, b), what);
    check_zero(n, vdot(a, c), what);
    check_zero(n, vdot(b, c), what);
    check_nonzero_vec(n, a, what);
    check_nonzero_vec(n, b, what);
    check_nonzero_vec(n, c, what);
    ++stats_.triples;
  }

  const Node& fact_input(const Node& n, size_t i, int vec, int value) const {
    const Node& in = input(n, i);
    if (in.conclusion != Conclusion::fact(vec, value))
      fail_node(n, "input " + std::to_string(i) + " is not the required value fact");
    return in;
  }

  void check_contexts() const {
    if (d_.contexts.empty()) fail("derivation has no root context");
    for (size_t i = 0; i < d_.contexts.size(); ++i) {
      const Context& c = d_.contexts[i];
      if (c.id != static_cast<int>(i)) fail("context ids must be consecutive");
      if (i == 0) {
        if (c.parent != -1 || c.split_node != -1)
          fail("root context must not have a parent or split");
        continue;
      }
      if (c.parent < 0 || c.parent >= c.id)
        fail("context " + std::to_string(c.id) + ": parent must precede it");
      if (c.split_node < 0 || c.split_node >= static_cast<int>(d_.nodes.size()))
        fail("context " + std::to_string(c.id) + ": missing split node");
      const Node& sp = d_.nodes[static_cast<size_t>(c.split_node)];
      if (sp.kind != NodeKind::CaseSplit && sp.kind != NodeKind::TripleSplit)
        fail("context " + std::to_string(c.id) + ": split node has the wrong kind");
      if (sp.context != c.parent)
        fail("context " + std::to_string(c.id) + ": split node lives outside the parent");
      if (c.branch < 0 || c.branch >= static_cast<int>(sp.children.size()) ||
          sp.children[static_cast<size_t>(c.branch)] != c.id)
        fail("context " + std::to_string(c.id) + ": branch does not match its split");
    }
  }

  void check_node(const Node& n) {
    if (n.id < 0 || n.id >= static_cast<int>(d_.nodes.size()) ||
        &d_.nodes[static_cast<size_t>(n.id)] != &n)
      fail("node ids must be consecutive");
    if (n.context < 0 || n.context >= static_cast<int>(d_.contexts.size()))
      fail_node(n, "context out of range");
    if (n.kind != NodeKind::CaseSplit && n.kind != NodeKind::TripleSplit &&
        !n.children.empty())
      fail_node(n, "only splits declare child contexts");
    switch (n.kind) {
      case NodeKind::Assumption: return check_assumption(n);
      case NodeKind::BranchFact: return check_branch_fact(n);
      case NodeKind::TripleSum: return check_triple_sum(n);
      case NodeKind::TripleSplit: return check_split(n, 3);
      case NodeKind::CaseSplit: return check_split(n, 2);
      case NodeKind::OrthForce: return check_orth_force(n);
      case NodeKind::Scale: return check_scale(n);
      case NodeKind::SumRule: return check_sum_rule(n);
      case NodeKind::Monotone: return check_monotone(n);
      case NodeKind::FactFromSum: return check_fact_from_sum(n);
      case NodeKind::FactFromLeq: return check_fact_from_leq(n);
      case NodeKind::Merge: return check_merge(n);
      case NodeKind::Contradiction: return check_contradiction(n);
    }
    fail_node(n, "unknown node kind");
  }

  void check_assumption(const Node& n) {
    need_arity(n, 0);
    if (n.context != 0) fail_node(n, "assumptions must live in the root context");
    int p = role_id(n, "point");
    check_nonzero_vec(n, vec_id(n, p), "seed point");
    if (n.conclusion != Conclusion::fact(p, 1))
      fail_node(n, "conclusion must assert value 1 for the seed point");
  }

  void check_branch_fact(const Node& n) const {
    need_arity(n, 1);
    int id = n.inputs[0];
    if (id < 0 || id >= n.id) fail_node(n, "input id must precede the node");
    const Node& sp = d_.nodes[static_cast<size_t>(id)];
    if (sp.kind != NodeKind::CaseSplit && sp.kind != NodeKind::TripleSplit)
      fail_node(n, "input must be a split node");
    const Context& ctx = d_.contexts[static_cast<size_t>(n.context)];
    if (ctx.split_node != sp.id)
      fail_node(n, "node must live directly in a branch of its split");
    int branch = ctx.branch;
    const Node& base = d_.nodes[static_cast<size_t>(sp.inputs.at(0))];
    const std::vector<int>& bv = base.conclusion.vecs;
    std::vector<Conclusion> injected;
    if (sp.kind == NodeKind::CaseSplit) {
      injected = {Conclusion::fact(bv[0], branch == 0 ? 1 : 0),
                  Conclusion::fact(bv[1], branch == 0 ? 0 : 1)};
    } else {
      for (int j = 0; j < 3; ++j)
        injected.push_back(Conclusion::fact(bv[static_cast<size_t>(j)], j == branch ? 1 : 0));
    }
    for (const Conclusion& c : injected) {
      if (n.conclusion == c) return;
    }
    fail_node(n, "conclusion is not a fact injected by this branch");
  }

  void check_triple_sum(const Node& n) {
    need_arity(n, 0);
    check_triple(n, role(n, "a"), role(n, "b"), role(n, "c"), "basis triple");
    if (n.conclusion != Conclusion::sum3(role_id(n, "a"), role_id(n, "b"), role_id(n, "c")))
      fail_node(n, "conclusion must be the three-way sum");
  }

  void check_split(const Node& n, int ways) const {
    if (ways == 2) {
      need_arity(n, 2);
      const Node& sum = input(n, 0);
      if (sum.conclusion.type != ConclusionType::Sum2)
        fail_node(n, "first input must be a two-point sum");
      fact_input(n, 1, sum.conclusion.vecs[2], 1);
    } else {
      need_arity(n, 1);
      const Node& sum = input(n, 0);
      if (sum.conclusion.type != ConclusionType::Sum3)
        fail_node(n, "input must be a basis triple sum");
    }
    if (static_cast<int>(n.children.size()) != ways)
      fail_node(n, "wrong number of branch contexts");
    for (int j = 0; j < ways; ++j) {
      int cid = n.children[static_cast<size_t>(j)];
      if (cid <= 0 || cid >= static_cast<int>(d_.contexts.size()))
        fail_node(n, "branch context out of range");
      const Context& c = d_.contexts[static_cast<size_t>(cid)];
      if (c.parent != n.context || c.split_node != n.id || c.branch != j)
        fail_node(n, "branch context does not point back to this split");
    }
    if (n.conclusion.type != ConclusionType::None)
      fail_node(n, "splits conclude nothing themselves");
  }

  void check_orth_force(const Node& n) {
    need_arity(n, 1);
    int pid = role_id(n, "pole");
    fact_input(n, 0, pid, 1);
    const Vec3& pole = vec_id(n, pid);
    const Vec3& point = role(n, "point");
    const Vec3& force = role(n, "force");
    check_zero(n, vdot(point, pole), "inner product with the pole");
    check_exact_vec(n, force, vcross(pole, point), "completion vector");
    check_triple(n, pole, point, force, "forcing triple");
    if (n.conclusion != Conclusion::fact(role_id(n, "point"), 0))
      fail_node(n, "conclusion must force value 0 at the point");
  }

  void check_scale(const Node& n) {
    need_arity(n, 1);
    const Node& in = input(n, 0);
    if (in.conclusion.type != ConclusionType::Fact ||
        in.conclusion.vecs[0] != role_id(n, "from"))
      fail_node(n, "input must be a fact about the source vector");
    const Vec3& from = role(n, "from");
    const Vec3& to = role(n, "to");
    if (!vzero(vcross(from, to))) fail_node(n, "vectors do not share a ray");
    check_nonzero_vec(n, from, "source");
    check_nonzero_vec(n, to, "image");
    if (n.conclusion != Conclusion::fact(role_id(n, "to"), in.conclusion.value))
      fail_node(n, "conclusion must transfer the fact to the image vector");
  }

  void check_plane_members(const Node& n, const Vec3& pole,
                           std::initializer_list<const Vec3*> pts) {
    ExactScalar one = d_.tower.integer(1);
    check_zero(n, vdot(pole, pole) - one, "pole norm minus one");
    for (const Vec3* p : pts) check_zero(n, vdot(*p, pole) - one, "plane membership");
  }

  void check_sum_rule(const Node& n) {
    need_arity(n, 1);
    int pid = role_id(n, "pole");
    fact_input(n, 0, pid, 1);
    const Vec3& pole = vec_id(n, pid);
    const Vec3& x = role(n, "x");
    const Vec3& y = role(n, "y");
    const Vec3& w = role(n, "w");
    const Vec3& z = role(n, "z");
    const Vec3& axis = role(n, "axis");
    const Vec3& force = role(n, "force");
    check_plane_members(n, pole, {&x, &y});
    // Plane inner product -1 is ambient orthogonality for plane members.
    check_zero(n, vdot(x, y), "ambient inner product of the pair");
    check_exact_vec(n, z, vsub(y, x), "difference vector");
    check_exact_vec(n, axis, vcross(x, y), "axis vector");
    check_exact_vec(n, force, vcross(z, pole), "completion vector");
    if (!vzero(vcross(w, w_combine_plane_scaled(pole, x, y))))
      fail_node(n, "combination point is off its defining ray");
    check_triple(n, x, y, axis, "pair triple");
    check_triple(n, w, z, axis, "combination triple");
    check_triple(n, z, pole, force, "difference triple");
    if (n.conclusion != Conclusion::sum2(role_id(n, "x"), role_id(n, "y"), role_id(n, "w")))
      fail_node(n, "conclusion must equate the pair sum with the combination value");
  }

  void check_monotone(const Node& n) {
    need_arity(n, 1);
    int pid = role_id(n, "pole");
    fact_input(n, 0, pid, 1);
    const Vec3& pole = vec_id(n, pid);
    const Vec3& point = role(n, "point");
    const Vec3& disp = role(n, "disp");
    const Vec3& target = role(n, "target");
    const Vec3& wpoint = role(n, "wpoint");
    const Vec3& axis = role(n, "axis");
    const Vec3& force = role(n, "force");
    check_plane_members(n, pole, {&point});
    check_zero(n, vdot(disp, pole), "displacement against the pole");
    check_zero(n, vdot(disp, point), "displacement against the point");
    ExactScalar bd = vdot(disp, disp);
    check_positive(n, bd, "displacement norm");
    check_exact_vec(n, target, vadd(point, disp), "target point");
    const ExactScalar by = vdot(point, point) - d_.tower.integer(1);
    check_exact_vec(n, wpoint,
                    vsub(vscale(bd, point), vscale(d_.tower.integer(1) + by, disp)),
                    "auxiliary point");
    check_exact_vec(n, axis, vcross(wpoint, target), "axis vector");
    check_exact_vec(n, force, vcross(disp, pole), "completion vector");
    check_triple(n, wpoint, target, axis, "auxiliary triple");
    check_triple(n, point, disp, axis, "carrier triple");
    check_triple(n, disp, pole, force, "displacement triple");
    if (n.conclusion != Conclusion::leq(role_id(n, "target"), role_id(n, "point")))
      fail_node(n, "conclusion must bound the target by the point");
  }

  void check_fact_from_sum(const Node& n) const {
    need_arity(n, 3);
    const Node& sum = input(n, 0);
    if (sum.conclusion.type != ConclusionType::Sum2)
      fail_node(n, "first input must be a two-point sum");
    const std::vector<int>& v = sum.conclusion.vecs;
    const Node& fx = input(n, 1);
    const Node& fy = input(n, 2);
    if (fx.conclusion.type != ConclusionType::Fact || fx.conclusion.vecs[0] != v[0])
      fail_node(n, "second input must value the first summand");
    if (fy.conclusion.type != ConclusionType::Fact || fy.conclusion.vecs[0] != v[1])
      fail_node(n, "third input must value the second summand");
    int total = fx.conclusion.value + fy.conclusion.value;
    if (total > 1) fail_node(n, "summand values already exceed a valuation");
    if (n.conclusion != Conclusion::fact(v[2], total))
      fail_node(n, "conclusion must value the combination by the sum");
  }

  void check_fact_from_leq(const Node& n) const {
    need_arity(n, 2);
    const Node& leq = input(n, 0);
    if (leq.conclusion.type != ConclusionType::Leq)
      fail_node(n, "first input must be a bound");
    fact_input(n, 1, leq.conclusion.vecs[1], 0);
    if (n.conclusion != Conclusion::fact(leq.conclusion.vecs[0], 0))
      fail_node(n, "conclusion must force value 0 below a 0 bound");
  }

  void check_merge(const Node& n) const {
    if (n.inputs.size() < 2) fail_node(n, "missing inputs");
    const Node& sp = input(n, 0);
    if (sp.kind != NodeKind::CaseSplit && sp.kind != NodeKind::TripleSplit)
      fail_node(n, "first input must be a split node");
    if (sp.context != n.context) fail_node(n, "merge must live beside its split");
    if (n.inputs.size() != 1 + sp.children.size())
      fail_node(n, "one input required per branch");
    for (size_t j = 0; j < sp.children.size(); ++j) {
      const Node& in = input_any_context(n, 1 + j);
      if (in.context != sp.children[j])
        fail_node(n, "branch input " + std::to_string(j) + " lives in the wrong context");
      if (in.conclusion.type != ConclusionType::Fact &&
          in.conclusion.type != ConclusionType::Bottom)
        fail_node(n, "only facts and contradictions merge across branches");
      if (!(in.conclusion == n.conclusion))
        fail_node(n, "branch conclusions must all equal the merged conclusion");
    }
  }

  void check_contradiction(const Node& n) const {
    need_arity(n, 4);
    const Node& sum = input(n, 0);
    if (sum.conclusion.type != ConclusionType::Sum2)
      fail_node(n, "first input must be a two-point sum");
    const std::vector<int>& v = sum.conclusion.vecs;
    fact_input(n, 1, v[0], 0);
    fact_input(n, 2, v[1], 0);
    fact_input(n, 3, v[2], 1);
    if (n.conclusion != Conclusion::bottom())
      fail_node(n, "conclusion must be the contradiction marker");
  }

  void check_goal_and_seeds() const {
    if (require_goal_) {
      if (d_.goal < 0 || d_.goal >= static_cast<int>(d_.nodes.size()))
        fail("derivation goal is missing");
      const Node& g = d_.nodes[static_cast<size_t>(d_.goal)];
      if (g.conclusion.type != ConclusionType::Bottom)
        fail("goal node does not conclude a contradiction");
      if (g.context != 0) fail("goal must hold in the root context");
    }
    std::vector<int> assumptions;
    for (const Node& n : d_.nodes) {
      if (n.kind == NodeKind::Assumption) assumptions.push_back(n.id);
    }
    std::vector<int> seeds = d_.seeds;
    std::sort(seeds.begin(), seeds.end());
    if (seeds != assumptions) fail("seed list does not match the assumption nodes");
  }
};

}  // namespace

VerifyStats verify_derivation(const Derivation& d, bool require_goal) {
  return Checker(d, require_goal).run();
}

namespace {

// Pole vector id behind a value-1 fact node.
int pole_of(DerivationBuilder& b, int pole_fact) {
  const Conclusion& c = b.node(pole_fact).conclusion;
  if (c.type != ConclusionType::Fact || c.value != 1)
    throw Error(ErrorKind::Validate, "pole fact node must assert value 1");
  return c.vecs[0];
}

}  // namespace

int emit_assumption(DerivationBuilder& b, const Vec3& point) {
  int pid = b.intern(point);
  int id = b.add_node(NodeKind::Assumption, 0, {}, {{"point", pid}},
                      Conclusion::fact(pid, 1));
  b.add_seed(id);
  return id;
}

int emit_orth_force(DerivationBuilder& b, int context, int pole_fact, const Vec3& point) {
  int pid = pole_of(b, pole_fact);
  const Vec3 pole = b.vector(pid);
  int point_id = b.intern(point);
  int force_id = b.intern(vcross(pole, point));
  return b.add_node(NodeKind::OrthForce, context, {pole_fact},
                    {{"pole", pid}, {"point", point_id}, {"force", force_id}},
                    Conclusion::fact(point_id, 0));
}

int emit_scale(DerivationBuilder& b, int context, int fact, const Vec3& to) {
  const Conclusion& c = b.node(fact).conclusion;
  if (c.type != ConclusionType::Fact)
    throw Error(ErrorKind::Validate, "scale source must be a fact node");
  int to_id = b.intern(to);
  return b.add_node(NodeKind::Scale, context, {fact},
                    {{"from", c.vecs[0]}, {"to", to_id}},
                    Conclusion::fact(to_id, c.value));
}

int emit_sum_rule(DerivationBuilder& b, int context, int pole_fact, const Vec3& x,
                  const Vec3& y, const Vec3& w) {
  int pid = pole_of(b, pole_fact);
  const Vec3 pole = b.vector(pid);
  Vec3 z = vsub(y, x);
  std::map<std::string, int> roles{
      {"pole", pid},           {"x", b.intern(x)},
      {"y", b.intern(y)},      {"w", b.intern(w)},
      {"z", b.intern(z)},      {"axis", b.intern(vcross(x, y))},
      {"force", b.intern(vcross(z, pole))}};
  Conclusion conc = Conclusion::sum2(roles.at("x"), roles.at("y"), roles.at("w"));
  return b.add_node(NodeKind::SumRule, context, {pole_fact}, std::move(roles), conc);
}

std::pair<int, int> emit_monotone(DerivationBuilder& b, int context, int pole_fact,
                                  const Vec3& point, const Vec3& disp) {
  int pid = pole_of(b, pole_fact);
  const Vec3 pole = b.vector(pid);
  ExactScalar one = b.peek().tower.integer(1);
  Vec3 target = vadd(point, disp);
  ExactScalar bd = vdot(disp, disp);
  ExactScalar by = vdot(point, point) - one;
  Vec3 wpoint = vsub(vscale(bd, point), vscale(one + by, disp));
  std::map<std::string, int> roles{
      {"pole", pid},
      {"point", b.intern(point)},
      {"disp", b.intern(disp)},
      {"target", b.intern(target)},
      {"wpoint", b.intern(wpoint)},
      {"axis", b.intern(vcross(wpoint, target))},
      {"force", b.intern(vcross(disp, pole))}};
  int target_id = roles.at("target");
  Conclusion conc = Conclusion::leq(target_id, roles.at("point"));
  int id = b.add_node(NodeKind::Monotone, context, {pole_fact}, std::move(roles), conc);
  return {id, target_id};
}

int emit_triple_sum(DerivationBuilder& b, int context, const Vec3& a, const Vec3& bb,
                    const Vec3& c) {
  std::map<std::string, int> roles{
      {"a", b.intern(a)}, {"b", b.intern(bb)}, {"c", b.intern(c)}};
  Conclusion conc = Conclusion::sum3(roles.at("a"), roles.at("b"), roles.at("c"));
  return b.add_node(NodeKind::TripleSum, context, {}, std::move(roles), conc);
}

CaseSplitResult emit_case_split(DerivationBuilder& b, int context, int sum_node,
                                int w_fact) {
  const Conclusion& sum = b.node(sum_node).conclusion;
  if (sum.type != ConclusionType::Sum2)
    throw Error(ErrorKind::Validate, "case split needs a two-point sum");
  CaseSplitResult out;
  int split_id = b.next_node_id();
  out.contexts = {b.add_context(context, split_id, 0), b.add_context(context, split_id, 1)};
  out.node = b.add_node(NodeKind::CaseSplit, context, {sum_node, w_fact}, {},
                        Conclusion::none(), {out.contexts[0], out.contexts[1]});
  for (int j = 0; j < 2; ++j) {
    out.x_facts[static_cast<size_t>(j)] =
        b.add_node(NodeKind::BranchFact, out.contexts[static_cast<size_t>(j)], {out.node},
                   {}, Conclusion::fact(sum.vecs[0], j == 0 ? 1 : 0));
    out.y_facts[static_cast<size_t>(j)] =
        b.add_node(NodeKind::BranchFact, out.contexts[static_cast<size_t>(j)], {out.node},
                   {}, Conclusion::fact(sum.vecs[1], j == 0 ? 0 : 1));
  }
  return out;
}

TripleSplitResult emit_triple_split(DerivationBuilder& b, int context, int sum_node) {
  const Conclusion& sum = b.node(sum_node).conclusion;
  if (sum.type != ConclusionType::Sum3)
    throw Error(ErrorKind::Validate, "triple split needs a basis triple sum");
  TripleSplitResult out;
  int split_id = b.next_node_id();
  for (int j = 0; j < 3; ++j)
    out.contexts[static_cast<size_t>(j)] = b.add_context(context, split_id, j);
  out.node = b.add_node(NodeKind::TripleSplit, context, {sum_node}, {}, Conclusion::none(),
                        {out.contexts[0], out.contexts[1], out.contexts[2]});
  for (int j = 0; j < 3; ++j) {
    for (int m = 0; m < 3; ++m) {
      out.facts[static_cast<size_t>(j)][static_cast<size_t>(m)] =
          b.add_node(NodeKind::BranchFact, out.contexts[static_cast<size_t>(j)], {out.node},
                     {}, Conclusion::fact(sum.vecs[static_cast<size_t>(m)], m == j ? 1 : 0));
    }
  }
  return out;
}

}  // namespace bks
