#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bks/geometry.hpp"

namespace bks {

// A derivation is a DAG of rule applications over exact vectors, organized
// in a tree of case contexts. Every node carries enough data for a verifier
// to recheck it in isolation: the exact vectors it mentions, the nodes whose
// conclusions it consumes, and its own conclusion. Soundness rests on three
// mechanisms only: orthogonal triples of nonzero vectors sum to 1 under a
// valuation, values are 0/1, and rays keep their value under rescaling.
enum class NodeKind : std::uint8_t {
  Assumption,     // seed fact v(point) = 1
  BranchFact,     // fact injected by an enclosing split branch
  TripleSum,      // {a, b, c} pairwise orthogonal: v(a)+v(b)+v(c) = 1
  TripleSplit,    // three-way case analysis over a TripleSum
  CaseSplit,      // two-way case analysis over a Sum2 with v(w) = 1
  OrthForce,      // v(pole) = 1 and point _|_ pole: v(point) = 0
  Scale,          // same ray, same value
  SumRule,        // plane pair with inner product -1: v(x)+v(y) = v(w)
  Monotone,       // orthogonal plane displacement: v(point+disp) <= v(point)
  FactFromSum,    // Sum2 plus both argument facts gives the w fact
  FactFromLeq,    // Leq plus v(rhs) = 0 gives v(lhs) = 0
  Merge,          // identical conclusion in every branch lifts to the parent
  Contradiction,  // Sum2 with facts 0, 0, 1 is absurd
};

const char* node_kind_name(NodeKind k);
std::optional<NodeKind> node_kind_from_name(const std::string& s);

enum class ConclusionType : std::uint8_t { None, Fact, Sum2, Sum3, Leq, Bottom };

struct Conclusion {
  ConclusionType type = ConclusionType::None;
  std::vector<int> vecs;  // Fact: {p}; Sum2: {x, y, w}; Sum3: {a, b, c}; Leq: {lhs, rhs}
  int value = -1;         // Fact only

  static Conclusion none() { return {}; }
  static Conclusion fact(int vec, int val) { return {ConclusionType::Fact, {vec}, val}; }
  static Conclusion sum2(int x, int y, int w) { return {ConclusionType::Sum2, {x, y, w}, -1}; }
  static Conclusion sum3(int a, int b, int c) { return {ConclusionType::Sum3, {a, b, c}, -1}; }
  static Conclusion leq(int lhs, int rhs) { return {ConclusionType::Leq, {lhs, rhs}, -1}; }
  static Conclusion bottom() { return {ConclusionType::Bottom, {}, -1}; }
  bool operator==(const Conclusion&) const = default;
};

struct Node {
  int id = -1;
  NodeKind kind{};
  int context = 0;
  std::vector<int> inputs;          // node ids, each strictly smaller than id
  std::map<std::string, int> vecs;  // role name -> vector id
  std::vector<int> children;        // CaseSplit / TripleSplit: child context ids
  Conclusion conclusion;
};

struct Context {
  int id = 0;
  int parent = -1;      // -1 for the root
  int split_node = -1;  // node that opened this context
  int branch = -1;      // branch index within that split
};

struct Derivation {
  ScalarTower tower;
  PrecisionConfig precision;
  std::vector<Vec3> vectors;
  std::vector<Context> contexts;  // contexts[0] is the root
  std::vector<Node> nodes;
  std::vector<int> seeds;  // Assumption node ids (empty for unconditional claims)
  int goal = -1;           // node whose conclusion must be Bottom at the root
};

// Orthogonal triples a node contributes to the combinatorial instance, as
// vector-id triples. Splits, merges and bookkeeping nodes contribute none.
std::vector<std::array<int, 3>> node_triples(const Node& node);

// Construction helper: interns vectors by exact representation and assigns
// node and context ids in topological order.
class DerivationBuilder {
 public:
  DerivationBuilder(const ScalarTower& tower, const PrecisionConfig& cfg);

  int intern(const Vec3& v);
  const Vec3& vector(int id) const { return der_.vectors.at(id); }

  int add_context(int parent, int split_node, int branch);
  // Returns the new node's id.
  int add_node(NodeKind kind, int context, std::vector<int> inputs,
               std::map<std::string, int> vecs, Conclusion conclusion,
               std::vector<int> children = {});

  const Node& node(int id) const { return der_.nodes.at(id); }
  int next_node_id() const { return static_cast<int>(der_.nodes.size()); }
  void set_goal(int node_id) { der_.goal = node_id; }
  void add_seed(int node_id) { der_.seeds.push_back(node_id); }

  Derivation take();
  const Derivation& peek() const { return der_; }

 private:
  Derivation der_;
  std::map<std::array<std::string, 3>, int> intern_;
};

// Emission helpers: compute the derived vectors a node kind carries and
// append a fully populated node. The pole fact arguments are node ids whose
// conclusion asserts value 1 for the pole vector.
int emit_assumption(DerivationBuilder& b, const Vec3& point);
int emit_orth_force(DerivationBuilder& b, int context, int pole_fact, const Vec3& point);
int emit_scale(DerivationBuilder& b, int context, int fact, const Vec3& to);
int emit_sum_rule(DerivationBuilder& b, int context, int pole_fact, const Vec3& x,
                  const Vec3& y, const Vec3& w);
// Returns {node id, target vector id}.
std::pair<int, int> emit_monotone(DerivationBuilder& b, int context, int pole_fact,
                                  const Vec3& point, const Vec3& disp);
int emit_triple_sum(DerivationBuilder& b, int context, const Vec3& a, const Vec3& bb,
                    const Vec3& c);

struct CaseSplitResult {
  int node = -1;
  std::array<int, 2> contexts{};
  std::array<int, 2> x_facts{};  // branch facts valuing the first summand
  std::array<int, 2> y_facts{};  // branch facts valuing the second summand
};
CaseSplitResult emit_case_split(DerivationBuilder& b, int context, int sum_node,
                                int w_fact);

struct TripleSplitResult {
  int node = -1;
  std::array<int, 3> contexts{};
  std::array<std::array<int, 3>, 3> facts{};  // facts[branch][member]
};
TripleSplitResult emit_triple_split(DerivationBuilder& b, int context, int sum_node);

// Full structural and mathematical recheck of a derivation. Throws
// ErrorKind::Validate with a node-specific message on the first failure.
// `require_goal` additionally demands a contradiction at the root context
// (certificates always carry one; partial derivations under construction
// may skip it).
struct VerifyStats {
  int nodes = 0;
  int contexts = 0;
  int triples = 0;
  int sign_checks = 0;
};
VerifyStats verify_derivation(const Derivation& d, bool require_goal = true);

}  // namespace bks
