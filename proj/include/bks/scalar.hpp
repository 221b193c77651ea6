#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bks/field.hpp"
#include "bks/interval.hpp"

namespace bks {

// Numeric certification policy: starting precision and the refinement cap
// past which an undecided sign is reported as a precision error.
struct PrecisionConfig {
  mpfr_prec_t bits = 256;
  mpfr_prec_t max_bits = 1 << 16;
};

// Symbols live in a tower of extensions over the multi-quadratic field:
//  - a chain variable pair (c<i>, s<i>) carries the algebraic identity of
//    cos(theta/n) and sin(theta/n) for an angle theta with cos(theta) = C,
//    sin(theta) = S: the relations are c^2 + s^2 = 1, T_n(c) = C and
//    s * U_{n-1}(c) = S (Chebyshev polynomials of the first/second kind);
//  - a root variable m<i> carries m^2 = r for a previously constructible
//    radicand r > 0.
// Definitions may only reference earlier variables, which makes the rewrite
// system (m^2 -> r, s^2 -> 1 - c^2, c^n -> cap from T_n(c) = C) confluent
// and terminating, so reduced forms are canonical.
enum class VarKind : std::uint8_t { ChainCos = 0, ChainSin = 1, Root = 2 };

struct VarRef {
  VarKind kind;
  int id;
  auto operator<=>(const VarRef&) const = default;
};

// Product of variable powers in reduced-exponent form. Factors are kept
// sorted by (kind, id) and carry strictly positive exponents.
struct Monomial {
  std::vector<std::pair<VarRef, int>> factors;

  bool empty() const { return factors.empty(); }
  int exponent(VarRef v) const;
  Monomial with_exponent(VarRef v, int e) const;
  Monomial times(const Monomial& o) const;
  auto operator<=>(const Monomial&) const = default;
};

struct TowerData;

class ExactScalar {
 public:
  ExactScalar() = default;
  explicit ExactScalar(const FieldElem& v, const TowerData* tower = nullptr);
  static ExactScalar variable(VarRef v, const TowerData* tower);
  static ExactScalar monomial(VarRef v, int exp, const FieldElem& coeff, const TowerData* tower);

  ExactScalar operator+(const ExactScalar& o) const;
  ExactScalar operator-(const ExactScalar& o) const;
  ExactScalar operator*(const ExactScalar& o) const;
  ExactScalar operator-() const;
  ExactScalar pow(unsigned long e) const;

  // Structural test: true when the canonical form has no terms. This is
  // complete for elements free of chain sines; is_zero() is the full test.
  bool is_zero_form() const { return terms_.empty(); }
  // Exact zero test in the quotient ring (uses the chain relations).
  bool is_zero() const;
  bool equals(const ExactScalar& o) const { return (*this - o).is_zero(); }

  std::optional<FieldElem> as_field() const;
  bool has_variables() const;
  // Integer constant attached to the same tower as this element.
  ExactScalar tower_constant(long v) const { return ExactScalar(FieldElem(v), tower_); }

  Interval eval(mpfr_prec_t prec) const;
  // -1 / 0 / +1, certified; throws ErrorKind::Precision when the interval
  // refinement cap is reached without excluding zero.
  int sign(const PrecisionConfig& cfg) const;

  // Canonical textual form in the certificate scalar grammar.
  std::string str() const;

  const TowerData* tower() const { return tower_; }
  const std::map<Monomial, FieldElem>& terms() const { return terms_; }

  // Highest-level variable present, by tower registration order.
  std::optional<VarRef> top_variable() const;
  // Terms whose exponent of v equals e, with v stripped out.
  ExactScalar coordinate(VarRef v, int e) const;

 private:
  friend class ScalarTower;
  const TowerData* tower_ = nullptr;
  std::map<Monomial, FieldElem> terms_;

  static ExactScalar from_terms(std::map<Monomial, FieldElem> t, const TowerData* tower);
};

struct ChainVarDef {
  int n = 0;
  ExactScalar cos_theta;  // C, lower level
  ExactScalar sin_theta;  // S, lower level, certified > 0
  ExactScalar cn_cap;     // canonical form of c^n
  ExactScalar s2_cap;     // canonical form of 1 - c^2
  ExactScalar u_at_c;     // U_{n-1}(c)
};

struct RootVarDef {
  ExactScalar radicand;  // lower level, certified > 0
};

struct TowerData {
  std::vector<ChainVarDef> chains;
  std::vector<RootVarDef> roots;
  std::vector<VarRef> order;       // registration sequence
  std::map<VarRef, int> level_of;  // both pair members share a level
  mutable std::map<std::pair<long, VarRef>, Interval> interval_cache;

  int level(VarRef v) const;
  // Strength orders variables for reduction: later levels dominate, and the
  // sine dominates the cosine within a pair.
  std::pair<int, int> strength(VarRef v) const;
  Interval var_interval(VarRef v, mpfr_prec_t prec) const;
};

class ScalarTower {
 public:
  ScalarTower() : data_(std::make_shared<TowerData>()) {}

  ExactScalar constant(const FieldElem& v) const { return ExactScalar(v, data_.get()); }
  ExactScalar integer(long v) const { return constant(FieldElem(v)); }

  // Registers the pair (c, s) for theta/n. Requires n >= 2, C^2 + S^2 = 1
  // exactly and S > 0 certified. Returns the chain id.
  int add_chain_var(int n, const ExactScalar& cos_theta, const ExactScalar& sin_theta,
                    const PrecisionConfig& cfg);
  // Registers m with m^2 = radicand, radicand > 0 certified. Returns id.
  int add_root_var(const ExactScalar& radicand, const PrecisionConfig& cfg);

  ExactScalar chain_cos(int id) const;
  ExactScalar chain_sin(int id) const;
  ExactScalar root_sym(int id) const;

  int chain_count() const { return static_cast<int>(data_->chains.size()); }
  int root_count() const { return static_cast<int>(data_->roots.size()); }
  const ChainVarDef& chain_def(int id) const { return data_->chains.at(id); }
  const RootVarDef& root_def(int id) const { return data_->roots.at(id); }

  const TowerData* raw() const { return data_.get(); }

 private:
  std::shared_ptr<TowerData> data_;
};

// Integer coefficient lists (index = degree) for Chebyshev polynomials.
std::vector<mpz_class> chebyshev_t(int n);
std::vector<mpz_class> chebyshev_u(int n);

// Parses the certificate scalar grammar: integers, + - * /, sqrt(k),
// c<i>, s<i>, m<i>, parentheses. Variables must exist in the tower.
ExactScalar parse_scalar(const std::string& text, const ScalarTower& tower);

}  // namespace bks
