#include "bks/scalar.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "bks/error.hpp"

namespace bks {

// ---------------------------------------------------------------------------
// Monomial

int Monomial::exponent(VarRef v) const {
  for (const auto& [var, e] : factors) {
    if (var == v) return e;
  }
  return 0;
}

Monomial Monomial::with_exponent(VarRef v, int e) const {
  Monomial out;
  bool placed = false;
  for (const auto& [var, old] : factors) {
    if (var == v) {
      if (e > 0) out.factors.emplace_back(var, e);
      placed = true;
    } else {
      out.factors.emplace_back(var, old);
    }
  }
  if (!placed && e > 0) {
    out.factors.emplace_back(v, e);
    std::sort(out.factors.begin(), out.factors.end());
  }
  return out;
}

Monomial Monomial::times(const Monomial& o) const {
  Monomial out;
  auto a = factors.begin();
  auto b = o.factors.begin();
  while (a != factors.end() || b != o.factors.end()) {
    if (b == o.factors.end() || (a != factors.end() && a->first < b->first)) {
      out.factors.push_back(*a++);
    } else if (a == factors.end() || b->first < a->first) {
      out.factors.push_back(*b++);
    } else {
      out.factors.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// TowerData

int TowerData::level(VarRef v) const {
  auto it = level_of.find(v);
  if (it == level_of.end()) {
    throw Error(ErrorKind::Arithmetic, "unknown tower variable");
  }
  return it->second;
}

std::pair<int, int> TowerData::strength(VarRef v) const {
  return {level(v), v.kind == VarKind::ChainSin ? 1 : 0};
}

Interval TowerData::var_interval(VarRef v, mpfr_prec_t prec) const {
  auto key = std::make_pair(static_cast<long>(prec), v);
  auto it = interval_cache.find(key);
  if (it != interval_cache.end()) return it->second;
  Interval out(prec);
  switch (v.kind) {
    case VarKind::ChainCos: {
      const ChainVarDef& def = chains.at(v.id);
      Interval c_theta = def.cos_theta.eval(prec);
      out = c_theta.acos_clamped().div_ui(static_cast<unsigned long>(def.n)).cos_on_0_pi();
      break;
    }
    case VarKind::ChainSin: {
      Interval c = var_interval(VarRef{VarKind::ChainCos, v.id}, prec);
      Interval one = Interval::from_long(1, prec);
      out = (one - c * c).sqrt();
      break;
    }
    case VarKind::Root: {
      out = roots.at(v.id).radicand.eval(prec).sqrt();
      break;
    }
  }
  interval_cache.emplace(key, out);
  return out;
}

// ---------------------------------------------------------------------------
// Normalization: rewrite m^2 -> radicand, s^2 -> 1 - c^2, c^n -> cap.
// Definitions only reference strictly earlier variables, so the rules form a
// confluent, terminating system and the reduced form is canonical.

namespace {

void accumulate(std::map<Monomial, FieldElem>& dst, const Monomial& m, const FieldElem& c) {
  if (c.is_zero()) return;
  auto it = dst.find(m);
  if (it == dst.end()) {
    dst.emplace(m, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) dst.erase(it);
  }
}

std::map<Monomial, FieldElem> normalize(std::vector<std::pair<Monomial, FieldElem>> queue,
                                        const TowerData* tower) {
  std::map<Monomial, FieldElem> out;
  while (!queue.empty()) {
    auto [mono, coeff] = std::move(queue.back());
    queue.pop_back();
    if (coeff.is_zero()) continue;

    const std::pair<VarRef, int>* violating = nullptr;
    const ExactScalar* cap = nullptr;
    int drop = 0;
    for (const auto& f : mono.factors) {
      const auto& [var, e] = f;
      switch (var.kind) {
        case VarKind::Root:
          if (e >= 2) {
            violating = &f;
            cap = &tower->roots.at(var.id).radicand;
            drop = 2;
          }
          break;
        case VarKind::ChainSin:
          if (e >= 2) {
            violating = &f;
            cap = &tower->chains.at(var.id).s2_cap;
            drop = 2;
          }
          break;
        case VarKind::ChainCos: {
          int n = tower->chains.at(var.id).n;
          if (e >= n) {
            violating = &f;
            cap = &tower->chains.at(var.id).cn_cap;
            drop = n;
          }
          break;
        }
      }
      if (violating) break;
    }

    if (!violating) {
      accumulate(out, mono, coeff);
      continue;
    }
    Monomial rest = mono.with_exponent(violating->first, violating->second - drop);
    for (const auto& [cm, cc] : cap->terms()) {
      queue.emplace_back(rest.times(cm), coeff * cc);
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// ExactScalar

ExactScalar::ExactScalar(const FieldElem& v, const TowerData* tower) : tower_(tower) {
  if (!v.is_zero()) terms_.emplace(Monomial{}, v);
}

ExactScalar ExactScalar::variable(VarRef v, const TowerData* tower) {
  return monomial(v, 1, FieldElem(1), tower);
}

ExactScalar ExactScalar::monomial(VarRef v, int exp, const FieldElem& coeff,
                                  const TowerData* tower) {
  ExactScalar r;
  r.tower_ = tower;
  if (coeff.is_zero()) return r;
  Monomial m;
  if (exp > 0) m.factors.emplace_back(v, exp);
  r.terms_.emplace(std::move(m), coeff);
  return r;
}

ExactScalar ExactScalar::from_terms(std::map<Monomial, FieldElem> t, const TowerData* tower) {
  ExactScalar r;
  r.tower_ = tower;
  r.terms_ = std::move(t);
  return r;
}

namespace {
const TowerData* join_towers(const TowerData* a, const TowerData* b) {
  if (a && b && a != b) {
    throw Error(ErrorKind::Arithmetic, "scalar operation across distinct towers");
  }
  return a ? a : b;
}
}  // namespace

ExactScalar ExactScalar::operator+(const ExactScalar& o) const {
  const TowerData* t = join_towers(tower_, o.tower_);
  std::map<Monomial, FieldElem> out = terms_;
  for (const auto& [m, c] : o.terms_) accumulate(out, m, c);
  return from_terms(std::move(out), t);
}

ExactScalar ExactScalar::operator-(const ExactScalar& o) const { return *this + (-o); }

ExactScalar ExactScalar::operator-() const {
  std::map<Monomial, FieldElem> out;
  for (const auto& [m, c] : terms_) out.emplace(m, -c);
  return from_terms(std::move(out), tower_);
}

ExactScalar ExactScalar::operator*(const ExactScalar& o) const {
  const TowerData* t = join_towers(tower_, o.tower_);
  std::vector<std::pair<Monomial, FieldElem>> raw;
  raw.reserve(terms_.size() * o.terms_.size());
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      raw.emplace_back(ma.times(mb), ca * cb);
    }
  }
  if (!t) {
    // Pure field elements never violate caps.
    std::map<Monomial, FieldElem> out;
    for (auto& [m, c] : raw) accumulate(out, m, c);
    return from_terms(std::move(out), nullptr);
  }
  return from_terms(normalize(std::move(raw), t), t);
}

ExactScalar ExactScalar::pow(unsigned long e) const {
  ExactScalar r(FieldElem(1), tower_);
  ExactScalar base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

std::optional<FieldElem> ExactScalar::as_field() const {
  if (terms_.empty()) return FieldElem(0);
  if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
  return std::nullopt;
}

bool ExactScalar::has_variables() const {
  for (const auto& [m, c] : terms_) {
    if (!m.empty()) return true;
  }
  return false;
}

std::optional<VarRef> ExactScalar::top_variable() const {
  std::optional<VarRef> best;
  std::pair<int, int> best_strength{-1, -1};
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m.factors) {
      auto s = tower_->strength(v);
      if (!best || s > best_strength) {
        best = v;
        best_strength = s;
      }
    }
  }
  return best;
}

ExactScalar ExactScalar::coordinate(VarRef v, int e) const {
  std::map<Monomial, FieldElem> out;
  for (const auto& [m, c] : terms_) {
    if (m.exponent(v) == e) {
      accumulate(out, m.with_exponent(v, 0), c);
    }
  }
  return from_terms(std::move(out), tower_);
}

bool ExactScalar::is_zero() const {
  if (terms_.empty()) return true;
  if (!tower_) return false;
  auto top = top_variable();
  if (!top) return false;  // single pure-field term

  switch (top->kind) {
    case VarKind::Root: {
      // Free rank-2 module: a + m b = 0 iff a = 0 and b = 0.
      return coordinate(*top, 0).is_zero() && coordinate(*top, 1).is_zero();
    }
    case VarKind::ChainSin: {
      // x = a + s b vanishes in the quotient iff a U + S b does over the
      // cosine power basis: multiply by (s U + S), whose sine part is
      // exactly a U + S b, and test its coordinates.
      const ChainVarDef& def = tower_->chains.at(top->id);
      ExactScalar s_var = variable(*top, tower_);
      ExactScalar y = *this * (s_var * def.u_at_c + def.sin_theta);
      ExactScalar z = y.coordinate(*top, 1);
      VarRef c_ref{VarKind::ChainCos, top->id};
      for (int j = 0; j < def.n; ++j) {
        if (!z.coordinate(c_ref, j).is_zero()) return false;
      }
      return true;
    }
    case VarKind::ChainCos: {
      // No sine of this pair present: the cosine powers form a free basis.
      const ChainVarDef& def = tower_->chains.at(top->id);
      for (int j = 0; j < def.n; ++j) {
        if (!coordinate(*top, j).is_zero()) return false;
      }
      return true;
    }
  }
  return false;
}

Interval ExactScalar::eval(mpfr_prec_t prec) const {
  Interval acc(prec);
  for (const auto& [m, c] : terms_) {
    Interval t = c.eval(prec);
    for (const auto& [v, e] : m.factors) {
      t = t * tower_->var_interval(v, prec).pow_ui(static_cast<unsigned long>(e));
    }
    acc = acc + t;
  }
  return acc;
}

int ExactScalar::sign(const PrecisionConfig& cfg) const {
  if (is_zero()) return 0;
  for (mpfr_prec_t p = cfg.bits; p <= cfg.max_bits; p *= 2) {
    Interval iv = eval(p);
    if (iv.strictly_positive()) return 1;
    if (iv.strictly_negative()) return -1;
  }
  throw Error(ErrorKind::Precision,
              "sign of nonzero scalar not certified at max precision: " + str());
}

namespace {

std::string var_name(VarRef v) {
  const char* prefix = v.kind == VarKind::ChainCos ? "c" : v.kind == VarKind::ChainSin ? "s" : "m";
  return prefix + std::to_string(v.id);
}

}  // namespace

std::string ExactScalar::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, coeff] : terms_) {
    bool single = coeff.terms().size() <= 1;
    bool neg = false;
    std::string mag;
    if (single) {
      FieldElem a = coeff;
      if (!a.terms().empty() && a.terms().begin()->second < 0) {
        neg = true;
        a = -a;
      }
      mag = a.str();
    } else {
      mag = "(" + coeff.str() + ")";
    }
    if (first) {
      if (neg) out << "-";
      first = false;
    } else {
      out << (neg ? " - " : " + ");
    }
    bool wrote_coeff = false;
    if (m.empty() || mag != "1") {
      out << mag;
      wrote_coeff = true;
    }
    for (const auto& [v, e] : m.factors) {
      for (int i = 0; i < e; ++i) {
        if (wrote_coeff) out << "*";
        out << var_name(v);
        wrote_coeff = true;
      }
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Chebyshev coefficients

std::vector<mpz_class> chebyshev_t(int n) {
  std::vector<mpz_class> prev{1};
  if (n == 0) return prev;
  std::vector<mpz_class> cur{0, 1};
  for (int k = 2; k <= n; ++k) {
    std::vector<mpz_class> next(static_cast<size_t>(k) + 1, mpz_class(0));
    for (size_t j = 0; j < cur.size(); ++j) next[j + 1] += 2 * cur[j];
    for (size_t j = 0; j < prev.size(); ++j) next[j] -= prev[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::vector<mpz_class> chebyshev_u(int n) {
  std::vector<mpz_class> prev{1};
  if (n == 0) return prev;
  std::vector<mpz_class> cur{0, 2};
  for (int k = 2; k <= n; ++k) {
    std::vector<mpz_class> next(static_cast<size_t>(k) + 1, mpz_class(0));
    for (size_t j = 0; j < cur.size(); ++j) next[j + 1] += 2 * cur[j];
    for (size_t j = 0; j < prev.size(); ++j) next[j] -= prev[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// ---------------------------------------------------------------------------
// ScalarTower registration

namespace {

ExactScalar poly_in_var(VarRef v, const std::vector<mpz_class>& coeffs, const TowerData* tower) {
  ExactScalar acc(FieldElem(0), tower);
  for (size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == 0) continue;
    acc = acc + ExactScalar::monomial(v, static_cast<int>(j), FieldElem(mpq_class(coeffs[j])), tower);
  }
  return acc;
}

}  // namespace

int ScalarTower::add_chain_var(int n, const ExactScalar& cos_theta, const ExactScalar& sin_theta,
                               const PrecisionConfig& cfg) {
  if (n < 2) {
    throw Error(ErrorKind::Arithmetic, "chain variable requires n >= 2");
  }
  TowerData* t = data_.get();
  const TowerData* ct = join_towers(cos_theta.tower(), sin_theta.tower());
  if (ct && ct != t) throw Error(ErrorKind::Arithmetic, "chain definition from foreign tower");
  ExactScalar C(cos_theta + constant(FieldElem(0)));
  ExactScalar S(sin_theta + constant(FieldElem(0)));
  ExactScalar circle = C * C + S * S - integer(1);
  if (!circle.is_zero()) {
    throw Error(ErrorKind::Validate, "chain symbols violate the circle relation: cos=" +
                                         C.str() + " sin=" + S.str());
  }
  if (S.sign(cfg) != 1) {
    throw Error(ErrorKind::Validate, "chain sine must be positive: " + S.str());
  }

  int id = static_cast<int>(t->chains.size());
  VarRef c_ref{VarKind::ChainCos, id};
  VarRef s_ref{VarKind::ChainSin, id};
  int lvl = static_cast<int>(t->order.size());
  t->order.push_back(c_ref);
  t->level_of[c_ref] = lvl;
  t->level_of[s_ref] = lvl;

  ChainVarDef def;
  def.n = n;
  def.cos_theta = C;
  def.sin_theta = S;
  t->chains.push_back(def);

  // c^n = (C - sum_{j<n} T_j c^j) / 2^(n-1); built before anything can
  // trigger the cap (all exponents below stay < n).
  std::vector<mpz_class> tn = chebyshev_t(n);
  mpz_class lead = tn[static_cast<size_t>(n)];
  mpq_class inv_lead(1, lead);
  inv_lead.canonicalize();
  ExactScalar cap = C * constant(FieldElem(inv_lead));
  for (int j = 0; j < n; ++j) {
    if (tn[static_cast<size_t>(j)] == 0) continue;
    mpq_class q(-tn[static_cast<size_t>(j)], lead);
    q.canonicalize();
    cap = cap + ExactScalar::monomial(c_ref, j, FieldElem(q), t);
  }
  t->chains[id].cn_cap = cap;
  ExactScalar c_var = ExactScalar::variable(c_ref, t);
  t->chains[id].s2_cap = integer(1) - c_var * c_var;
  t->chains[id].u_at_c = poly_in_var(c_ref, chebyshev_u(n - 1), t);
  return id;
}

int ScalarTower::add_root_var(const ExactScalar& radicand, const PrecisionConfig& cfg) {
  TowerData* t = data_.get();
  const TowerData* rt = radicand.tower();
  if (rt && rt != t) throw Error(ErrorKind::Arithmetic, "root definition from foreign tower");
  ExactScalar r = radicand + constant(FieldElem(0));
  if (r.sign(cfg) != 1) {
    throw Error(ErrorKind::Validate, "root radicand must be positive: " + r.str());
  }
  int id = static_cast<int>(t->roots.size());
  VarRef m_ref{VarKind::Root, id};
  int lvl = static_cast<int>(t->order.size());
  t->order.push_back(m_ref);
  t->level_of[m_ref] = lvl;
  t->roots.push_back(RootVarDef{r});
  return id;
}

ExactScalar ScalarTower::chain_cos(int id) const {
  if (id < 0 || id >= chain_count()) throw Error(ErrorKind::Arithmetic, "unknown chain id");
  return ExactScalar::variable(VarRef{VarKind::ChainCos, id}, data_.get());
}

ExactScalar ScalarTower::chain_sin(int id) const {
  if (id < 0 || id >= chain_count()) throw Error(ErrorKind::Arithmetic, "unknown chain id");
  return ExactScalar::variable(VarRef{VarKind::ChainSin, id}, data_.get());
}

ExactScalar ScalarTower::root_sym(int id) const {
  if (id < 0 || id >= root_count()) throw Error(ErrorKind::Arithmetic, "unknown root id");
  return ExactScalar::variable(VarRef{VarKind::Root, id}, data_.get());
}

}  // namespace bks
