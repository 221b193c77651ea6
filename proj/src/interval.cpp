#include "bks/interval.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>

#include "bks/error.hpp"

namespace bks {

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : prec_(other.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    Interval tmp(other);
    std::swap(prec_, tmp.prec_);
    mpfr_swap(lo_, tmp.lo_);
    mpfr_swap(hi_, tmp.hi_);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  if (this != &other) {
    std::swap(prec_, other.prec_);
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
  }
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::make(mpfr_prec_t prec) const { return Interval(prec); }

Interval Interval::from_long(long v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval Interval::from_rational(const mpq_class& v, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::sqrt_ui(unsigned long d, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_sqrt_ui(r.lo_, d, MPFR_RNDD);
  mpfr_sqrt_ui(r.hi_, d, MPFR_RNDU);
  return r;
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::operator+(const Interval& o) const {
  Interval r(std::max(prec_, o.prec_));
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-(const Interval& o) const {
  Interval r(std::max(prec_, o.prec_));
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-() const {
  Interval r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::operator*(const Interval& o) const {
  Interval r(std::max(prec_, o.prec_));
  mpfr_t cand, best_lo, best_hi;
  mpfr_init2(cand, r.prec_);
  mpfr_init2(best_lo, r.prec_);
  mpfr_init2(best_hi, r.prec_);
  bool first = true;
  const mpfr_srcptr a[2] = {lo_, hi_};
  const mpfr_srcptr b[2] = {o.lo_, o.hi_};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      mpfr_mul(cand, a[i], b[j], MPFR_RNDD);
      if (first || mpfr_cmp(cand, best_lo) < 0) mpfr_set(best_lo, cand, MPFR_RNDD);
      mpfr_mul(cand, a[i], b[j], MPFR_RNDU);
      if (first || mpfr_cmp(cand, best_hi) > 0) mpfr_set(best_hi, cand, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_set(r.lo_, best_lo, MPFR_RNDD);
  mpfr_set(r.hi_, best_hi, MPFR_RNDU);
  mpfr_clear(cand);
  mpfr_clear(best_lo);
  mpfr_clear(best_hi);
  return r;
}

Interval Interval::inverse() const {
  if (contains_zero()) {
    throw Error(ErrorKind::Arithmetic, "interval inverse: enclosure contains zero " + str());
  }
  Interval r(prec_);
  mpfr_ui_div(r.lo_, 1, hi_, MPFR_RNDD);
  mpfr_ui_div(r.hi_, 1, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::sqrt() const {
  if (mpfr_sgn(hi_) < 0) {
    throw Error(ErrorKind::Arithmetic, "interval sqrt: enclosure is negative " + str());
  }
  Interval r(prec_);
  if (mpfr_sgn(lo_) < 0) {
    mpfr_set_zero(r.lo_, 1);
  } else {
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  }
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::acos_clamped() const {
  Interval r(prec_);
  mpfr_t t;
  mpfr_init2(t, prec_);
  // acos is decreasing: output lo from input hi, output hi from input lo.
  mpfr_set(t, hi_, MPFR_RNDU);
  if (mpfr_cmp_si(t, 1) > 0) mpfr_set_si(t, 1, MPFR_RNDN);
  if (mpfr_cmp_si(t, -1) < 0) mpfr_set_si(t, -1, MPFR_RNDN);
  mpfr_acos(r.lo_, t, MPFR_RNDD);
  mpfr_set(t, lo_, MPFR_RNDD);
  if (mpfr_cmp_si(t, 1) > 0) mpfr_set_si(t, 1, MPFR_RNDN);
  if (mpfr_cmp_si(t, -1) < 0) mpfr_set_si(t, -1, MPFR_RNDN);
  mpfr_acos(r.hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

Interval Interval::cos_on_0_pi() const {
  // Monotone decreasing on [0, pi]; callers only pass enclosures of angles
  // in that range. Guard with a widened domain check.
  mpfr_t pi_hi;
  mpfr_init2(pi_hi, prec_);
  mpfr_const_pi(pi_hi, MPFR_RNDU);
  bool in_domain = mpfr_sgn(lo_) >= -1 && mpfr_cmp(hi_, pi_hi) <= 0;
  mpfr_clear(pi_hi);
  Interval r(prec_);
  if (!in_domain && mpfr_sgn(lo_) < 0) {
    // Outward fallback: cos range is always within [-1, 1].
    mpfr_set_si(r.lo_, -1, MPFR_RNDD);
    mpfr_set_si(r.hi_, 1, MPFR_RNDU);
    return r;
  }
  mpfr_cos(r.lo_, hi_, MPFR_RNDD);
  mpfr_cos(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::pow_ui(unsigned long n) const {
  Interval r = from_long(1, prec_);
  Interval base = *this;
  unsigned long e = n;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

Interval Interval::div_ui(unsigned long n) const {
  if (n == 0) throw Error(ErrorKind::Arithmetic, "interval division by zero");
  Interval r(prec_);
  mpfr_div_ui(r.lo_, lo_, n, MPFR_RNDD);
  mpfr_div_ui(r.hi_, hi_, n, MPFR_RNDU);
  return r;
}

bool Interval::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool Interval::strictly_positive() const { return mpfr_sgn(lo_) > 0; }

bool Interval::strictly_negative() const { return mpfr_sgn(hi_) < 0; }

bool Interval::is_point_zero() const {
  return mpfr_zero_p(lo_) && mpfr_zero_p(hi_);
}

double Interval::width_upper() const {
  mpfr_t w;
  mpfr_init2(w, prec_);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

double Interval::midpoint_double() const {
  mpfr_t m;
  mpfr_init2(m, prec_);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_ui(m, m, 2, MPFR_RNDN);
  double d = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return d;
}

std::string Interval::str(int digits) const {
  char* lo_s = nullptr;
  char* hi_s = nullptr;
  mpfr_asprintf(&lo_s, "%.*Rg", digits, lo_);
  mpfr_asprintf(&hi_s, "%.*Rg", digits, hi_);
  std::string out = std::string("[") + lo_s + ", " + hi_s + "]";
  mpfr_free_str(lo_s);
  mpfr_free_str(hi_s);
  return out;
}

}  // namespace bks
