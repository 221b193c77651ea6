#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bks/interval.hpp"

namespace bks {

// Element of the real multi-quadratic field Q(sqrt(d) : d squarefree >= 1).
// Stored as a finite map from the squarefree radicand d to its rational
// coefficient; d = 1 carries the rational part. The representation is
// canonical (no zero coefficients), so equality is structural and the zero
// test is exact.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(long v);
  FieldElem(const mpq_class& v);

  // coefficient * sqrt(d) for a nonnegative integer d (not necessarily
  // squarefree; the square part is extracted exactly).
  static FieldElem sqrt_int(const mpz_class& d);
  // Exact sqrt of a nonnegative rational: sqrt(p/q) = sqrt(p*q)/q.
  static FieldElem sqrt_rational(const mpq_class& r);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  std::optional<mpq_class> as_rational() const;
  // Exact square root when this element is a nonnegative rational;
  // nullopt for elements with irrational parts.
  std::optional<FieldElem> sqrt() const;

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem inverse() const;
  FieldElem operator/(const FieldElem& o) const { return *this * o.inverse(); }

  bool operator==(const FieldElem& o) const { return terms_ == o.terms_; }
  bool operator!=(const FieldElem& o) const { return !(*this == o); }
  // Deterministic structural order (for use as map keys).
  bool operator<(const FieldElem& o) const { return terms_ < o.terms_; }

  Interval eval(mpfr_prec_t prec) const;
  // -1, 0, +1 with certainty; exact zero test plus interval refinement.
  int sign(mpfr_prec_t start_prec = 128, mpfr_prec_t max_prec = 1 << 16) const;

  // Canonical textual form, e.g. "3/2*sqrt(2) - 1". Parses back through the
  // scalar expression grammar.
  std::string str() const;

  const std::map<mpz_class, mpq_class>& terms() const { return terms_; }
  // Radicands (> 1) appearing in this element.
  std::vector<mpz_class> radicands() const;

 private:
  std::map<mpz_class, mpq_class> terms_;

  void add_term(const mpz_class& d, const mpq_class& coeff);
  static void split_square(const mpz_class& n, mpz_class& square_root,
                           mpz_class& squarefree);
};

}  // namespace bks
