#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace bks {

// Closed interval [lo, hi] with MPFR endpoints and outward rounding.
// Every operation returns an enclosure of the exact real result, so a sign
// certified by an Interval is a proof given exact inputs.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  static Interval from_long(long v, mpfr_prec_t prec);
  static Interval from_rational(const mpq_class& v, mpfr_prec_t prec);
  // Enclosure of sqrt(d) for a nonnegative integer d.
  static Interval sqrt_ui(unsigned long d, mpfr_prec_t prec);
  static Interval pi(mpfr_prec_t prec);

  mpfr_prec_t precision() const { return prec_; }

  Interval operator+(const Interval& o) const;
  Interval operator-(const Interval& o) const;
  Interval operator*(const Interval& o) const;
  Interval operator-() const;
  // Requires an interval excluding zero.
  Interval inverse() const;
  Interval operator/(const Interval& o) const { return *this * o.inverse(); }

  // Requires hi >= 0; lo is clamped to 0 when rounding noise makes it
  // slightly negative (caller asserts the exact value is nonnegative).
  Interval sqrt() const;
  // acos with the input clamped into [-1, 1]; sound when the exact input
  // lies in the domain.
  Interval acos_clamped() const;
  // cos restricted to arguments within [0, pi] where it is monotone.
  Interval cos_on_0_pi() const;
  Interval pow_ui(unsigned long n) const;
  Interval div_ui(unsigned long n) const;

  bool contains_zero() const;
  bool strictly_positive() const;
  bool strictly_negative() const;
  // True if [lo,hi] is exactly the point 0.
  bool is_point_zero() const;
  // Upper bound for the diameter hi - lo.
  double width_upper() const;
  double midpoint_double() const;

  std::string str(int digits = 12) const;

 private:
  mpfr_prec_t prec_;
  mpfr_t lo_;
  mpfr_t hi_;

  Interval make(mpfr_prec_t prec) const;
};

}  // namespace bks
