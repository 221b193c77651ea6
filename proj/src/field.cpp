#include "bks/field.hpp"

#include <sstream>

#include "bks/error.hpp"

namespace bks {

namespace {

// Trial-division bound for extracting square parts. Radicands produced by
// the pipeline are tiny; anything beyond this bound is refused honestly
// rather than silently mis-normalized.
const unsigned long kFactorBound = 1000000;

}  // namespace

FieldElem::FieldElem(long v) {
  if (v != 0) terms_[1] = mpq_class(v);
}

FieldElem::FieldElem(const mpq_class& v) {
  mpq_class c = v;
  c.canonicalize();
  if (c != 0) terms_[1] = c;
}

void FieldElem::split_square(const mpz_class& n, mpz_class& square_root,
                             mpz_class& squarefree) {
  // n >= 1. Writes n = square_root^2 * squarefree with squarefree exact.
  square_root = 1;
  squarefree = 1;
  mpz_class rest = n;
  for (unsigned long p = 2; p <= kFactorBound && rest > 1; p == 2 ? p = 3 : p += 2) {
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
        rest /= static_cast<unsigned long>(p);
        ++e;
      }
      for (unsigned i = 0; i + 1 < e; i += 2) square_root *= static_cast<unsigned long>(p);
      if (e % 2 == 1) squarefree *= static_cast<unsigned long>(p);
    }
    if (mpz_class(p) * p > rest) break;
  }
  if (rest > 1) {
    // Remaining cofactor has no prime factor below the bound; it may still
    // be a perfect square.
    if (mpz_perfect_square_p(rest.get_mpz_t())) {
      mpz_class r;
      mpz_sqrt(r.get_mpz_t(), rest.get_mpz_t());
      square_root *= r;
    } else if (rest <= mpz_class(kFactorBound) * kFactorBound) {
      // Fully factored by trial division up to sqrt(rest): rest is prime.
      squarefree *= rest;
    } else {
      throw Error(ErrorKind::Arithmetic,
                  "radicand too large to normalize: " + rest.get_str());
    }
  }
}

FieldElem FieldElem::sqrt_int(const mpz_class& d) {
  if (d < 0) throw Error(ErrorKind::Arithmetic, "sqrt of negative integer " + d.get_str());
  FieldElem r;
  if (d == 0) return r;
  mpz_class sq, sf;
  split_square(d, sq, sf);
  r.terms_[sf] = mpq_class(sq);
  return r;
}

FieldElem FieldElem::sqrt_rational(const mpq_class& v) {
  mpq_class r = v;
  r.canonicalize();
  if (r < 0) throw Error(ErrorKind::Arithmetic, "sqrt of negative rational " + r.get_str());
  if (r == 0) return FieldElem();
  // sqrt(p/q) = sqrt(p*q) / q.
  FieldElem s = sqrt_int(r.get_num() * r.get_den());
  FieldElem q;
  q.terms_[1] = mpq_class(1, r.get_den());
  return s * q;
}

bool FieldElem::is_rational() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first == 1;
}

std::optional<mpq_class> FieldElem::as_rational() const {
  if (terms_.empty()) return mpq_class(0);
  if (is_rational()) return terms_.begin()->second;
  return std::nullopt;
}

std::optional<FieldElem> FieldElem::sqrt() const {
  auto r = as_rational();
  if (!r) return std::nullopt;
  if (*r < 0) return std::nullopt;
  return sqrt_rational(*r);
}

void FieldElem::add_term(const mpz_class& d, const mpq_class& coeff) {
  if (coeff == 0) return;
  auto it = terms_.find(d);
  if (it == terms_.end()) {
    terms_.emplace(d, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  FieldElem r = *this;
  for (const auto& [d, c] : o.terms_) r.add_term(d, c);
  return r;
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  FieldElem r = *this;
  for (const auto& [d, c] : o.terms_) r.add_term(d, -c);
  return r;
}

FieldElem FieldElem::operator-() const {
  FieldElem r;
  for (const auto& [d, c] : terms_) r.terms_.emplace(d, -c);
  return r;
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  FieldElem r;
  for (const auto& [da, ca] : terms_) {
    for (const auto& [db, cb] : o.terms_) {
      // sqrt(da)*sqrt(db) = g*sqrt((da/g)*(db/g)) with g = gcd(da, db);
      // the product of coprime squarefree numbers is squarefree.
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), da.get_mpz_t(), db.get_mpz_t());
      mpz_class d = (da / g) * (db / g);
      r.add_term(d, ca * cb * g);
    }
  }
  return r;
}

FieldElem FieldElem::inverse() const {
  if (terms_.empty()) throw Error(ErrorKind::Arithmetic, "inverse of zero field element");
  if (is_rational()) {
    FieldElem r;
    r.terms_[1] = 1 / terms_.begin()->second;
    return r;
  }
  // Pick a prime p dividing some radicand and split x = u + v where v holds
  // the terms whose radicand p divides. The p-conjugate u - v is the image
  // of x under the field automorphism sqrt(p) -> -sqrt(p), so
  // x^-1 = (u - v) / (x * (u - v)) with the denominator p-free; recurse.
  mpz_class pick = 0;
  for (const auto& [d, c] : terms_) {
    if (d > 1) {
      pick = d;
      break;
    }
  }
  mpz_class p = 2;
  while (!mpz_divisible_p(pick.get_mpz_t(), p.get_mpz_t())) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  }
  FieldElem conj;
  for (const auto& [d, c] : terms_) {
    conj.terms_.emplace(d, mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t()) ? -c : c);
  }
  FieldElem denom = *this * conj;
  return conj * denom.inverse();
}

Interval FieldElem::eval(mpfr_prec_t prec) const {
  Interval acc(prec);
  for (const auto& [d, c] : terms_) {
    Interval t = Interval::from_rational(c, prec);
    if (d > 1) {
      if (!d.fits_ulong_p()) {
        throw Error(ErrorKind::Arithmetic, "radicand out of range: " + d.get_str());
      }
      t = t * Interval::sqrt_ui(d.get_ui(), prec);
    }
    acc = acc + t;
  }
  return acc;
}

int FieldElem::sign(mpfr_prec_t start_prec, mpfr_prec_t max_prec) const {
  if (is_zero()) return 0;
  for (mpfr_prec_t p = start_prec; p <= max_prec; p *= 2) {
    Interval iv = eval(p);
    if (iv.strictly_positive()) return 1;
    if (iv.strictly_negative()) return -1;
  }
  throw Error(ErrorKind::Precision,
              "sign of nonzero field element not certified at max precision: " + str());
}

std::string FieldElem::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [d, c] : terms_) {
    mpq_class a = c;
    bool neg = a < 0;
    if (neg) a = -a;
    if (first) {
      if (neg) out << "-";
      first = false;
    } else {
      out << (neg ? " - " : " + ");
    }
    bool unit_coeff = (a == 1) && d > 1;
    if (!unit_coeff) out << a.get_str();
    if (d > 1) {
      if (!unit_coeff) out << "*";
      out << "sqrt(" << d.get_str() << ")";
    }
  }
  return out.str();
}

std::vector<mpz_class> FieldElem::radicands() const {
  std::vector<mpz_class> r;
  for (const auto& [d, c] : terms_) {
    if (d > 1) r.push_back(d);
  }
  return r;
}

}  // namespace bks
