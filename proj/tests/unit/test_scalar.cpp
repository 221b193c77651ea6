#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bks/error.hpp"
#include "bks/field.hpp"
#include "bks/scalar.hpp"

using bks::ExactScalar;
using bks::FieldElem;
using bks::PrecisionConfig;
using bks::ScalarTower;

namespace {

FieldElem sq(long d) { return FieldElem::sqrt_int(mpz_class(d)); }

// Default-instance obtuse branch: cos(theta) = -sqrt(6)/3, sin(theta) = sqrt(3)/3,
// minimal chain order n = 6.
struct ObtuseFixture {
  ScalarTower tower;
  PrecisionConfig cfg;
  int chain;
  ExactScalar C, S, c, s;

  ObtuseFixture() {
    C = tower.constant(sq(6) * FieldElem(mpq_class(-1, 3)));
    S = tower.constant(sq(3) * FieldElem(mpq_class(1, 3)));
    chain = tower.add_chain_var(6, C, S, cfg);
    c = tower.chain_cos(chain);
    s = tower.chain_sin(chain);
  }
};

ExactScalar poly_at(const ExactScalar& x, const std::vector<mpz_class>& coeffs,
                    const ScalarTower& tower) {
  ExactScalar acc = tower.integer(0);
  for (size_t j = coeffs.size(); j-- > 0;) {
    acc = acc * x + tower.constant(FieldElem(mpq_class(coeffs[j])));
  }
  return acc;
}

}  // namespace

TEST_CASE("chebyshev coefficient tables") {
  auto t6 = bks::chebyshev_t(6);
  std::vector<long> t6_expect{-1, 0, 18, 0, -48, 0, 32};
  REQUIRE(t6.size() == 7);
  for (size_t i = 0; i < 7; ++i) CHECK(t6[i] == t6_expect[i]);
  auto u5 = bks::chebyshev_u(5);
  std::vector<long> u5_expect{0, 6, 0, -32, 0, 32};
  REQUIRE(u5.size() == 6);
  for (size_t i = 0; i < 6; ++i) CHECK(u5[i] == u5_expect[i]);
  CHECK(bks::chebyshev_t(0) == std::vector<mpz_class>{1});
  CHECK(bks::chebyshev_u(0) == std::vector<mpz_class>{1});
}

TEST_CASE("chain relations hold exactly in the quotient ring") {
  ObtuseFixture f;
  // T_6(c) = C
  CHECK((poly_at(f.c, bks::chebyshev_t(6), f.tower) - f.C).is_zero());
  // c^2 + s^2 = 1
  CHECK((f.c * f.c + f.s * f.s - f.tower.integer(1)).is_zero());
  // s * U_5(c) = S  (needs the full zero test, not just cap reduction)
  ExactScalar rel = f.s * poly_at(f.c, bks::chebyshev_u(5), f.tower) - f.S;
  CHECK_FALSE(rel.is_zero_form());
  CHECK(rel.is_zero());
}

TEST_CASE("rotation closed form lands on the target angle") {
  ObtuseFixture f;
  // (re + i*im) *= (c + i*s), starting from 1: after 6 steps the real part
  // is cos(theta) and the imaginary part sin(theta), as ring identities.
  ExactScalar re = f.tower.integer(1);
  ExactScalar im = f.tower.integer(0);
  for (int k = 0; k < 6; ++k) {
    ExactScalar re2 = re * f.c - im * f.s;
    im = re * f.s + im * f.c;
    re = re2;
    if (k == 4) {
      CHECK_FALSE((re - f.C).is_zero());
      CHECK_FALSE((im - f.S).is_zero());
    }
  }
  CHECK((re - f.C).is_zero());
  CHECK((im - f.S).is_zero());
}

TEST_CASE("zero test distinguishes nonzero elements") {
  ObtuseFixture f;
  CHECK_FALSE((f.c - f.C).is_zero());
  CHECK_FALSE((f.s - f.S).is_zero());
  CHECK_FALSE(f.c.pow(5).is_zero());
  CHECK_FALSE((f.c * f.s - f.tower.constant(FieldElem(mpq_class(1, 10)))).is_zero());
  CHECK(f.tower.integer(0).is_zero());
  CHECK((f.c - f.c).is_zero());
}

TEST_CASE("degenerate right-angle pair collapses sine onto cosine") {
  // n = 2 with theta = pi/2: c = s = sqrt(2)/2 at every point of the
  // variety, so s - c is genuinely zero in the quotient.
  ScalarTower tower;
  PrecisionConfig cfg;
  int id = tower.add_chain_var(2, tower.integer(0), tower.integer(1), cfg);
  ExactScalar c = tower.chain_cos(id);
  ExactScalar s = tower.chain_sin(id);
  CHECK((c * c - tower.constant(FieldElem(mpq_class(1, 2)))).is_zero());
  CHECK((s - c).is_zero());
  CHECK_FALSE((s + c).is_zero());
  CHECK(c.eval(128).midpoint_double() == doctest::Approx(0.7071067811865476));
}

TEST_CASE("registration validates the circle relation and sine sign") {
  ScalarTower tower;
  PrecisionConfig cfg;
  CHECK_THROWS_AS(tower.add_chain_var(
                      3, tower.constant(FieldElem(mpq_class(1, 2))),
                      tower.constant(FieldElem(mpq_class(1, 2))), cfg),
                  bks::Error);
  CHECK_THROWS_AS(tower.add_chain_var(3, tower.integer(0), tower.integer(-1), cfg), bks::Error);
  CHECK_THROWS_AS(tower.add_chain_var(1, tower.integer(0), tower.integer(1), cfg), bks::Error);
}

TEST_CASE("interval evaluation tracks the geometric point") {
  ObtuseFixture f;
  // theta = acos(-sqrt(6)/3) = 144.7356..., c = cos(theta/6) = 0.9126730...
  CHECK(f.c.eval(256).midpoint_double() == doctest::Approx(0.9126730302915368).epsilon(1e-12));
  ExactScalar alpha = f.tower.constant(sq(3)) * f.c.pow(6);
  CHECK(alpha.eval(256).midpoint_double() == doctest::Approx(1.0010411503699110).epsilon(1e-12));
  CHECK(alpha.eval(256).width_upper() < 1e-60);
  // Ring-zero elements evaluate to the exact point zero.
  ExactScalar zero = f.c * f.c + f.s * f.s - f.tower.integer(1);
  CHECK(zero.is_zero());
}

TEST_CASE("sign certification on small margins") {
  ObtuseFixture f;
  PrecisionConfig cfg;
  ExactScalar alpha = f.tower.constant(sq(3)) * f.c.pow(6);
  CHECK((alpha - f.tower.integer(1)).sign(cfg) == 1);   // margin ~1.04e-3
  CHECK((alpha - f.tower.integer(2)).sign(cfg) == -1);
  CHECK((f.c * f.c + f.s * f.s - f.tower.integer(1)).sign(cfg) == 0);
  CHECK(f.S.sign(cfg) == 1);
}

TEST_CASE("root symbols extend the tower over chain elements") {
  ObtuseFixture f;
  ExactScalar alpha = f.tower.constant(sq(3)) * f.c.pow(6);
  int mu_id = f.tower.add_root_var(alpha - f.tower.integer(1), f.cfg);
  ExactScalar mu = f.tower.root_sym(mu_id);
  CHECK((mu * mu - (alpha - f.tower.integer(1))).is_zero());
  CHECK_FALSE(mu.is_zero());
  CHECK(mu.sign(f.cfg) == 1);
  CHECK(mu.eval(512).midpoint_double() == doctest::Approx(0.03226687).epsilon(1e-6));
  // Mixed monomials reduce correctly: (mu*c)^2 = radicand * c^2.
  ExactScalar lhs = (mu * f.c).pow(2);
  ExactScalar rhs = (alpha - f.tower.integer(1)) * f.c * f.c;
  CHECK((lhs - rhs).is_zero());
  // Negative radicand is rejected.
  CHECK_THROWS_AS(f.tower.add_root_var(f.tower.integer(-2), f.cfg), bks::Error);
}

TEST_CASE("multiple chain pairs coexist") {
  ScalarTower tower;
  PrecisionConfig cfg;
  int a = tower.add_chain_var(2, tower.integer(0), tower.integer(1), cfg);
  int b = tower.add_chain_var(3, tower.constant(FieldElem(mpq_class(1, 2))),
                              tower.constant(sq(3) * FieldElem(mpq_class(1, 2))), cfg);
  ExactScalar ca = tower.chain_cos(a), sa = tower.chain_sin(a);
  ExactScalar cb = tower.chain_cos(b), sb = tower.chain_sin(b);
  ExactScalar prod = (sa * sb).pow(2);
  ExactScalar expect = (tower.integer(1) - ca * ca) * (tower.integer(1) - cb * cb);
  CHECK((prod - expect).is_zero());
  CHECK((poly_at(cb, bks::chebyshev_t(3), tower) - tower.constant(FieldElem(mpq_class(1, 2))))
            .is_zero());
  CHECK_FALSE((ca - cb).is_zero());
  // cos(20 deg) = 0.9396926...
  CHECK(cb.eval(128).midpoint_double() == doctest::Approx(0.9396926207859084));
}

TEST_CASE("operations across distinct towers are refused") {
  ScalarTower t1, t2;
  PrecisionConfig cfg;
  int a = t1.add_chain_var(2, t1.integer(0), t1.integer(1), cfg);
  int b = t2.add_chain_var(2, t2.integer(0), t2.integer(1), cfg);
  CHECK_THROWS_AS(t1.chain_cos(a) + t2.chain_cos(b), bks::Error);
}

TEST_CASE("canonical strings and parser round trips") {
  ObtuseFixture f;
  ExactScalar alpha = f.tower.constant(sq(3)) * f.c.pow(6);
  int mu_id = f.tower.add_root_var(alpha - f.tower.integer(1), f.cfg);
  ExactScalar mu = f.tower.root_sym(mu_id);

  std::vector<ExactScalar> cases = {
      f.tower.integer(0),
      f.tower.integer(-7),
      f.tower.constant(sq(6) * FieldElem(mpq_class(-1, 3))),
      f.c,
      f.s * f.c * f.tower.integer(2),
      alpha,
      alpha - f.tower.integer(1),
      mu * f.c - f.s,
      (f.tower.integer(1) + f.tower.constant(sq(2))) * mu,
  };
  for (const auto& x : cases) {
    std::string text = x.str();
    ExactScalar back = bks::parse_scalar(text, f.tower);
    CHECK((back - x).is_zero());
    // Canonical form round-trips to the identical string.
    CHECK(back.str() == text);
  }
  CHECK(f.tower.integer(0).str() == "0");
  CHECK(f.c.str() == "c0");
  CHECK((f.c * f.c).str() == "c0*c0");
  CHECK((-f.c).str() == "-c0");
}

TEST_CASE("parser reports structured errors with location") {
  ScalarTower tower;
  PrecisionConfig cfg;
  tower.add_chain_var(2, tower.integer(0), tower.integer(1), cfg);
  auto expect_parse_error = [&](const std::string& text) {
    try {
      bks::parse_scalar(text, tower);
      FAIL_CHECK("expected ParseError for: " << text);
    } catch (const bks::ParseError& e) {
      CHECK(e.kind() == bks::ErrorKind::Parse);
      CHECK(e.line() >= 1);
      CHECK(e.column() >= 1);
    }
  };
  expect_parse_error("c1");           // unknown chain id
  expect_parse_error("m0");           // no roots registered
  expect_parse_error("1 +");          // trailing operator
  expect_parse_error("(1");           // unclosed paren
  expect_parse_error("sqrt(c0)");     // sqrt needs an integer
  expect_parse_error("1 / c0");       // symbolic divisor
  expect_parse_error("foo + 1");      // unknown token
  expect_parse_error("3 / 0");        // division by zero
  expect_parse_error("2 ^ 3");        // unknown character
  CHECK((bks::parse_scalar("1/2*sqrt(2)*c0 - s0", tower) -
         (tower.constant(FieldElem::sqrt_rational(mpq_class(1, 2))) * tower.chain_cos(0) -
          tower.chain_sin(0)))
            .is_zero());
}

TEST_CASE("pure field scalars work without a tower") {
  ExactScalar a(FieldElem(3));
  ExactScalar b(sq(2));
  ExactScalar p = (a + b) * (a - b);  // 9 - 2 = 7
  auto f = p.as_field();
  REQUIRE(f.has_value());
  CHECK(*f == FieldElem(7));
  CHECK_FALSE(p.has_variables());
}
