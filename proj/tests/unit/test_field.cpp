#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bks/error.hpp"
#include "bks/field.hpp"

using bks::FieldElem;

namespace {
FieldElem sq(long d) { return FieldElem::sqrt_int(mpz_class(d)); }
}  // namespace

TEST_CASE("conjugate product collapses radicals") {
  // (1 + sqrt(3)) * (1 - sqrt(3)) = -2, computed independently.
  FieldElem x = FieldElem(1) + sq(3);
  FieldElem y = FieldElem(1) - sq(3);
  CHECK((x * y) == FieldElem(-2));
}

TEST_CASE("square parts are extracted on construction") {
  CHECK(sq(12).str() == "2*sqrt(3)");
  CHECK(sq(9) == FieldElem(3));
  CHECK(sq(1) == FieldElem(1));
  CHECK(sq(0).is_zero());
  CHECK(FieldElem::sqrt_rational(mpq_class(9, 4)) == FieldElem(mpq_class(3, 2)));
  CHECK(FieldElem::sqrt_rational(mpq_class(3, 4)).str() == "1/2*sqrt(3)");
  CHECK(FieldElem::sqrt_rational(mpq_class(1, 2)).str() == "1/2*sqrt(2)");
}

TEST_CASE("radical multiplication composes squarefree indices") {
  CHECK((sq(6) * sq(10)).str() == "2*sqrt(15)");
  CHECK((sq(2) * sq(3)) == sq(6));
  CHECK((sq(2) * sq(2)) == FieldElem(2));
}

TEST_CASE("field laws on mixed elements") {
  FieldElem a = FieldElem(mpq_class(2, 3)) + sq(2) - FieldElem(mpq_class(1, 5)) * sq(30);
  FieldElem b = FieldElem(-4) + FieldElem(mpq_class(7, 2)) * sq(3);
  CHECK((a + b) - b == a);
  CHECK(a * b == b * a);
  CHECK((a * (b + FieldElem(1))) == (a * b + a));
  CHECK((a - a).is_zero());
}

TEST_CASE("inverse round trips over multiple radicals") {
  FieldElem x = FieldElem(1) + sq(2) + sq(3);
  CHECK((x * x.inverse()) == FieldElem(1));
  FieldElem y = FieldElem(mpq_class(3, 7)) * sq(5) - FieldElem(2) * sq(2) + FieldElem(1);
  CHECK((y * y.inverse()) == FieldElem(1));
  CHECK((y / y) == FieldElem(1));
  CHECK_THROWS_AS(FieldElem(0).inverse(), bks::Error);
}

TEST_CASE("rational detection and exact sqrt") {
  FieldElem r(mpq_class(49, 16));
  auto root = r.sqrt();
  REQUIRE(root.has_value());
  CHECK(*root == FieldElem(mpq_class(7, 4)));
  CHECK_FALSE((FieldElem(1) + sq(2)).sqrt().has_value());
  CHECK_FALSE((FieldElem(1) + sq(2)).as_rational().has_value());
  CHECK(FieldElem(mpq_class(5, 3)).as_rational().value() == mpq_class(5, 3));
}

TEST_CASE("interval evaluation encloses the real value") {
  // 3/2*sqrt(2) - 1 = 1.1213203435596424...
  FieldElem x = FieldElem(mpq_class(3, 2)) * sq(2) - FieldElem(1);
  bks::Interval iv = x.eval(256);
  CHECK(iv.midpoint_double() == doctest::Approx(1.1213203435596424));
  CHECK(iv.width_upper() < 1e-60);
}

TEST_CASE("sign certification") {
  CHECK(FieldElem(0).sign() == 0);
  CHECK((sq(2) - FieldElem(1)).sign() == 1);
  // sqrt(2) + sqrt(3) - sqrt(10) is small (~-0.0161) but certifiable.
  CHECK((sq(2) + sq(3) - sq(10)).sign() == -1);
  // 177 - 125*sqrt(2) is ~0.22330 with heavy cancellation.
  CHECK((FieldElem(177) - FieldElem(125) * sq(2)).sign() == 1);
}

TEST_CASE("canonical string form") {
  FieldElem x = FieldElem(-1) + FieldElem(mpq_class(2, 3)) * sq(6) - sq(2);
  CHECK(x.str() == "-1 - sqrt(2) + 2/3*sqrt(6)");
  CHECK(FieldElem(0).str() == "0");
  CHECK(FieldElem(mpq_class(-5, 4)).str() == "-5/4");
  auto rads = x.radicands();
  REQUIRE(rads.size() == 2);
  CHECK(rads[0] == 2);
  CHECK(rads[1] == 6);
}
