#include "doctest.h"
#include "flagcone/exact.hpp"

using namespace flagcone;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("2/3") == Rational(2, 3));
  CHECK(parse_rational("-4/6") == Rational(-2, 3));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5") == Rational(-3, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(to_string(Rational(3, 8)) == "3/8");
  CHECK(to_string(Rational(-5)) == "-5");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK_THROWS_AS(to_integer(Rational(1, 2)), std::domain_error);
}

TEST_CASE("Gaussian rationals form a field") {
  const GaussRational a(Rational(1, 2), Rational(3));
  const GaussRational b(Rational(-2), Rational(1, 3));
  CHECK((a * b) / b == a);
  CHECK(a * a.conj() == GaussRational(a.abs2()));
  CHECK(GaussRational::i() * GaussRational::i() == GaussRational(-1));
  CHECK_THROWS_AS(a / GaussRational(0), std::domain_error);
}

TEST_CASE("exact inverse and determinant") {
  const RationalMatrix m{{Rational(2), Rational(1)}, {Rational(7), Rational(4)}};
  CHECK(m * inverse(m) == RationalMatrix::identity(2));
  CHECK(determinant(m) == Rational(1));
  const RationalMatrix s{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
  CHECK(determinant(s) == Rational(0));
  CHECK_THROWS_AS(inverse(s), std::domain_error);

  const QMatrix q{{GaussRational(0), GaussRational::i()}, {GaussRational(1), GaussRational(0)}};
  CHECK(determinant(q) == -GaussRational::i());
  CHECK(kronecker(q, QMatrix::identity(2)).rows() == 4);
}
