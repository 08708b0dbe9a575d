#include "wrand/exact_scalar.hpp"

#include "doctest.h"
#include "wrand/corpus.hpp"
#include "wrand/errors.hpp"

using namespace wrand;

TEST_CASE("canonical form strips factors of 2 and 3") {
  ExactScalar a(BigInt(6), 1, 1);  // 6/(2*3) = 1
  CHECK(a == ExactScalar(1));
  CHECK(a.two_exp() == 0);
  CHECK(a.third_exp() == 0);

  ExactScalar b(BigInt(4), 3);  // 4/8 = 1/2
  CHECK(b.num() == 1);
  CHECK(b.two_exp() == 1);

  ExactScalar z(BigInt(0), 5, 1);
  CHECK(z.is_zero());
  CHECK(z.two_exp() == 0);
  CHECK(z.third_exp() == 0);
}

TEST_CASE("arithmetic is exact") {
  ExactScalar third = ExactScalar::third(1);
  ExactScalar half = ExactScalar::pow2(-1);
  CHECK((third + third + third) == ExactScalar(1));
  CHECK((half - third) == ExactScalar(BigInt(1), 1, 1));  // 1/6
  CHECK((third * third) == ExactScalar(BigInt(1), 0, 2));  // 1/9
  CHECK(third < half);
  CHECK(ExactScalar::pow2(3) == ExactScalar(8));
  CHECK(ExactScalar::pow2(-3) * ExactScalar(8) == ExactScalar(1));
}

TEST_CASE("division is exact and checked") {
  ExactScalar q = ExactScalar(3) / ExactScalar(4);
  CHECK(q == ExactScalar(BigInt(3), 2));
  CHECK((ExactScalar(1) / ExactScalar::third(1)) == ExactScalar(3));
  CHECK_THROWS_AS(ExactScalar(1) / ExactScalar(5), SchemaError);
  CHECK_THROWS_AS(ExactScalar(1) / ExactScalar(0), SchemaError);
}

TEST_CASE("rational round trip") {
  ExactScalar x(BigInt(-7), 4, 1);  // -7/48
  Rational q = x.to_rational();
  CHECK(q == Rational(-7, 48));
  CHECK(ExactScalar::from_rational(q) == x);
  CHECK_THROWS_AS(ExactScalar::from_rational(Rational(1, 7)), SchemaError);
}

TEST_CASE("parse_rational accepts fractions, integers and decimals") {
  CHECK(parse_rational("1/3") == Rational(1, 3));
  CHECK(parse_rational("-5") == Rational(-5));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK_THROWS_AS(parse_rational("x"), SchemaError);
  CHECK_THROWS_AS(parse_rational("1/0"), SchemaError);
}

TEST_CASE("field laws hold on random 3-smooth scalars") {
  CorpusRng rng(7);
  auto draw = [&] {
    return ExactScalar(BigInt(rng.in_range(-50, 50)), static_cast<unsigned>(rng.below(6)),
                       static_cast<unsigned>(rng.below(3)));
  };
  for (int it = 0; it < 200; ++it) {
    ExactScalar a = draw(), b = draw(), c = draw();
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - b) + b == a);
    // ordering is consistent with rational ordering
    CHECK((a < b) == (a.to_rational() < b.to_rational()));
  }
}
