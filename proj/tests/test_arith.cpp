#include <catch_amalgamated.hpp>

#include <toricoh/arith.hpp>

using namespace toricoh;

TEST_CASE("floor division and floor remainder handle negative numerators") {
  CHECK(floor_div(Int(7), Int(3)) == 2);
  CHECK(floor_div(Int(-7), Int(3)) == -3);
  CHECK(floor_div(Int(-6), Int(3)) == -2);
  CHECK(floor_div(Int(0), Int(5)) == 0);
  CHECK(mod_floor(Int(7), Int(3)) == 1);
  CHECK(mod_floor(Int(-7), Int(3)) == 2);
  CHECK(mod_floor(Int(-6), Int(3)) == 0);
  for (long long a = -25; a <= 25; ++a)
    for (long long d = 1; d <= 7; ++d) {
      Int q = floor_div(Int(a), Int(d)), s = mod_floor(Int(a), Int(d));
      CHECK(q * d + s == a);
      CHECK(s >= 0);
      CHECK(s < d);
    }
}

TEST_CASE("rational floor and fractional part") {
  CHECK(floor_rat(Rational(7, 2)) == 3);
  CHECK(floor_rat(Rational(-7, 2)) == -4);
  CHECK(floor_rat(Rational(-4, 2)) == -2);
  CHECK(frac_part(Rational(-7, 2)) == Rational(1, 2));
  CHECK(frac_part(Rational(5)) == 0);
  CHECK(frac_part(Rational(-2, 5)) == Rational(3, 5));
}

TEST_CASE("modular inverse") {
  CHECK_THROWS_AS(mod_inverse(Int(1), Int(1)), std::domain_error);
  CHECK(mod_inverse(Int(3), Int(7)) == 5);
  CHECK(mod_inverse(Int(5), Int(12)) == 5);
  for (long long d = 2; d <= 40; ++d)
    for (long long a = 1; a < d; ++a) {
      if (boost::multiprecision::gcd(Int(a), Int(d)) != 1) continue;
      Int inv = mod_inverse(Int(a), Int(d));
      CHECK(mod_floor(inv * a, Int(d)) == 1);
    }
  CHECK_THROWS_AS(mod_inverse(Int(4), Int(6)), std::invalid_argument);
}

TEST_CASE("gcd over lists, empty list gives 0") {
  CHECK(gcd_list(std::vector<Int>{}) == 0);
  CHECK(gcd_list(std::vector<Int>{Int(12)}) == 12);
  CHECK(gcd_list(std::vector<Int>{Int(12), Int(18), Int(30)}) == 6);
  CHECK(gcd_list(std::vector<Int>{Int(-4), Int(6)}) == 2);
}

TEST_CASE("binomial coefficient C(n,2) with vanishing below 2") {
  CHECK(binom2(Int(0)) == 0);
  CHECK(binom2(Int(1)) == 0);
  CHECK(binom2(Int(2)) == 1);
  CHECK(binom2(Int(7)) == 21);
}

TEST_CASE("exact integer extraction from rationals") {
  CHECK(to_int_exact(Rational(10, 2), "x") == 5);
  CHECK(to_int_exact(Rational(-9, 3), "x") == -3);
  CHECK_THROWS_AS(to_int_exact(Rational(1, 2), "x"), internal_error);
}

TEST_CASE("checked narrowing to long long") {
  CHECK(to_ll_checked(Int(-123456789), "x") == -123456789);
  Int big = Int(1) << 80;
  CHECK_THROWS_AS(to_ll_checked(big, "x"), std::overflow_error);
}

TEST_CASE("rational and integer text round-trips") {
  CHECK(to_string(Rational(-3, 4)) == "-3/4");
  CHECK(to_string(Rational(7)) == "7");
  CHECK(to_string(Int(-12)) == "-12");
  CHECK(parse_int("-0012") == -12);
  CHECK(parse_rational("22/7") == Rational(22, 7));
  CHECK(parse_rational("-5") == Rational(-5));
  CHECK_THROWS_AS(parse_int("12x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_int(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_int("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
}
