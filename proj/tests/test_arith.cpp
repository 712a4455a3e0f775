#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dualgap/pell.hpp"
#include "dualgap/quad.hpp"

using namespace dualgap;

namespace {

Quad random_quad(std::mt19937_64& rng, bool allow_surd = true) {
  std::uniform_int_distribution<long> numd(-50, 50), dend(1, 20);
  Rational a(numd(rng), dend(rng));
  Rational b = allow_surd ? Rational(numd(rng), dend(rng)) : Rational(0);
  return Quad(a, b, 2);
}

// Exact value of a decimal string such as "-12.0034", for cross-checks.
Rational decimal_to_rational(const std::string& s) {
  std::string t = s;
  bool neg = !t.empty() && t[0] == '-';
  if (neg) t.erase(0, 1);
  auto dot = t.find('.');
  unsigned frac_digits = 0;
  if (dot != std::string::npos) {
    frac_digits = static_cast<unsigned>(t.size() - dot - 1);
    t.erase(dot, 1);
  }
  t.erase(0, std::min(t.find_first_not_of('0'), t.size() - 1));  // cpp_int treats 0-prefix as octal
  Rational r(BigInt(t), pow10(frac_digits));
  return neg ? -r : r;
}

}  // namespace

TEST_CASE("quad basic arithmetic identities", "[arith]") {
  Quad r2 = Quad::sqrt_of(2);
  CHECK((Quad(1) + r2) * (Quad(1) - r2) == Quad(-1));
  CHECK(r2 * r2 == Quad(2));
  CHECK(Quad(1) / (Quad(1) + r2) == Quad(-1) + r2);
  CHECK(Quad(Rational(1, 2)) + Quad(Rational(1, 3)) == Quad(Rational(5, 6)));
}

TEST_CASE("quad exact sign", "[arith]") {
  Quad r2 = Quad::sqrt_of(2);
  CHECK((Quad(7) - Quad(5) * r2).sign() == -1);
  CHECK((Quad(5) * r2 - Quad(7)).sign() == 1);
  CHECK((Quad(99) - Quad(70) * r2).sign() == 1);   // 99^2 = 9801 > 9800
  CHECK((Quad(0)).sign() == 0);
  CHECK((r2 - r2).sign() == 0);
  CHECK((Quad(-3) + r2).sign() == -1);
}

TEST_CASE("quad floor and frac", "[arith]") {
  Quad r2 = Quad::sqrt_of(2);
  CHECK(qfloor(Quad(1) + r2) == 2);
  CHECK(qfloor(-r2) == -2);
  CHECK(qfrac(Quad(5) * r2) == Quad(5) * r2 - Quad(7));
  CHECK(qfloor(Quad(70) * r2) == 98);
  CHECK(qfloor(Quad(169) * r2) == 239);  // 239^2 = 57121, 2*169^2 = 57122
  CHECK(qfloor(Quad(-169) * r2) == -240);
  CHECK(qfloor(Quad(3)) == 3);
  CHECK(qfloor(Quad(Rational(-7, 2))) == -4);
  CHECK(qceil(Quad(Rational(-7, 2))) == -3);
}

TEST_CASE("quad floor survives values far outside double range", "[arith]") {
  Rational big = Rational(BigInt("1" + std::string(40, '0')));  // 10^40
  Quad x = Quad(big) + Quad::sqrt_of(2);
  CHECK(qfloor(x) == num(big) + 1);
  CHECK(qfloor(-x) == -num(big) - 2);
  // and a case where the double estimate saturates to inf
  Rational huge = Rational(BigInt(1) << 2000);
  CHECK(qfloor(Quad(huge) + Quad::sqrt_of(2)) == num(huge) + 1);
}

TEST_CASE("decimal approximation is correctly rounded", "[arith]") {
  Quad r2 = Quad::sqrt_of(2);
  CHECK(approx(r2, 5) == "1.41421");
  CHECK(approx(Quad(1), 3) == "1.000");
  CHECK(approx(Quad(-7) + Quad(5) * r2, 4) == "0.0711");
  CHECK(approx(-(Quad(1) + r2), 2) == "-2.41");
  CHECK(approx(Quad(Rational(1, 4)), 1) == "0.3");  // half rounds up
  CHECK(approx(Quad(7), 0) == "7");
  CHECK_THROWS_AS(approx(r2, 65), DomainError);
}

TEST_CASE("field axioms hold on random values", "[arith][random]") {
  std::mt19937_64 rng(12345);
  for (int it = 0; it < 1000; ++it) {
    Quad x = random_quad(rng), y = random_quad(rng), z = random_quad(rng);
    CHECK(x + y == y + x);
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x - x == Quad(0));
    if (!y.is_zero()) CHECK((x / y) * y == x);
  }
}

TEST_CASE("floor and frac invariants on random values", "[arith][random]") {
  std::mt19937_64 rng(777);
  for (int it = 0; it < 1000; ++it) {
    Quad x = random_quad(rng);
    BigInt f = qfloor(x);
    Quad fr = qfrac(x);
    CHECK(fr.sign() >= 0);
    CHECK((fr - Quad(1)).sign() < 0);
    CHECK(Quad(f) + fr == x);
    CHECK(qfloor(x + Quad(17)) == f + 17);
  }
}

TEST_CASE("ordering agrees with 30-digit decimals", "[arith][random]") {
  std::mt19937_64 rng(31337);
  for (int it = 0; it < 500; ++it) {
    Quad x = random_quad(rng), y = random_quad(rng);
    if (x == y) continue;
    Rational dx = decimal_to_rational(approx(x, 30));
    Rational dy = decimal_to_rational(approx(y, 30));
    // coefficient sizes bound the gap well above 10^-30, so decimals decide
    REQUIRE(dx != dy);
    CHECK((compare(x, y) > 0) == (dx > dy));
  }
}

TEST_CASE("literal printing round-trips through the parser", "[arith]") {
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 500; ++it) {
    Quad x = random_quad(rng);
    CHECK(parse_quad(to_string(x)) == x);
  }
  CHECK(parse_quad("-1 + 1*sqrt(2)") == Quad(-1) + Quad::sqrt_of(2));
  CHECK(parse_quad("-1+1/1*sqrt(2)") == Quad(-1) + Quad::sqrt_of(2));
  CHECK(parse_quad("sqrt(2)") == Quad::sqrt_of(2));
  CHECK(parse_quad("-sqrt(2)") == -Quad::sqrt_of(2));
  CHECK(parse_quad("7/5") == Quad(Rational(7, 5)));
  CHECK(parse_quad("3/2*sqrt(2)") == Quad(Rational(0), Rational(3, 2), 2));
  CHECK(parse_quad("0") == Quad(0));
}

TEST_CASE("malformed literals and domain errors are rejected", "[arith]") {
  CHECK_THROWS_AS(parse_quad("1.5"), ParseError);
  CHECK_THROWS_AS(parse_quad("sqrt(4)"), ParseError);
  CHECK_THROWS_AS(parse_quad("1/0"), ParseError);
  CHECK_THROWS_AS(parse_quad(""), ParseError);
  CHECK_THROWS_AS(parse_quad("1 2"), ParseError);
  CHECK_THROWS_AS(parse_quad("2*3"), ParseError);
  CHECK_THROWS_AS(parse_quad("sqrt(3)", 2), ParseError);
  CHECK_THROWS_AS(Quad(1) / Quad(0), DomainError);
  CHECK_THROWS_AS(Quad(Rational(1), Rational(1), 4), DomainError);
  CHECK_THROWS_AS(Quad::sqrt_of(2) + Quad::sqrt_of(3), DomainError);
  CHECK_THROWS_AS(Quad::sqrt_of(2) == Quad::sqrt_of(3), DomainError);
}

TEST_CASE("rational-valued operands adopt the other field", "[arith]") {
  Quad three(3);  // carries the default surd index
  Quad r3 = Quad::sqrt_of(3);
  CHECK((three + r3).d() == 3);
  CHECK(three + r3 == Quad(Rational(3), Rational(1), 3));
}

TEST_CASE("pell convergents follow the recurrence", "[pell]") {
  auto cs = pell_convergents(6);
  REQUIRE(cs.size() == 6);
  CHECK(cs[0].p == 1);
  CHECK(cs[0].q == 1);
  CHECK(cs[1].p == 3);
  CHECK(cs[1].q == 2);
  CHECK(cs.back().p == 99);
  CHECK(cs.back().q == 70);
}

TEST_CASE("pell identity and approach to sqrt(2)", "[pell]") {
  auto cs = pell_convergents(90);
  Quad r2 = Quad::sqrt_of(2);
  Quad prev_gap;
  for (size_t k = 0; k < cs.size(); ++k) {
    BigInt id = cs[k].p * cs[k].p - 2 * cs[k].q * cs[k].q;
    CHECK(id == (k % 2 == 0 ? -1 : 1));
    Quad gap = Quad(cs[k].q) * r2 - Quad(cs[k].p);
    CHECK(gap.sign() == (k % 2 == 0 ? 1 : -1));
    if (k > 0) CHECK(abs(gap) < abs(prev_gap));
    prev_gap = gap;
  }
  // far beyond 64-bit territory
  CHECK(cs[80].p > BigInt("1000000000000000000000000000000"));
}
