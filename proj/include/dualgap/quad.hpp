#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "dualgap/errors.hpp"
#include "dualgap/rational.hpp"

namespace dualgap {

inline bool is_square_free(long d) {
  if (d < 2) return false;
  for (long p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) return false;
  return true;
}

// Element of Q(sqrt(d)): a + b*sqrt(d) with rational a, b and square-free d >= 2.
// Arithmetic between two genuinely irrational values requires matching d;
// rational-valued operands (b == 0) adopt the other side's field.
class Quad {
 public:
  Quad() = default;
  Quad(int v) : a_(v) {}                  // NOLINT: implicit by design
  Quad(long v) : a_(v) {}                 // NOLINT
  Quad(long long v) : a_(v) {}            // NOLINT
  Quad(const BigInt& v) : a_(v) {}        // NOLINT
  Quad(Rational v) : a_(std::move(v)) {}  // NOLINT
  Quad(Rational a, Rational b, long d = 2) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    check_d(d_);
  }

  static Quad sqrt_of(long d) { return Quad(Rational(0), Rational(1), d); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  long d() const { return d_; }

  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  // Exact sign without any floating point.
  int sign() const {
    int sa = sign_of(a_), sb = sign_of(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    Rational lhs = a_ * a_, rhs = b_ * b_ * d_;
    if (lhs == rhs) throw DomainError("surd index is not square-free");
    return lhs > rhs ? sa : sb;
  }

  Quad operator-() const { return Quad(-a_, -b_, d_, nocheck{}); }

  friend Quad operator+(const Quad& x, const Quad& y) {
    return Quad(x.a_ + y.a_, x.b_ + y.b_, join_d(x, y), nocheck{});
  }
  friend Quad operator-(const Quad& x, const Quad& y) {
    return Quad(x.a_ - y.a_, x.b_ - y.b_, join_d(x, y), nocheck{});
  }
  friend Quad operator*(const Quad& x, const Quad& y) {
    long d = join_d(x, y);
    return Quad(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d, nocheck{});
  }
  friend Quad operator/(const Quad& x, const Quad& y) {
    long d = join_d(x, y);
    Rational denom = y.a_ * y.a_ - y.b_ * y.b_ * d;
    if (denom == 0) {
      if (y.is_zero()) throw DomainError("division by zero");
      throw DomainError("surd index is not square-free");
    }
    // multiply by the conjugate of y
    Rational ra = (x.a_ * y.a_ - x.b_ * y.b_ * d) / denom;
    Rational rb = (x.b_ * y.a_ - x.a_ * y.b_) / denom;
    return Quad(ra, rb, d, nocheck{});
  }

  Quad& operator+=(const Quad& y) { return *this = *this + y; }
  Quad& operator-=(const Quad& y) { return *this = *this - y; }
  Quad& operator*=(const Quad& y) { return *this = *this * y; }
  Quad& operator/=(const Quad& y) { return *this = *this / y; }

  friend bool operator==(const Quad& x, const Quad& y) {
    if (x.is_rational() && y.is_rational()) return x.a_ == y.a_;
    return (x - y).sign() == 0;
  }
  friend bool operator!=(const Quad& x, const Quad& y) { return !(x == y); }
  friend bool operator<(const Quad& x, const Quad& y) { return (x - y).sign() < 0; }
  friend bool operator>(const Quad& x, const Quad& y) { return (x - y).sign() > 0; }
  friend bool operator<=(const Quad& x, const Quad& y) { return (x - y).sign() <= 0; }
  friend bool operator>=(const Quad& x, const Quad& y) { return (x - y).sign() >= 0; }

  double to_double() const {
    return a_.convert_to<double>() + b_.convert_to<double>() * std::sqrt(double(d_));
  }

 private:
  struct nocheck {};
  Quad(Rational a, Rational b, long d, nocheck) : a_(std::move(a)), b_(std::move(b)), d_(d) {}

  static void check_d(long d) {
    if (!is_square_free(d)) throw DomainError("surd index must be square-free and >= 2");
  }

  static long join_d(const Quad& x, const Quad& y) {
    if (x.b_ == 0) return y.b_ == 0 ? x.d_ : y.d_;
    if (y.b_ == 0) return x.d_;
    if (x.d_ != y.d_) throw DomainError("mixed surd indices");
    return x.d_;
  }

  Rational a_{0};
  Rational b_{0};
  long d_ = 2;
};

inline int sign_of(const Quad& x) { return x.sign(); }
inline int compare(const Quad& x, const Quad& y) { return (x - y).sign(); }
inline Quad abs(const Quad& x) { return x.sign() < 0 ? -x : x; }

// Exact floor. Double estimate first, then a two-sided exact check; falls back
// to an integer-sqrt bracket when the estimate is off or non-finite.
inline BigInt qfloor(const Quad& x) {
  if (x.is_rational()) return rat_floor(x.a());
  double est = x.to_double();
  if (std::isfinite(est)) {
    double f = std::floor(est);
    if (std::abs(f) < 9e15) {  // representable exactly in both double and int64
      BigInt n = BigInt(static_cast<long long>(f));
      if ((x - Quad(n)).sign() >= 0 && (x - Quad(BigInt(n + 1))).sign() < 0) return n;
    }
  }
  // x = (A + B*sqrt(d)) / C with integer A, B, C > 0
  BigInt A = num(x.a()) * den(x.b());
  BigInt B = num(x.b()) * den(x.a());
  BigInt C = den(x.a()) * den(x.b());
  BigInt t = int_sqrt(BigInt(B * B * x.d()));
  BigInt lo = (B >= 0) ? BigInt(A + t) : BigInt(A - t - 1);
  BigInt nlo = floor_div(lo, BigInt(C)), nhi = floor_div(BigInt(lo + 1), C);
  if (nlo == nhi) return nlo;
  return (x - Quad(nhi)).sign() >= 0 ? nhi : nlo;
}

inline BigInt qceil(const Quad& x) { return -qfloor(-x); }

inline Quad qfrac(const Quad& x) { return x - Quad(qfloor(x)); }

// Decimal rendering with `digits` places after the point, round half up.
inline std::string approx(const Quad& x, unsigned digits) {
  if (digits > 64) throw DomainError("approx precision limited to 64 digits");
  BigInt scaled = qfloor(x * Quad(Rational(pow10(digits))) + Quad(Rational(1, 2)));
  bool neg = scaled < 0;
  std::string s = BigInt(boost::multiprecision::abs(scaled)).str();
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  return neg ? "-" + s : s;
}

inline std::string to_string(const Quad& x) {
  if (x.is_rational()) return to_string(x.a());
  BigInt bn = BigInt(boost::multiprecision::abs(num(x.b())));
  std::string surd =
      to_string(Rational(bn, den(x.b()))) + "*sqrt(" + std::to_string(x.d()) + ")";
  if (x.a() == 0) return (sign_of(x.b()) < 0 ? "-" : "") + surd;
  return to_string(x.a()) + (sign_of(x.b()) < 0 ? " - " : " + ") + surd;
}

inline std::ostream& operator<<(std::ostream& os, const Quad& x) { return os << to_string(x); }

namespace detail {

struct QuadLexer {
  const std::string& s;
  size_t i = 0;
  int line;

  explicit QuadLexer(const std::string& str, int line_ = 0) : s(str), line(line_) {}

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg + " in \"" + s + "\"", line, static_cast<int>(i) + 1);
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool eat_word(const char* w) {
    skip_ws();
    size_t n = std::char_traits<char>::length(w);
    if (s.compare(i, n, w) == 0) {
      i += n;
      return true;
    }
    return false;
  }
  BigInt read_uint() {
    skip_ws();
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected digit");
    size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    BigInt v(s.substr(i, j - i));
    i = j;
    return v;
  }
  Rational read_rational() {
    BigInt p = read_uint();
    if (eat('/')) {
      BigInt q = read_uint();
      if (q == 0) fail("zero denominator");
      return Rational(p, q);
    }
    if (i < s.size() && s[i] == '.') fail("decimal literals not supported, use p/q");
    return Rational(p);
  }
};

}  // namespace detail

// Literal grammar: signed terms, each either a rational p[/q], a coefficient
// times a surd p[/q]*sqrt(d), or a bare sqrt(d). Examples:
//   "3", "-1/2", "sqrt(2)", "1 - 1/2*sqrt(2)", "-1+1*sqrt(2)"
inline Quad parse_quad(const std::string& text, long expect_d = 0, int line = 0) {
  detail::QuadLexer lx(text, line);
  Rational a = 0, b = 0;
  long d = 0;
  bool any = false;
  while (!lx.done()) {
    int sgn = 1;
    if (lx.eat('-')) sgn = -1;
    else if (lx.eat('+')) sgn = 1;
    else if (any) lx.fail("expected '+' or '-'");
    lx.skip_ws();
    Rational coeff = 1;
    bool have_coeff = false;
    if (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i]))) {
      coeff = lx.read_rational();
      have_coeff = true;
    }
    bool surd = false;
    if (!have_coeff || lx.eat('*')) {
      if (lx.eat_word("sqrt")) {
        if (!lx.eat('(')) lx.fail("expected '('");
        BigInt dv = lx.read_uint();
        if (!lx.eat(')')) lx.fail("expected ')'");
        if (dv < 2 || dv > 1000000) lx.fail("surd index out of range");
        long dl = dv.convert_to<long>();
        if (!is_square_free(dl)) lx.fail("surd index must be square-free");
        if (d != 0 && d != dl) lx.fail("mixed surd indices");
        d = dl;
        surd = true;
      } else if (!have_coeff) {
        lx.fail("expected number or sqrt(..)");
      } else {
        lx.fail("expected sqrt(..) after '*'");
      }
    }
    if (surd) b += sgn * coeff;
    else a += sgn * coeff;
    any = true;
  }
  if (!any) lx.fail("empty literal");
  if (expect_d != 0 && d != 0 && d != expect_d) lx.fail("surd index does not match problem");
  if (d == 0) d = expect_d != 0 ? expect_d : 2;
  return Quad(a, b, d);
}

}  // namespace dualgap
