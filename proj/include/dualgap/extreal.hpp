#pragma once

#include <ostream>
#include <string>

#include "dualgap/quad.hpp"

namespace dualgap {

// Quad extended with -inf / +inf. Total order; addition defined except for
// opposite infinities.
class ExtReal {
 public:
  ExtReal() : k_(0) {}
  ExtReal(Quad v) : k_(0), v_(std::move(v)) {}  // NOLINT: implicit by design
  static ExtReal neg_inf() { return ExtReal(-1); }
  static ExtReal pos_inf() { return ExtReal(+1); }

  bool is_finite() const { return k_ == 0; }
  bool is_neg_inf() const { return k_ < 0; }
  bool is_pos_inf() const { return k_ > 0; }
  const Quad& value() const {
    if (!is_finite()) throw DomainError("value() of infinite ExtReal");
    return v_;
  }

  friend int compare(const ExtReal& x, const ExtReal& y) {
    if (x.k_ != y.k_) return x.k_ < y.k_ ? -1 : 1;
    if (x.k_ != 0) return 0;
    return compare(x.v_, y.v_);
  }
  friend bool operator==(const ExtReal& x, const ExtReal& y) { return compare(x, y) == 0; }
  friend bool operator!=(const ExtReal& x, const ExtReal& y) { return compare(x, y) != 0; }
  friend bool operator<(const ExtReal& x, const ExtReal& y) { return compare(x, y) < 0; }
  friend bool operator<=(const ExtReal& x, const ExtReal& y) { return compare(x, y) <= 0; }
  friend bool operator>(const ExtReal& x, const ExtReal& y) { return compare(x, y) > 0; }
  friend bool operator>=(const ExtReal& x, const ExtReal& y) { return compare(x, y) >= 0; }

  friend ExtReal operator+(const ExtReal& x, const ExtReal& y) {
    if (x.is_finite() && y.is_finite()) return ExtReal(x.v_ + y.v_);
    if (x.is_finite()) return y;
    if (y.is_finite()) return x;
    if (x.k_ != y.k_) throw DomainError("adding opposite infinities");
    return x;
  }
  friend ExtReal operator-(const ExtReal& x) {
    if (x.is_finite()) return ExtReal(-x.v_);
    return x.k_ < 0 ? pos_inf() : neg_inf();
  }

 private:
  explicit ExtReal(int k) : k_(k) {}
  int k_;
  Quad v_;
};

inline std::string to_string(const ExtReal& x) {
  if (x.is_neg_inf()) return "-inf";
  if (x.is_pos_inf()) return "+inf";
  return to_string(x.value());
}

inline std::ostream& operator<<(std::ostream& os, const ExtReal& x) { return os << to_string(x); }

}  // namespace dualgap
