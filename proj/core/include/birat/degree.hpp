#pragma once

#include <compare>
#include <limits>
#include <ostream>

namespace birat {

/// Polynomial degree with a NEG_INF sentinel for the zero polynomial.
/// NEG_INF absorbs under addition.
class Degree {
 public:
  constexpr Degree() = default;
  constexpr Degree(int value) : value_(value) {}  // NOLINT

  static constexpr Degree neg_inf() { return Degree(kNegInf); }

  constexpr bool is_neg_inf() const { return value_ == kNegInf; }
  constexpr int value() const { return value_; }

  friend constexpr Degree operator+(Degree a, Degree b) {
    if (a.is_neg_inf() || b.is_neg_inf()) return neg_inf();
    return Degree(a.value_ + b.value_);
  }
  friend constexpr bool operator==(Degree, Degree) = default;
  friend constexpr auto operator<=>(Degree, Degree) = default;

  friend std::ostream& operator<<(std::ostream& os, Degree d) {
    if (d.is_neg_inf()) return os << "-inf";
    return os << d.value_;
  }

 private:
  static constexpr int kNegInf = std::numeric_limits<int>::min();
  int value_ = kNegInf;
};

}  // namespace birat
