#pragma once

#include <string>

#include "kbonacci/ap.hpp"

namespace kbonacci {

/// Non-negative magnitude held at low precision. Every operation rounds in the
/// direction that keeps an upper bound an upper bound (or a lower bound a lower
/// bound, for the *_lower helpers). The exponent range is MPFR's, so values like
/// phi^100000 do not overflow.
class Mag {
 public:
  static constexpr Prec kBits = 64;

  Mag() : v_(kBits) {}
  explicit Mag(double exact_value);

  static Mag abs_upper(const ApReal& x);
  static Mag abs_upper(const ApComplex& z);
  /// |re| + |im|, rounded up.
  static Mag l1_upper(const ApComplex& z);
  static Mag abs_lower(const ApComplex& z);
  /// 2^-bits, the unit roundoff of round-to-nearest at `bits` precision.
  static Mag unit_roundoff(Prec bits);

  friend Mag operator+(const Mag& a, const Mag& b);
  friend Mag operator*(const Mag& a, const Mag& b);
  /// a / b rounded up; b is expected to be a lower bound.
  static Mag div_upper(const Mag& a, const Mag& b);
  /// max(a - b, 0) rounded down; a is expected to be a lower bound.
  static Mag sub_lower(const Mag& a, const Mag& b);
  static Mag mul_lower(const Mag& a, const Mag& b);
  static Mag pow_upper(const Mag& a, unsigned long e);
  static Mag pow_lower(const Mag& a, unsigned long e);

  friend bool operator<(const Mag& a, const Mag& b) { return a.v_ < b.v_; }
  friend bool operator>(const Mag& a, const Mag& b) { return a.v_ > b.v_; }
  friend bool operator<=(const Mag& a, const Mag& b) { return !(b.v_ < a.v_); }
  friend bool operator==(const Mag& a, const Mag& b) { return a.v_ == b.v_; }

  bool is_zero() const { return v_.is_zero(); }
  bool is_finite() const { return mpfr_number_p(v_.get()) != 0; }
  double to_double() const { return v_.to_double(); }
  /// log2 of the value (as a double); -inf for zero.
  double log2() const;
  /// Rounded up by default, so a printed upper bound stays an upper bound.
  std::string to_decimal(int digits = 6, mpfr_rnd_t rnd = MPFR_RNDU) const { return v_.to_decimal(digits, rnd); }
  const ApReal& value() const { return v_; }

 private:
  ApReal v_;
};

Mag max(const Mag& a, const Mag& b);
Mag min(const Mag& a, const Mag& b);

/// Closed disk {mid + t : |t| <= rad} that is guaranteed to contain the exact
/// value being tracked. Each operation widens `rad` by the propagated input
/// radii plus the rounding error committed on the midpoint.
struct ComplexBall {
  ApComplex mid;
  Mag rad;

  explicit ComplexBall(Prec prec) : mid(prec) {}
  ComplexBall(ApComplex m, Mag r) : mid(std::move(m)), rad(std::move(r)) {}

  static ComplexBall exact_integer(Prec prec, long value);

  Prec prec() const { return mid.prec(); }
  /// True when 0 lies outside the disk.
  bool excludes_zero() const { return Mag::abs_lower(mid) > rad; }
};

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
/// Throws PrecisionInsufficientError when the divisor's disk contains zero.
ComplexBall inverse(const ComplexBall& b);
ComplexBall operator/(const ComplexBall& a, const ComplexBall& b);
ComplexBall pow(const ComplexBall& z, unsigned long e);

}  // namespace kbonacci
