#pragma once

#include <string>
#include <utility>

#include <mpfr.h>

namespace kbonacci {

using Prec = mpfr_prec_t;

/// Minimum working precision accepted by the root finder and Binet engine.
inline constexpr Prec kMinPrecBits = 64;

/// RAII owner of an mpfr_t. Arithmetic operators round to nearest at the
/// larger of the operand precisions.
class ApReal {
 public:
  explicit ApReal(Prec prec = kMinPrecBits);
  ApReal(Prec prec, long value);
  ApReal(Prec prec, int value) : ApReal(prec, static_cast<long>(value)) {}
  ApReal(Prec prec, double value);
  ApReal(Prec prec, const char* decimal);
  ~ApReal();

  ApReal(const ApReal& other);
  ApReal(ApReal&& other) noexcept;
  ApReal& operator=(const ApReal& other);
  ApReal& operator=(ApReal&& other) noexcept;

  Prec prec() const noexcept { return mpfr_get_prec(v_); }
  /// Changes precision, rounding the current value to nearest.
  void round_to(Prec prec);

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }

  /// Scientific decimal string with `digits` significant digits, e.g. "1.618e+00".
  std::string to_decimal(int digits, mpfr_rnd_t rnd = MPFR_RNDN) const;

  ApReal& operator+=(const ApReal& rhs);
  ApReal& operator-=(const ApReal& rhs);
  ApReal& operator*=(const ApReal& rhs);
  ApReal& operator/=(const ApReal& rhs);

  friend ApReal operator+(ApReal lhs, const ApReal& rhs) { return lhs += rhs; }
  friend ApReal operator-(ApReal lhs, const ApReal& rhs) { return lhs -= rhs; }
  friend ApReal operator*(ApReal lhs, const ApReal& rhs) { return lhs *= rhs; }
  friend ApReal operator/(ApReal lhs, const ApReal& rhs) { return lhs /= rhs; }
  ApReal operator-() const;

  friend int compare(const ApReal& a, const ApReal& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator<(const ApReal& a, const ApReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const ApReal& a, const ApReal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const ApReal& a, const ApReal& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const ApReal& a, const ApReal& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const ApReal& a, const ApReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

 private:
  mpfr_t v_;
};

ApReal abs(const ApReal& x);
ApReal sqrt(const ApReal& x);
ApReal hypot(const ApReal& x, const ApReal& y);

/// Number of significant decimal digits equivalent to `prec` bits, plus one.
int decimal_digits_for(Prec prec);

/// Complex value as a pair of ApReal with equal precision.
struct ApComplex {
  ApReal re;
  ApReal im;

  explicit ApComplex(Prec prec = kMinPrecBits) : re(prec), im(prec) {}
  ApComplex(ApReal r, ApReal i) : re(std::move(r)), im(std::move(i)) {}

  Prec prec() const noexcept { return re.prec(); }
  void round_to(Prec prec) {
    re.round_to(prec);
    im.round_to(prec);
  }

  ApComplex& operator+=(const ApComplex& rhs);
  ApComplex& operator-=(const ApComplex& rhs);
  ApComplex& operator*=(const ApComplex& rhs);
  ApComplex& operator/=(const ApComplex& rhs);

  friend ApComplex operator+(ApComplex lhs, const ApComplex& rhs) { return lhs += rhs; }
  friend ApComplex operator-(ApComplex lhs, const ApComplex& rhs) { return lhs -= rhs; }
  friend ApComplex operator*(ApComplex lhs, const ApComplex& rhs) { return lhs *= rhs; }
  friend ApComplex operator/(ApComplex lhs, const ApComplex& rhs) { return lhs /= rhs; }
};

ApComplex conj(const ApComplex& z);
/// |z|, rounded to nearest.
ApReal abs(const ApComplex& z);
/// z^e by binary powering; z^0 = 1.
ApComplex pow(const ApComplex& z, unsigned long e);

}  // namespace kbonacci
