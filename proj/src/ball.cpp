#include "kbonacci/ball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kbonacci/errors.hpp"

namespace kbonacci {

Mag::Mag(double exact_value) : v_(kBits) {
  if (!(exact_value >= 0)) throw InvalidArgumentError("Mag must be non-negative");
  mpfr_set_d(v_.get(), exact_value, MPFR_RNDU);
}

Mag Mag::abs_upper(const ApReal& x) {
  Mag m;
  mpfr_abs(m.v_.get(), x.get(), MPFR_RNDU);
  return m;
}

Mag Mag::abs_upper(const ApComplex& z) {
  Mag m;
  mpfr_hypot(m.v_.get(), z.re.get(), z.im.get(), MPFR_RNDU);
  return m;
}

Mag Mag::l1_upper(const ApComplex& z) { return abs_upper(z.re) + abs_upper(z.im); }

Mag Mag::abs_lower(const ApComplex& z) {
  Mag m;
  mpfr_hypot(m.v_.get(), z.re.get(), z.im.get(), MPFR_RNDD);
  return m;
}

Mag Mag::unit_roundoff(Prec bits) {
  Mag m;
  mpfr_set_ui_2exp(m.v_.get(), 1, -static_cast<long>(bits), MPFR_RNDU);
  return m;
}

Mag operator+(const Mag& a, const Mag& b) {
  Mag m;
  mpfr_add(m.v_.get(), a.v_.get(), b.v_.get(), MPFR_RNDU);
  return m;
}

Mag operator*(const Mag& a, const Mag& b) {
  Mag m;
  mpfr_mul(m.v_.get(), a.v_.get(), b.v_.get(), MPFR_RNDU);
  return m;
}

Mag Mag::div_upper(const Mag& a, const Mag& b) {
  Mag m;
  mpfr_div(m.v_.get(), a.v_.get(), b.v_.get(), MPFR_RNDU);
  return m;
}

Mag Mag::sub_lower(const Mag& a, const Mag& b) {
  Mag m;
  mpfr_sub(m.v_.get(), a.v_.get(), b.v_.get(), MPFR_RNDD);
  if (m.v_.sign() < 0) mpfr_set_zero(m.v_.get(), 1);
  return m;
}

Mag Mag::mul_lower(const Mag& a, const Mag& b) {
  Mag m;
  mpfr_mul(m.v_.get(), a.v_.get(), b.v_.get(), MPFR_RNDD);
  return m;
}

Mag Mag::pow_upper(const Mag& a, unsigned long e) {
  Mag m;
  mpfr_pow_ui(m.v_.get(), a.v_.get(), e, MPFR_RNDU);
  return m;
}

Mag Mag::pow_lower(const Mag& a, unsigned long e) {
  Mag m;
  mpfr_pow_ui(m.v_.get(), a.v_.get(), e, MPFR_RNDD);
  return m;
}

double Mag::log2() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  const double mant = mpfr_get_d_2exp(&exp, v_.get(), MPFR_RNDN);
  return std::log2(mant) + static_cast<double>(exp);
}

Mag max(const Mag& a, const Mag& b) { return a < b ? b : a; }
Mag min(const Mag& a, const Mag& b) { return a < b ? a : b; }

ComplexBall ComplexBall::exact_integer(Prec prec, long value) {
  ComplexBall b(prec);
  if (mpfr_set_si(b.mid.re.get(), value, MPFR_RNDN) != 0) {
    b.rad = Mag::unit_roundoff(prec) * Mag::abs_upper(b.mid.re);
  }
  return b;
}

namespace {

// Midpoint rounding error of a correctly rounded complex result: each
// component is off by at most half an ulp <= 2^-p |component|.
Mag rounding_error(const ApComplex& computed) {
  return Mag::unit_roundoff(computed.prec()) * Mag::l1_upper(computed);
}

Prec result_prec(const ComplexBall& a, const ComplexBall& b) { return std::max(a.prec(), b.prec()); }

}  // namespace

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
  ComplexBall out(a.mid + b.mid, a.rad + b.rad);
  out.rad = out.rad + rounding_error(out.mid);
  return out;
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
  ComplexBall out(a.mid - b.mid, a.rad + b.rad);
  out.rad = out.rad + rounding_error(out.mid);
  return out;
}

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
  // |(a+s)(b+t) - ab| <= |a||t| + |b||s| + |s||t|
  const Mag abs_a = Mag::abs_upper(a.mid);
  const Mag abs_b = Mag::abs_upper(b.mid);
  ComplexBall out(a.mid * b.mid, abs_a * b.rad + abs_b * a.rad + a.rad * b.rad);
  out.rad = out.rad + rounding_error(out.mid);
  return out;
}

ComplexBall inverse(const ComplexBall& b) {
  const Mag lo = Mag::abs_lower(b.mid);
  const Mag gap = Mag::sub_lower(lo, b.rad);
  if (gap.is_zero()) throw PrecisionInsufficientError("division by a ball that contains zero");
  ApComplex one(b.prec());
  mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
  ComplexBall out(b.prec());
  out.mid = one / b.mid;
  // |1/(b+t) - 1/b| <= |t| / (|b| (|b| - |t|)); the quotient itself carries
  // three roundings (denominator, two component divisions), so 4u covers it.
  const Mag propagated = Mag::div_upper(b.rad, Mag::mul_lower(lo, gap));
  const Mag four(4.0);
  out.rad = propagated + four * rounding_error(out.mid);
  return out;
}

ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) {
  ComplexBall inv = inverse(b);
  if (inv.prec() < result_prec(a, b)) inv.mid.round_to(result_prec(a, b));
  return a * inv;
}

ComplexBall pow(const ComplexBall& z, unsigned long e) {
  ComplexBall result = ComplexBall::exact_integer(z.prec(), 1);
  ComplexBall base = z;
  while (e != 0) {
    if (e & 1ul) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

}  // namespace kbonacci
