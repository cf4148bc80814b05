#include <gmpxx.h>

#include "doctest.h"
#include "kbonacci/ap.hpp"
#include "kbonacci/ball.hpp"
#include "kbonacci/errors.hpp"

using namespace kbonacci;

namespace {

mpq_class exact(const ApReal& x) {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), x.get());
  return q;
}

// |mid - (re + i im)| <= rad, decided in exact rational arithmetic.
bool contains(const ComplexBall& b, const mpq_class& re, const mpq_class& im) {
  const mpq_class dr = exact(b.mid.re) - re;
  const mpq_class di = exact(b.mid.im) - im;
  const mpq_class r = exact(b.rad.value());
  return dr * dr + di * di <= r * r;
}

ComplexBall ball(Prec prec, const char* re, const char* im) {
  ComplexBall b(prec);
  b.mid = ApComplex(ApReal(prec, re), ApReal(prec, im));
  return b;
}

}  // namespace

TEST_CASE("ApReal basics") {
  const ApReal a(128, 3);
  const ApReal b(128, "0.5");
  CHECK((a * b).to_double() == 1.5);
  CHECK((a - b).to_double() == 2.5);
  CHECK((a / b).to_double() == 6.0);
  CHECK(sqrt(ApReal(128, 4)).to_double() == 2.0);
  CHECK(a > b);
  CHECK(ApReal(64, -2).sign() < 0);
  CHECK(ApReal(64, 0).is_zero());
  // mixed precision widens to the larger operand
  CHECK((ApReal(64, 1) + ApReal(200, 1)).prec() == 200);
  CHECK(ApReal(128, "1.25").to_decimal(3) == "1.25e+00");
  CHECK(decimal_digits_for(128) == 40);
}

TEST_CASE("ApComplex arithmetic") {
  ApComplex z(ApReal(128, 1), ApReal(128, 1));
  const ApComplex p = pow(z, 10);
  CHECK(p.re.is_zero());
  CHECK(p.im.to_double() == 32.0);
  ApComplex q = z;
  q /= z;
  CHECK(q.re.to_double() == doctest::Approx(1.0).epsilon(1e-30));
  CHECK(abs(conj(z) - z).to_double() == doctest::Approx(2.0));
}

TEST_CASE("Mag rounds upward") {
  const Mag third = Mag::div_upper(Mag(1.0), Mag(3.0));
  CHECK(exact(third.value()) >= mpq_class(1, 3));
  const Mag third_low = Mag::sub_lower(Mag(1.0), Mag::div_upper(Mag(2.0), Mag(3.0)));
  CHECK(exact(third_low.value()) <= mpq_class(1, 3));
  CHECK(Mag::sub_lower(Mag(1.0), Mag(2.0)).is_zero());
  CHECK(exact(Mag::abs_upper(ApReal(256, "0.1")).value()) >= exact(ApReal(256, "0.1")));
  CHECK(exact(Mag::unit_roundoff(100).value()) == mpq_class(1) / (mpq_class(mpz_class(1) << 100)));
  CHECK(Mag::pow_upper(Mag(2.0), 10) == Mag(1024.0));
  CHECK(Mag(0.25).log2() == -2.0);
  CHECK_THROWS(Mag(-1.0));
  CHECK(max(Mag(1.0), Mag(2.0)) == Mag(2.0));
}

TEST_CASE("ball operations contain the exact result") {
  // 1/3 is not representable; the ball must still enclose it after arithmetic.
  const Prec prec = 96;
  const ComplexBall one = ComplexBall::exact_integer(prec, 1);
  const ComplexBall three = ComplexBall::exact_integer(prec, 3);
  const ComplexBall third = one / three;
  CHECK(contains(third, mpq_class(1, 3), 0));
  CHECK(contains(third * three, 1, 0));
  const ComplexBall s = third + third + third - one;
  CHECK(contains(s, 0, 0));
  CHECK_FALSE(s.excludes_zero());

  const ComplexBall z = ball(prec, "0.7", "-1.3");
  const mpq_class zr = exact(z.mid.re), zi = exact(z.mid.im);
  // (zr + i zi)^7 in exact arithmetic
  mpq_class pr = 1, pi = 0;
  for (int i = 0; i < 7; ++i) {
    const mpq_class nr = pr * zr - pi * zi;
    pi = pr * zi + pi * zr;
    pr = nr;
  }
  CHECK(contains(pow(z, 7), pr, pi));
  const mpq_class den = zr * zr + zi * zi;
  CHECK(contains(inverse(z), zr / den, -zi / den));
}

TEST_CASE("inverse of a ball around zero is refused") {
  ComplexBall b = ComplexBall::exact_integer(64, 0);
  CHECK_THROWS_AS(inverse(b), PrecisionInsufficientError);
  b = ComplexBall::exact_integer(64, 1);
  b.rad = Mag(2.0);
  CHECK_THROWS_AS(inverse(b), PrecisionInsufficientError);
}
