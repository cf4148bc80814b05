#include "kbonacci/ap.hpp"

#include <algorithm>
#include <cmath>

#include "kbonacci/errors.hpp"

namespace kbonacci {

ApReal::ApReal(Prec prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

ApReal::ApReal(Prec prec, long value) {
  mpfr_init2(v_, prec);
  mpfr_set_si(v_, value, MPFR_RNDN);
}

ApReal::ApReal(Prec prec, double value) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, value, MPFR_RNDN);
}

ApReal::ApReal(Prec prec, const char* decimal) {
  mpfr_init2(v_, prec);
  if (mpfr_set_str(v_, decimal, 10, MPFR_RNDN) != 0) {
    mpfr_clear(v_);
    throw InvalidArgumentError(std::string("not a decimal number: ") + decimal);
  }
}

ApReal::~ApReal() {
  // Moved-from objects keep a valid (minimal) mpfr_t, so clearing is always safe.
  mpfr_clear(v_);
}

ApReal::ApReal(const ApReal& other) {
  mpfr_init2(v_, other.prec());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

ApReal::ApReal(ApReal&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

ApReal& ApReal::operator=(const ApReal& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.prec());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

ApReal& ApReal::operator=(ApReal&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

void ApReal::round_to(Prec prec) { mpfr_prec_round(v_, prec, MPFR_RNDN); }

std::string ApReal::to_decimal(int digits, mpfr_rnd_t rnd) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  char* buf = nullptr;
  const int len = mpfr_asprintf(&buf, "%.*R*e", std::max(digits - 1, 0), rnd, v_);
  if (len < 0) throw Error("mpfr_asprintf failed");
  std::string out(buf, static_cast<std::size_t>(len));
  mpfr_free_str(buf);
  return out;
}

namespace {
Prec max_prec(const ApReal& a, const ApReal& b) { return std::max(a.prec(), b.prec()); }

void widen(ApReal& a, Prec prec) {
  if (a.prec() < prec) mpfr_prec_round(a.get(), prec, MPFR_RNDN);
}
}  // namespace

ApReal& ApReal::operator+=(const ApReal& rhs) {
  widen(*this, max_prec(*this, rhs));
  mpfr_add(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

ApReal& ApReal::operator-=(const ApReal& rhs) {
  widen(*this, max_prec(*this, rhs));
  mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

ApReal& ApReal::operator*=(const ApReal& rhs) {
  widen(*this, max_prec(*this, rhs));
  mpfr_mul(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

ApReal& ApReal::operator/=(const ApReal& rhs) {
  widen(*this, max_prec(*this, rhs));
  mpfr_div(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

ApReal ApReal::operator-() const {
  ApReal out(*this);
  mpfr_neg(out.v_, out.v_, MPFR_RNDN);
  return out;
}

ApReal abs(const ApReal& x) {
  ApReal out(x);
  mpfr_abs(out.get(), out.get(), MPFR_RNDN);
  return out;
}

ApReal sqrt(const ApReal& x) {
  ApReal out(x.prec());
  mpfr_sqrt(out.get(), x.get(), MPFR_RNDN);
  return out;
}

ApReal hypot(const ApReal& x, const ApReal& y) {
  ApReal out(max_prec(x, y));
  mpfr_hypot(out.get(), x.get(), y.get(), MPFR_RNDN);
  return out;
}

int decimal_digits_for(Prec prec) {
  return static_cast<int>(std::ceil(static_cast<double>(prec) * 0.30102999566398120)) + 1;
}

ApComplex& ApComplex::operator+=(const ApComplex& rhs) {
  re += rhs.re;
  im += rhs.im;
  return *this;
}

ApComplex& ApComplex::operator-=(const ApComplex& rhs) {
  re -= rhs.re;
  im -= rhs.im;
  return *this;
}

ApComplex& ApComplex::operator*=(const ApComplex& rhs) {
  const Prec p = std::max(prec(), rhs.prec());
  ApReal r(p), i(p);
  // re = a.re*b.re - a.im*b.im, im = a.re*b.im + a.im*b.re, each correctly rounded.
  mpfr_fmms(r.get(), re.get(), rhs.re.get(), im.get(), rhs.im.get(), MPFR_RNDN);
  mpfr_fmma(i.get(), re.get(), rhs.im.get(), im.get(), rhs.re.get(), MPFR_RNDN);
  re = std::move(r);
  im = std::move(i);
  return *this;
}

ApComplex& ApComplex::operator/=(const ApComplex& rhs) {
  const Prec p = std::max(prec(), rhs.prec());
  ApReal den(p), r(p), i(p);
  mpfr_fmma(den.get(), rhs.re.get(), rhs.re.get(), rhs.im.get(), rhs.im.get(), MPFR_RNDN);
  mpfr_fmma(r.get(), re.get(), rhs.re.get(), im.get(), rhs.im.get(), MPFR_RNDN);
  mpfr_fmms(i.get(), im.get(), rhs.re.get(), re.get(), rhs.im.get(), MPFR_RNDN);
  re = r / den;
  im = i / den;
  return *this;
}

ApComplex conj(const ApComplex& z) { return ApComplex(z.re, -z.im); }

ApReal abs(const ApComplex& z) { return hypot(z.re, z.im); }

ApComplex pow(const ApComplex& z, unsigned long e) {
  ApComplex result(z.prec());
  mpfr_set_ui(result.re.get(), 1, MPFR_RNDN);
  ApComplex base = z;
  while (e != 0) {
    if (e & 1ul) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return result;
}

}  // namespace kbonacci
