#include "kbonacci/binet.hpp"

#include <cmath>
#include <string>

#include "kbonacci/errors.hpp"

namespace kbonacci {

namespace {

constexpr Prec kTailPrec = 128;

std::string cell(int k, std::int64_t n) {
  return "k=" + std::to_string(k) + " n=" + std::to_string(n);
}

ComplexBall term_ball(const std::vector<ComplexBall>& balls, std::size_t i, std::int64_t n) {
  const ComplexBall& phi = balls[i];
  ComplexBall denom = ComplexBall::exact_integer(phi.prec(), 1);
  for (std::size_t j = 0; j < balls.size(); ++j) {
    if (j != i) denom = denom * (phi - balls[j]);
  }
  return pow(phi, static_cast<unsigned long>(n)) / denom;
}

// Nearest integer to x, and an upper bound on |x - that integer|.
BigInt nearest_integer(const ApReal& x, Mag& distance) {
  BigInt m;
  mpfr_get_z(m.get_mpz_t(), x.get(), MPFR_RNDN);
  ApReal d(x.prec());
  mpfr_sub_z(d.get(), x.get(), m.get_mpz_t(), MPFR_RNDA);
  distance = Mag::abs_upper(d);
  return m;
}

struct TailParameters {
  Mag rho;                // bound on |phi_i|, i >= 1
  Mag coefficient;        // (k-1) / delta^(k-1)
};

TailParameters tail_parameters(int k) {
  const RootSet rs = find_roots(k, kTailPrec);
  root_separation(rs);
  const std::vector<Mag> radii = inclusion_radii(rs);
  TailParameters tp;
  for (std::size_t i = 1; i < rs.roots.size(); ++i) {
    tp.rho = max(tp.rho, Mag::abs_upper(rs.roots[i]) + radii[i]);
  }
  if (!(tp.rho < Mag(1.0))) throw Error("non-dominant roots not certified inside the unit disk for k=" + std::to_string(k));
  const Mag delta_pow = Mag::pow_lower(rs.min_separation, static_cast<unsigned long>(k - 1));
  tp.coefficient = Mag::div_upper(Mag(static_cast<double>(k - 1)), delta_pow);
  return tp;
}

Mag tail_at(const TailParameters& tp, std::int64_t n) {
  return tp.coefficient * Mag::pow_upper(tp.rho, static_cast<unsigned long>(n));
}

std::int64_t min_index(const TailParameters& tp) {
  const Mag half(0.5);
  const double log_rho = tp.rho.log2();
  const double need = (Mag(2.0) * tp.coefficient).log2();
  std::int64_t n = need <= 0 ? 0 : static_cast<std::int64_t>(std::ceil(need / -log_rho));
  while (n > 0 && tail_at(tp, n - 1) < half) --n;
  while (!(tail_at(tp, n) < half)) ++n;
  return n;
}

}  // namespace

Prec required_precision_estimate(int k, std::int64_t n) {
  require_order(k);
  require_index(n);
  const double growth = static_cast<double>(n) * std::log2(dominant_root_estimate(k));
  return static_cast<Prec>(std::ceil(growth)) + 32 * static_cast<Prec>(k) + 64;
}

std::vector<ComplexBall> binet_term_balls(const RootSet& rs, std::int64_t n) {
  require_index(n);
  const std::vector<ComplexBall> balls = root_balls(rs);
  std::vector<ComplexBall> terms;
  terms.reserve(balls.size());
  for (std::size_t i = 0; i < balls.size(); ++i) terms.push_back(term_ball(balls, i, n));
  return terms;
}

BinetTermBreakdown binet_breakdown(int k, std::int64_t n, Prec prec_bits) {
  require_order(k);
  require_index(n);
  const RootSet rs = find_roots(k, prec_bits);
  root_separation(rs);
  const std::vector<ComplexBall> terms = binet_term_balls(rs, n);
  BinetTermBreakdown out;
  out.k = k;
  out.n = n;
  out.prec_bits = prec_bits;
  ComplexBall sum = ComplexBall::exact_integer(prec_bits, 0);
  for (const ComplexBall& t : terms) {
    out.terms.push_back(t.mid);
    out.term_radii.push_back(t.rad);
    sum = sum + t;
  }
  out.sum = sum.mid;
  out.error_radius = sum.rad;
  return out;
}

BinetResult binet_eval(int k, std::int64_t n, const BinetOptions& options) {
  require_order(k);
  require_index(n);
  Prec prec = options.start_prec > 0 ? options.start_prec : required_precision_estimate(k, n);
  if (prec < kMinPrecBits) prec = kMinPrecBits;
  const Mag half(0.5);
  for (int escalation = 0; escalation <= options.max_escalations; ++escalation, prec *= 2) {
    BinetTermBreakdown b;
    try {
      b = binet_breakdown(k, n, prec);
    } catch (const PrecisionInsufficientError&) {
      continue;
    } catch (const ConvergenceError&) {
      continue;
    }
    if (!(b.error_radius < half)) continue;
    Mag distance;
    BigInt candidate = nearest_integer(b.sum.re, distance);
    if (distance <= b.error_radius && Mag::abs_upper(b.sum.im) <= b.error_radius) {
      BinetResult r;
      r.k = k;
      r.n = n;
      r.value = std::move(candidate);
      r.error_radius = b.error_radius;
      r.prec_bits_used = prec;
      r.escalations = escalation;
      return r;
    }
  }
  throw PrecisionExhaustedError("Binet evaluation not certified after " + std::to_string(options.max_escalations) +
                                " escalations at " + cell(k, n));
}

Mag dominant_tail_bound(int k, std::int64_t n) {
  require_order(k);
  require_index(n);
  return tail_at(tail_parameters(k), n);
}

std::int64_t dominant_min_index(int k) {
  require_order(k);
  return min_index(tail_parameters(k));
}

BigInt dominant_term_round(int k, std::int64_t n) {
  require_order(k);
  require_index(n);
  const TailParameters tp = tail_parameters(k);
  const std::int64_t n_min = min_index(tp);
  if (n < n_min) {
    throw TailBoundError("dominant term alone is not certified below n_min=" + std::to_string(n_min) + " at " +
                         cell(k, n));
  }
  const Mag tail = tail_at(tp, n);
  const Mag half(0.5);
  Prec prec = required_precision_estimate(k, n);
  for (int escalation = 0; escalation <= 20; ++escalation, prec *= 2) {
    RootSet rs;
    try {
      rs = find_roots(k, prec);
      root_separation(rs);
    } catch (const PrecisionInsufficientError&) {
      continue;
    } catch (const ConvergenceError&) {
      continue;
    }
    const std::vector<ComplexBall> balls = root_balls(rs);
    const ComplexBall dominant = term_ball(balls, kDominantIndex, n);
    if (!(dominant.rad + tail < half)) continue;
    Mag distance;
    BigInt value = nearest_integer(dominant.mid.re, distance);
    return value;
  }
  throw PrecisionExhaustedError("dominant term not certified at " + cell(k, n));
}

nlohmann::ordered_json to_json(const BinetResult& r) {
  nlohmann::ordered_json j;
  j["k"] = r.k;
  j["n"] = r.n;
  j["value"] = r.value.get_str();
  j["error_radius"] = r.error_radius.to_decimal(decimal_digits_for(Mag::kBits));
  j["prec_bits_used"] = r.prec_bits_used;
  j["escalations"] = r.escalations;
  return j;
}

}  // namespace kbonacci
