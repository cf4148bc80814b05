#include "kbonacci/roots.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>

#include "kbonacci/errors.hpp"
#include "kbonacci/recurrence.hpp"

namespace kbonacci {

namespace {

using Cd = std::complex<double>;

// p(z) and p'(z) for x^k - x^(k-1) - ... - 1 by Horner.
void eval_char_poly(int k, const Cd& z, Cd& p, Cd& dp) {
  p = 1.0;
  dp = 0.0;
  for (int j = 0; j < k; ++j) {
    dp = dp * z + p;
    p = p * z - 1.0;
  }
}

void eval_char_poly(int k, const ApReal& z, ApReal& p, ApReal& dp) {
  p = ApReal(z.prec(), 1);
  dp = ApReal(z.prec(), 0);
  for (int j = 0; j < k; ++j) {
    dp *= z;
    dp += p;
    p *= z;
    mpfr_sub_ui(p.get(), p.get(), 1, MPFR_RNDN);
  }
}

void eval_char_poly(int k, const ApComplex& z, ApComplex& p, ApComplex& dp) {
  p = ApComplex(ApReal(z.prec(), 1), ApReal(z.prec(), 0));
  dp = ApComplex(z.prec());
  for (int j = 0; j < k; ++j) {
    dp *= z;
    dp += p;
    p *= z;
    mpfr_sub_ui(p.re.get(), p.re.get(), 1, MPFR_RNDN);
  }
}

double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<Cd> initial_points(int k) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(k));
  std::vector<Cd> z(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const double angle = 2.0 * std::numbers::pi * (j + 0.5 * unit_interval(rng)) / k + 0.25;
    z[static_cast<std::size_t>(j)] = std::polar(1.5, angle);
  }
  return z;
}

enum class Sweep { kAberth, kDurandKerner };

struct SeedOutcome {
  bool converged = false;
  double best_residual = HUGE_VAL;
};

SeedOutcome simultaneous_iteration(int k, std::vector<Cd>& z, Sweep kind) {
  SeedOutcome out;
  const int cap = 200 * k;
  for (int it = 0; it < cap; ++it) {
    double max_step = 0;
    double max_residual = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      Cd p, dp;
      eval_char_poly(k, z[i], p, dp);
      max_residual = std::max(max_residual, std::abs(p));
      Cd w;
      if (kind == Sweep::kAberth) {
        Cd s = 0;
        for (std::size_t j = 0; j < z.size(); ++j) {
          if (j != i) s += 1.0 / (z[i] - z[j]);
        }
        const Cd ratio = p / dp;
        w = ratio / (1.0 - ratio * s);
      } else {
        Cd denom = 1;
        for (std::size_t j = 0; j < z.size(); ++j) {
          if (j != i) denom *= z[i] - z[j];
        }
        w = p / denom;
      }
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return out;
      z[i] -= w;
      max_step = std::max(max_step, std::abs(w) / std::max(1.0, std::abs(z[i])));
    }
    out.best_residual = std::min(out.best_residual, max_residual);
    if (max_step <= 1e-12) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

std::vector<Prec> newton_schedule(Prec target) {
  std::vector<Prec> steps;
  for (Prec p = target; p > 60; p = p / 2 + 8) steps.push_back(p);
  std::reverse(steps.begin(), steps.end());
  return steps;
}

// Newton refinement of one root with doubling precision up to target.
template <class T>
T polish(int k, T z, Prec target) {
  T p(target), dp(target);
  for (Prec prec : newton_schedule(target)) {
    z.round_to(prec);
    eval_char_poly(k, z, p, dp);
    z -= p / dp;
  }
  z.round_to(target);
  const ApReal one(target, 1);
  ApReal tol(target);
  for (int extra = 0; extra < 10; ++extra) {
    eval_char_poly(k, z, p, dp);
    const T step = p / dp;
    z -= step;
    // |step| <= 2^-(target-4) * max(1, |z|)
    ApReal scale = abs(z);
    if (scale < one) scale = one;
    mpfr_mul_2si(tol.get(), scale.get(), -static_cast<long>(target - 4), MPFR_RNDN);
    if (!(abs(step) > tol)) return z;
  }
  eval_char_poly(k, z, p, dp);
  throw ConvergenceError("Newton polishing stalled for k=" + std::to_string(k), abs(p).to_decimal(6));
}

bool canonical_less(const ApComplex& a, const ApComplex& b) {
  const int c = compare(a.re, b.re);
  if (c != 0) return c > 0;
  return a.im < b.im;
}

Mag distance_lower(const ApComplex& a, const ApComplex& b) {
  const ApComplex d = a - b;
  return Mag::sub_lower(Mag::abs_lower(d), Mag::unit_roundoff(d.prec()) * Mag::l1_upper(d));
}

std::string best_residual_text(double r) {
  return std::isfinite(r) ? ApReal(kMinPrecBits, r).to_decimal(6) : std::string("inf");
}

}  // namespace

ComplexBall char_poly_ball(int k, const ComplexBall& z) {
  const ComplexBall one = ComplexBall::exact_integer(z.prec(), 1);
  ComplexBall acc = one;
  for (int j = 0; j < k; ++j) acc = acc * z - one;
  return acc;
}

RootSet find_roots(int k, Prec prec_bits) {
  require_order(k);
  if (prec_bits < kMinPrecBits) {
    throw InvalidArgumentError("prec_bits must be at least 64, got " + std::to_string(prec_bits));
  }

  std::vector<Cd> seeds = initial_points(k);
  SeedOutcome seeded = simultaneous_iteration(k, seeds, Sweep::kAberth);
  if (!seeded.converged) {
    const double aberth_best = seeded.best_residual;
    seeds = initial_points(k);
    seeded = simultaneous_iteration(k, seeds, Sweep::kDurandKerner);
    seeded.best_residual = std::min(seeded.best_residual, aberth_best);
    if (!seeded.converged) {
      throw ConvergenceError("simultaneous iteration did not converge for k=" + std::to_string(k),
                             best_residual_text(seeded.best_residual));
    }
  }

  // Real roots stay on the axis; non-real roots are polished in the upper half
  // plane and mirrored, so conjugate symmetry is exact.
  std::vector<double> real_seeds;
  std::vector<Cd> upper_seeds;
  int lower_count = 0;
  for (const Cd& z : seeds) {
    const double tol = 1e-6 * std::max(1.0, std::abs(z));
    if (std::abs(z.imag()) <= tol) {
      real_seeds.push_back(z.real());
    } else if (z.imag() > 0) {
      upper_seeds.push_back(z);
    } else {
      ++lower_count;
    }
  }
  if (lower_count != static_cast<int>(upper_seeds.size())) {
    throw ConvergenceError("roots did not pair into conjugates for k=" + std::to_string(k),
                           best_residual_text(seeded.best_residual));
  }

  const Prec target = prec_bits + 32 + static_cast<Prec>(std::bit_width(static_cast<unsigned>(k)));
  RootSet rs;
  rs.k = k;
  rs.prec_bits = prec_bits;
  rs.roots.reserve(static_cast<std::size_t>(k));
  for (double x : real_seeds) {
    ApReal r = polish(k, ApReal(53, x), target);
    r.round_to(prec_bits);
    rs.roots.emplace_back(std::move(r), ApReal(prec_bits, 0));
  }
  for (const Cd& z : upper_seeds) {
    ApComplex c = polish(k, ApComplex(ApReal(53, z.real()), ApReal(53, z.imag())), target);
    c.round_to(prec_bits);
    rs.roots.push_back(conj(c));
    rs.roots.push_back(std::move(c));
  }
  std::sort(rs.roots.begin(), rs.roots.end(), canonical_less);

  for (const ApComplex& z : rs.roots) {
    const ComplexBall value = char_poly_ball(k, ComplexBall(z, Mag()));
    rs.max_residual = max(rs.max_residual, Mag::abs_upper(value.mid) + value.rad);
  }
  Mag allowed = Mag::unit_roundoff(prec_bits / 2) * Mag(static_cast<double>(k + 1));
  if (allowed < rs.max_residual) {
    throw ConvergenceError("residual bound not met for k=" + std::to_string(k) + " at " +
                               std::to_string(prec_bits) + " bits",
                           rs.max_residual.to_decimal(6));
  }

  rs.min_separation = Mag::sub_lower(min_pairwise_distance_lower(rs), Mag(2.0) * perturbation_bound(rs));
  return rs;
}

Mag min_pairwise_distance_lower(const RootSet& rs) {
  bool first = true;
  Mag best;
  for (std::size_t i = 0; i < rs.roots.size(); ++i) {
    for (std::size_t j = i + 1; j < rs.roots.size(); ++j) {
      const Mag d = distance_lower(rs.roots[i], rs.roots[j]);
      if (first || d < best) best = d;
      first = false;
    }
  }
  return best;
}

std::vector<Mag> inclusion_radii(const RootSet& rs) {
  const Mag scaled = Mag(static_cast<double>(rs.roots.size())) * rs.max_residual;
  std::vector<Mag> radii;
  radii.reserve(rs.roots.size());
  for (std::size_t i = 0; i < rs.roots.size(); ++i) {
    Mag prod(1.0);
    for (std::size_t j = 0; j < rs.roots.size(); ++j) {
      if (j != i) prod = Mag::mul_lower(prod, distance_lower(rs.roots[i], rs.roots[j]));
    }
    radii.push_back(Mag::div_upper(scaled, prod));
  }
  return radii;
}

Mag perturbation_bound(const RootSet& rs) {
  Mag bound;
  for (const Mag& r : inclusion_radii(rs)) bound = max(bound, r);
  return bound;
}

ApReal root_separation(const RootSet& rs) {
  if (rs.roots.size() < 2) throw InvalidArgumentError("root separation needs at least two roots");
  ApReal best = abs(rs.roots[0] - rs.roots[1]);
  for (std::size_t i = 0; i < rs.roots.size(); ++i) {
    for (std::size_t j = i + 1; j < rs.roots.size(); ++j) {
      ApReal d = abs(rs.roots[i] - rs.roots[j]);
      if (d < best) best = std::move(d);
    }
  }
  const Mag lower = min_pairwise_distance_lower(rs);
  const Mag bound = perturbation_bound(rs);
  if (lower.is_zero() || !bound.is_finite() || !(Mag(4.0) * bound < lower)) {
    throw PrecisionInsufficientError("root separation " + lower.to_decimal(6) +
                                     " does not exceed 4x perturbation bound " + bound.to_decimal(6));
  }
  return best;
}

std::vector<ComplexBall> root_balls(const RootSet& rs) {
  const std::vector<Mag> radii = inclusion_radii(rs);
  std::vector<ComplexBall> balls;
  balls.reserve(rs.roots.size());
  for (std::size_t i = 0; i < rs.roots.size(); ++i) balls.emplace_back(rs.roots[i], radii[i]);
  return balls;
}

nlohmann::ordered_json to_json(const RootSet& rs) {
  const int digits = decimal_digits_for(rs.prec_bits);
  nlohmann::ordered_json j;
  j["k"] = rs.k;
  j["prec_bits"] = rs.prec_bits;
  auto roots = nlohmann::ordered_json::array();
  for (const ApComplex& z : rs.roots) {
    nlohmann::ordered_json r;
    r["re"] = z.re.to_decimal(digits);
    r["im"] = z.im.to_decimal(digits);
    roots.push_back(std::move(r));
  }
  j["roots"] = std::move(roots);
  j["max_residual"] = rs.max_residual.to_decimal(digits, MPFR_RNDU);
  j["min_separation"] = rs.min_separation.to_decimal(digits, MPFR_RNDD);
  return j;
}

double dominant_root_estimate(int k) {
  require_order(k);
  // Newton on x^(k+1) - 2x^k + 1 from the right of the root: monotone descent.
  double x = 2.0;
  for (int it = 0; it < 200; ++it) {
    const double xk1 = std::pow(x, k - 1);
    const double q = xk1 * x * x - 2.0 * xk1 * x + 1.0;
    const double dq = (k + 1) * xk1 * x - 2.0 * k * xk1;
    const double next = x - q / dq;
    if (!(next < x)) break;
    x = next;
  }
  return x;
}

}  // namespace kbonacci
