#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "kbonacci/ap.hpp"
#include "kbonacci/ball.hpp"
#include "kbonacci/recurrence.hpp"
#include "kbonacci/roots.hpp"

namespace kbonacci {

/// Certified closed-form evaluation of F^(k)_n.
struct BinetResult {
  int k = 0;
  std::int64_t n = 0;
  BigInt value;
  /// Upper bound on |computed sum - value|; always < 1/2.
  Mag error_radius;
  Prec prec_bits_used = 0;
  int escalations = 0;
};

/// Per-root view of sum_i phi_i^n / prod_{j != i} (phi_i - phi_j).
struct BinetTermBreakdown {
  int k = 0;
  std::int64_t n = 0;
  Prec prec_bits = 0;
  std::vector<ApComplex> terms;
  std::vector<Mag> term_radii;
  ApComplex sum;
  /// Certified bound on |sum - exact sum|.
  Mag error_radius;
};

struct BinetOptions {
  /// Starting precision; 0 means required_precision_estimate(k, n).
  Prec start_prec = 0;
  int max_escalations = 20;
};

/// ceil(n log2(dominant root)) + 32k + 64.
Prec required_precision_estimate(int k, std::int64_t n);

/// Evaluates the closed form in ball arithmetic, doubling precision until the
/// real part pins down a unique integer and the imaginary part is consistent
/// with zero. Throws PrecisionExhaustedError past max_escalations doublings.
BinetResult binet_eval(int k, std::int64_t n, const BinetOptions& options = {});

/// Term balls phi_i^n / prod_{j != i}(phi_i - phi_j) for a validated root set,
/// in the root set's canonical order.
std::vector<ComplexBall> binet_term_balls(const RootSet& rs, std::int64_t n);

/// All k terms and their sum at a fixed precision; no rounding to integer.
BinetTermBreakdown binet_breakdown(int k, std::int64_t n, Prec prec_bits);

/// Bound on the non-dominant tail: (k-1) rho^n / delta^(k-1), where rho bounds
/// the moduli of the non-dominant roots and delta is the certified root
/// separation at 128 bits.
Mag dominant_tail_bound(int k, std::int64_t n);

/// Smallest n with dominant_tail_bound(k, n) < 1/2.
std::int64_t dominant_min_index(int k);

/// Nearest integer to the dominant term alone. Throws TailBoundError when
/// n < dominant_min_index(k).
BigInt dominant_term_round(int k, std::int64_t n);

/// { "k", "n", "value", "error_radius", "prec_bits_used", "escalations" }
nlohmann::ordered_json to_json(const BinetResult& r);

}  // namespace kbonacci
