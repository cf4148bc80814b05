#pragma once

#include <vector>

#include "json.hpp"
#include "kbonacci/ap.hpp"
#include "kbonacci/ball.hpp"

namespace kbonacci {

/// The k roots of x^k - x^(k-1) - ... - 1 at a fixed precision.
///
/// Roots are in canonical order: descending real part, ties broken by
/// ascending imaginary part. Non-real roots are stored as exact conjugate
/// pairs. max_residual bounds |p(root)| for every stored root (Horner
/// evaluation in ball arithmetic, so rounding is included); min_separation is
/// a lower bound on the distance between any two exact roots.
struct RootSet {
  int k = 0;
  Prec prec_bits = 0;
  std::vector<ApComplex> roots;
  Mag max_residual;
  Mag min_separation;
};

/// Finds all k roots. Seeds lie on a circle of radius 1.5 with a
/// deterministic angular jitter derived from k; Aberth-Ehrlich iteration (with
/// Durand-Kerner as fallback, cap 200k sweeps each) locates them, then each is
/// polished by Newton's method up to prec_bits plus guard bits and rounded.
///
/// Throws InvalidOrderError, InvalidArgumentError (prec_bits < 64) or
/// ConvergenceError when no iteration reaches
/// max_residual <= 2^-(prec_bits/2) * (k+1).
RootSet find_roots(int k, Prec prec_bits);

/// Ball enclosure of p(z) for the order-k characteristic polynomial.
ComplexBall char_poly_ball(int k, const ComplexBall& z);

/// Weierstrass inclusion radii k * max_residual / prod_{j != i} |z_i - z_j|.
/// When the resulting disks are pairwise disjoint each contains exactly one
/// exact root.
std::vector<Mag> inclusion_radii(const RootSet& rs);

/// Largest inclusion radius; how far any stored root may be from its exact root.
Mag perturbation_bound(const RootSet& rs);

/// Smallest pairwise distance between stored roots. Throws
/// PrecisionInsufficientError unless it exceeds 4 * perturbation_bound(rs),
/// which also proves the inclusion disks disjoint.
ApReal root_separation(const RootSet& rs);

/// Lower bound of the smallest pairwise distance between stored roots.
Mag min_pairwise_distance_lower(const RootSet& rs);

/// Root-set ball view: mid = stored root, rad = its inclusion radius.
std::vector<ComplexBall> root_balls(const RootSet& rs);

/// Index of the dominant (real, > 1) root in canonical order; always 0.
inline constexpr std::size_t kDominantIndex = 0;

/// { "k", "prec_bits", "roots": [{"re","im"}], "max_residual", "min_separation" }
/// with decimal strings carrying prec_bits-equivalent digits.
nlohmann::ordered_json to_json(const RootSet& rs);

/// Dominant root in double precision (Newton on the auxiliary polynomial).
double dominant_root_estimate(int k);

}  // namespace kbonacci
