#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"
#include "kbonacci/exact_matrix.hpp"

namespace kbonacci {

/// Canonical rational: denominator > 0, gcd(num, den) = 1 (gmpxx arithmetic
/// keeps results canonical; make_rational canonicalizes explicit fractions).
using ExactRational = mpq_class;
using NodeVector = std::vector<ExactRational>;
using ValueVector = std::vector<ExactRational>;
using ExactMatrix = Matrix<ExactRational>;

/// num/den in lowest terms. Throws DivisionByZeroError for den == 0.
ExactRational make_rational(const mpz_class& num, const mpz_class& den);

/// prod_{m < n} (x_n - x_m). Zero when two nodes coincide.
ExactRational vdm_product(const NodeVector& xs);

/// Product formula with node i (0-based) removed. Throws IndexOutOfRangeError.
ExactRational vdm_minor_product(const NodeVector& xs, std::size_t i);

/// Row i = (1, x_i, ..., x_i^(k-1)).
ExactMatrix vandermonde_matrix(const NodeVector& xs);

/// Row i = (1, x_i, ..., x_i^(k-2), f_i).
ExactMatrix bordered_matrix(const NodeVector& xs, const ValueVector& fs);

/// Exact determinant: rows are scaled to integers, eliminated with Bareiss,
/// and the scaling divided back out. Throws DimensionError if not square.
ExactRational det_exact(const ExactMatrix& m);

/// sum_i f_i / prod_{j != i} (x_i - x_j). Throws DivisionByZeroError on
/// coincident nodes, DimensionError on a length mismatch.
ExactRational lemma_lhs(const NodeVector& xs, const ValueVector& fs);

/// det(bordered_matrix(xs, fs)) / vdm_product(xs).
ExactRational lemma_rhs(const NodeVector& xs, const ValueVector& fs);

/// prod_{m<n}(x_n - x_m) == (-1)^(k-1-i) V_i prod_{j != i}(x_i - x_j), i 0-based.
bool sign_identity_check(const NodeVector& xs, std::size_t i);

/// det(bordered) == sum_i (-1)^(k-1-i) f_i V_i (expansion along the last column).
bool cofactor_expansion_check(const NodeVector& xs, const ValueVector& fs);

/// Random instance with pairwise distinct nodes; numerators and denominators
/// bounded by 10^6 in magnitude. Deterministic in (seed, k).
struct LemmaInstance {
  std::uint64_t seed = 0;
  int k = 0;
  NodeVector nodes;
  ValueVector values;
};

LemmaInstance sample_instance(std::uint64_t seed, int k);

/// Per-instance seed derived from a base seed, the order and the trial number.
std::uint64_t instance_seed(std::uint64_t base_seed, int k, std::uint64_t trial);

struct LemmaRecord {
  LemmaInstance instance;
  bool lemma = false;          // lemma_lhs == lemma_rhs
  bool sign_identity = false;  // holds for every i
  bool cofactor = false;
  bool passed() const { return lemma && sign_identity && cofactor; }
};

LemmaRecord check_instance(const LemmaInstance& inst);

/// One JSON-lines record: seed, k, nodes, values and the three verdicts.
nlohmann::ordered_json to_json(const LemmaRecord& r);

}  // namespace kbonacci
