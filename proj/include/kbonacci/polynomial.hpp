#pragma once

#include <vector>

#include <gmpxx.h>

#include "kbonacci/exact_matrix.hpp"

namespace kbonacci {

/// Integer polynomial, coefficients in ascending degree. Normalized form has no
/// trailing zero coefficients (the zero polynomial is empty).
using IntPoly = std::vector<mpz_class>;

int degree(const IntPoly& p);
IntPoly normalized(IntPoly p);
IntPoly multiply(const IntPoly& a, const IntPoly& b);
IntPoly derivative(const IntPoly& p);
/// Exact evaluation at a rational point.
mpq_class evaluate(const IntPoly& p, const mpq_class& x);

/// x^k - x^(k-1) - ... - x - 1.
struct CharPoly {
  int k = 0;
  IntPoly coeffs;  // [-1, ..., -1, 1], length k + 1
};

CharPoly build_char_poly(int k);

/// x^(k+1) - 2 x^k + 1, checked against (x - 1) * build_char_poly(k).
IntPoly auxiliary_poly(int k);

/// Sylvester matrix of a and b (both normalized, nonzero degree), rows built
/// from descending coefficients: deg(b) shifted copies of a, then deg(a) of b.
IntMatrix sylvester_matrix(const IntPoly& a, const IntPoly& b);

/// Resultant via Bareiss elimination on the Sylvester matrix.
mpz_class resultant(const IntPoly& a, const IntPoly& b);

struct DiscriminantCertificate {
  int k = 0;
  mpz_class discriminant;  // (-1)^(k(k-1)/2) res(p, p') / lc(p)
  bool nonzero = false;
};

/// Exact discriminant of the characteristic polynomial; nonzero iff its k roots
/// are pairwise distinct.
DiscriminantCertificate discriminant_certificate(int k);

/// Exact check of the derivative route: the critical points of the auxiliary
/// polynomial are 0 and 2k/(k+1), and neither is a root of the characteristic
/// polynomial, so no root of it can be repeated.
bool critical_points_avoid_char_roots(int k);

}  // namespace kbonacci
