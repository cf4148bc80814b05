#include "kbonacci/polynomial.hpp"

#include <cstddef>
#include <string>

#include "kbonacci/errors.hpp"
#include "kbonacci/recurrence.hpp"

namespace kbonacci {

int degree(const IntPoly& p) {
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] != 0) return static_cast<int>(i);
  }
  return -1;
}

IntPoly normalized(IntPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

IntPoly multiply(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return normalized(std::move(out));
}

IntPoly derivative(const IntPoly& p) {
  if (p.size() <= 1) return {};
  IntPoly out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * static_cast<unsigned long>(i);
  return normalized(std::move(out));
}

mpq_class evaluate(const IntPoly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + mpq_class(p[i]);
  return acc;
}

CharPoly build_char_poly(int k) {
  require_order(k);
  CharPoly cp;
  cp.k = k;
  cp.coeffs.assign(static_cast<std::size_t>(k) + 1, mpz_class(-1));
  cp.coeffs.back() = 1;
  return cp;
}

IntPoly auxiliary_poly(int k) {
  require_order(k);
  IntPoly closed(static_cast<std::size_t>(k) + 2);
  closed[0] = 1;
  closed[static_cast<std::size_t>(k)] = -2;
  closed[static_cast<std::size_t>(k) + 1] = 1;
  const IntPoly product = multiply(IntPoly{-1, 1}, build_char_poly(k).coeffs);
  if (product != closed) throw Error("auxiliary polynomial identity failed for k=" + std::to_string(k));
  return closed;
}

IntMatrix sylvester_matrix(const IntPoly& a, const IntPoly& b) {
  const int m = degree(a);
  const int n = degree(b);
  if (m < 1 || n < 1) throw DimensionError("Sylvester matrix needs two non-constant polynomials");
  const auto size = static_cast<std::size_t>(m + n);
  IntMatrix s(size, size);
  for (int row = 0; row < n; ++row) {
    for (int i = 0; i <= m; ++i) s(static_cast<std::size_t>(row), static_cast<std::size_t>(row + i)) = a[static_cast<std::size_t>(m - i)];
  }
  for (int row = 0; row < m; ++row) {
    for (int i = 0; i <= n; ++i) s(static_cast<std::size_t>(n + row), static_cast<std::size_t>(row + i)) = b[static_cast<std::size_t>(n - i)];
  }
  return s;
}

mpz_class resultant(const IntPoly& a, const IntPoly& b) {
  return bareiss_determinant(sylvester_matrix(normalized(a), normalized(b)));
}

DiscriminantCertificate discriminant_certificate(int k) {
  const CharPoly cp = build_char_poly(k);
  const mpz_class res = resultant(cp.coeffs, derivative(cp.coeffs));
  DiscriminantCertificate cert;
  cert.k = k;
  // Leading coefficient is 1, so only the sign convention remains.
  const long long pairs = static_cast<long long>(k) * (k - 1) / 2;
  cert.discriminant = (pairs % 2 == 0) ? res : mpz_class(-res);
  cert.nonzero = cert.discriminant != 0;
  return cert;
}

bool critical_points_avoid_char_roots(int k) {
  const IntPoly aux = auxiliary_poly(k);
  const IntPoly daux = derivative(aux);
  // d/dx (x^(k+1) - 2x^k + 1) = x^(k-1) ((k+1) x - 2k)
  mpq_class nonzero_critical(mpz_class(2 * static_cast<long>(k)), mpz_class(static_cast<long>(k) + 1));
  nonzero_critical.canonicalize();
  if (evaluate(daux, 0) != 0 || evaluate(daux, nonzero_critical) != 0) return false;
  const IntPoly p = build_char_poly(k).coeffs;
  return evaluate(p, 0) != 0 && evaluate(p, nonzero_critical) != 0;
}

}  // namespace kbonacci
