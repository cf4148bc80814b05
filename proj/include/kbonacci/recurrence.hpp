#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace kbonacci {

using BigInt = mpz_class;

/// Throws InvalidOrderError unless k >= 2.
void require_order(int k);

/// Throws InvalidArgumentError for negative n.
void require_index(std::int64_t n);

/// Exact F^(k)_n with F_0 = ... = F_{k-2} = 0 and F_{k-1} = 1.
/// Sliding window over the last k values; O(n) additions.
BigInt kbonacci_recursive(int k, std::int64_t n);

/// Same value through binary powering of the companion matrix.
BigInt kbonacci_matrix(int k, std::int64_t n);

/// [F_start, ..., F_{start+count-1}].
std::vector<BigInt> kbonacci_window(int k, std::int64_t start, std::size_t count);

/// k x k integer matrix advancing the state (F_{n+k-1}, ..., F_n) by one step:
/// first row all ones, ones on the subdiagonal, zero elsewhere.
class CompanionMatrix {
 public:
  explicit CompanionMatrix(int k);

  int order() const noexcept { return k_; }
  const BigInt& at(int row, int col) const { return entries_[index(row, col)]; }

  CompanionMatrix operator*(const CompanionMatrix& rhs) const;
  CompanionMatrix pow(std::uint64_t e) const;

  static CompanionMatrix identity(int k);

 private:
  struct Uninitialized {};
  CompanionMatrix(int k, Uninitialized);

  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(k_) + static_cast<std::size_t>(col);
  }
  BigInt& mut(int row, int col) { return entries_[index(row, col)]; }

  int k_;
  std::vector<BigInt> entries_;
};

}  // namespace kbonacci
