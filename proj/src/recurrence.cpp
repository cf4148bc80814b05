#include "kbonacci/recurrence.hpp"

#include <algorithm>
#include <string>

#include "kbonacci/errors.hpp"

namespace kbonacci {

void require_order(int k) {
  if (k < 2) throw InvalidOrderError(k);
}

void require_index(std::int64_t n) {
  if (n < 0) throw InvalidArgumentError("negative sequence index n=" + std::to_string(n));
}

namespace {

// Ring buffer of the last k terms plus their running sum.
class Window {
 public:
  explicit Window(int k) : ring_(static_cast<std::size_t>(k)), sum_(1) {
    ring_.back() = 1;  // F_{k-1}
  }

  // Shifts in the next term, which then becomes latest().
  void advance() {
    BigInt& oldest = ring_[head_];
    BigInt next = sum_;
    sum_ += next;
    sum_ -= oldest;
    oldest.swap(next);
    latest_ = head_;
    head_ = (head_ + 1) % ring_.size();
  }

  const BigInt& latest() const { return ring_[latest_]; }

 private:
  std::vector<BigInt> ring_;
  std::size_t head_ = 0;
  std::size_t latest_ = 0;
  BigInt sum_;
};

}  // namespace

BigInt kbonacci_recursive(int k, std::int64_t n) {
  require_order(k);
  require_index(n);
  if (n < k - 1) return 0;
  if (n == k - 1) return 1;
  Window w(k);
  for (std::int64_t i = k; i <= n; ++i) w.advance();
  return w.latest();
}

std::vector<BigInt> kbonacci_window(int k, std::int64_t start, std::size_t count) {
  require_order(k);
  require_index(start);
  std::vector<BigInt> out;
  out.reserve(count);
  const std::int64_t end = start + static_cast<std::int64_t>(count);
  for (std::int64_t i = start; i < std::min<std::int64_t>(end, k); ++i) out.emplace_back(i == k - 1 ? 1 : 0);
  if (end <= k) return out;
  Window w(k);
  for (std::int64_t i = k; i < end; ++i) {
    w.advance();
    if (i >= start) out.push_back(w.latest());
  }
  return out;
}

CompanionMatrix::CompanionMatrix(int k, Uninitialized)
    : k_(k), entries_(static_cast<std::size_t>(k) * static_cast<std::size_t>(k)) {}

CompanionMatrix::CompanionMatrix(int k) : CompanionMatrix((require_order(k), k), Uninitialized{}) {
  for (int c = 0; c < k_; ++c) mut(0, c) = 1;
  for (int r = 1; r < k_; ++r) mut(r, r - 1) = 1;
}

CompanionMatrix CompanionMatrix::identity(int k) {
  require_order(k);
  CompanionMatrix id(k, Uninitialized{});
  for (int i = 0; i < k; ++i) id.mut(i, i) = 1;
  return id;
}

CompanionMatrix CompanionMatrix::operator*(const CompanionMatrix& rhs) const {
  CompanionMatrix out(k_, Uninitialized{});
  for (int r = 0; r < k_; ++r) {
    for (int c = 0; c < k_; ++c) {
      BigInt& acc = out.mut(r, c);
      for (int j = 0; j < k_; ++j) {
        const BigInt& a = at(r, j);
        const BigInt& b = rhs.at(j, c);
        if (sgn(a) != 0 && sgn(b) != 0) mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      }
    }
  }
  return out;
}

CompanionMatrix CompanionMatrix::pow(std::uint64_t e) const {
  CompanionMatrix result = identity(k_);
  CompanionMatrix base = *this;
  while (e != 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

BigInt kbonacci_matrix(int k, std::int64_t n) {
  require_order(k);
  require_index(n);
  // The initial state (F_{k-1}, ..., F_0) is e_0, so M^n e_0 is column 0 of M^n
  // and its last component is F_n.
  const CompanionMatrix power = CompanionMatrix(k).pow(static_cast<std::uint64_t>(n));
  return power.at(k - 1, 0);
}

}  // namespace kbonacci
