#include <vector>

#include "doctest.h"
#include "kbonacci/errors.hpp"
#include "kbonacci/recurrence.hpp"

using namespace kbonacci;

TEST_CASE("fibonacci prefix") {
  const std::vector<long> fib{0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144};
  for (std::size_t n = 0; n < fib.size(); ++n) {
    CHECK(kbonacci_recursive(2, static_cast<std::int64_t>(n)) == fib[n]);
  }
  CHECK(kbonacci_recursive(2, 20) == 6765);
}

TEST_CASE("tribonacci prefix") {
  const std::vector<long> trib{0, 0, 1, 1, 2, 4, 7, 13, 24, 44, 81, 149};
  for (std::size_t n = 0; n < trib.size(); ++n) {
    CHECK(kbonacci_recursive(3, static_cast<std::int64_t>(n)) == trib[n]);
  }
  CHECK(kbonacci_recursive(3, 30) == 15902591);
}

TEST_CASE("initial values") {
  for (int k = 2; k <= 12; ++k) {
    for (int n = 0; n <= k - 2; ++n) CHECK(kbonacci_recursive(k, n) == 0);
    CHECK(kbonacci_recursive(k, k - 1) == 1);
    CHECK(kbonacci_recursive(k, k) == 1);
    CHECK(kbonacci_recursive(k, k + 1) == 2);
  }
}

TEST_CASE("large values against independent big-integer reference") {
  CHECK(kbonacci_recursive(5, 100) == mpz_class("8196759338261258264777004033"));
  const mpz_class tail = kbonacci_recursive(10, 500) % mpz_class("100000000000000000000");
  CHECK(tail == mpz_class("96469557693498850048"));
}

TEST_CASE("matrix power agrees with the recurrence") {
  for (int k = 2; k <= 10; ++k) {
    const std::vector<BigInt> window = kbonacci_window(k, 0, 301);
    for (std::int64_t n = 0; n <= 300; n += (n < 40 ? 1 : 7)) {
      CHECK(kbonacci_matrix(k, n) == window[static_cast<std::size_t>(n)]);
    }
  }
  CHECK(kbonacci_matrix(7, 4000) == kbonacci_recursive(7, 4000));
}

TEST_CASE("window with offset") {
  const std::vector<BigInt> w = kbonacci_window(4, 10, 5);
  REQUIRE(w.size() == 5);
  for (std::int64_t i = 0; i < 5; ++i) CHECK(w[static_cast<std::size_t>(i)] == kbonacci_recursive(4, 10 + i));
  CHECK(kbonacci_window(3, 0, 0).empty());
}

TEST_CASE("companion matrix") {
  const CompanionMatrix m(3);
  CHECK(m.order() == 3);
  for (int c = 0; c < 3; ++c) CHECK(m.at(0, c) == 1);
  CHECK(m.at(1, 0) == 1);
  CHECK(m.at(2, 1) == 1);
  CHECK(m.at(1, 1) == 0);
  const CompanionMatrix id = CompanionMatrix::identity(3);
  CHECK(m.pow(0).at(0, 0) == id.at(0, 0));
  CHECK(m.pow(5).at(2, 0) == kbonacci_recursive(3, 5));
  const CompanionMatrix a = m.pow(4) * m.pow(6);
  const CompanionMatrix b = m.pow(10);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) CHECK(a.at(r, c) == b.at(r, c));
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(kbonacci_recursive(1, 5), InvalidOrderError);
  CHECK_THROWS_AS(kbonacci_matrix(0, 5), InvalidOrderError);
  CHECK_THROWS_AS(kbonacci_recursive(3, -1), InvalidArgumentError);
  CHECK_THROWS_AS(kbonacci_matrix(3, -2), InvalidArgumentError);
  try {
    kbonacci_recursive(-4, 0);
  } catch (const InvalidOrderError& e) {
    CHECK(e.order() == -4);
  }
}
