#include "kbonacci/vandermonde.hpp"

#include <random>
#include <string>

#include "kbonacci/errors.hpp"

namespace kbonacci {

namespace {

constexpr std::uint64_t kSampleBound = 1'000'000;

void require_nonempty(const NodeVector& xs) {
  if (xs.empty()) throw DimensionError("empty node vector");
}

void require_matching(const NodeVector& xs, const ValueVector& fs) {
  require_nonempty(xs);
  if (xs.size() != fs.size()) {
    throw DimensionError("node/value length mismatch: " + std::to_string(xs.size()) + " vs " +
                         std::to_string(fs.size()));
  }
}

// (-1)^(k-1-i) for a 0-based row index.
int cofactor_sign(std::size_t k, std::size_t i) { return ((k - 1 - i) % 2 == 0) ? 1 : -1; }

ExactRational distance_product(const NodeVector& xs, std::size_t i) {
  ExactRational prod = 1;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (j != i) prod *= xs[i] - xs[j];
  }
  return prod;
}

// Uniform integer in [0, bound) from raw engine output, by rejection, so the
// sample stream does not depend on the standard library's distributions.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

ExactRational random_rational(std::mt19937_64& rng) {
  const auto magnitude = static_cast<long>(uniform_below(rng, 2 * kSampleBound + 1)) - static_cast<long>(kSampleBound);
  const auto den = static_cast<long>(uniform_below(rng, kSampleBound)) + 1;
  return make_rational(magnitude, den);
}

nlohmann::ordered_json rational_array(const std::vector<ExactRational>& v) {
  auto arr = nlohmann::ordered_json::array();
  for (const ExactRational& q : v) arr.push_back(q.get_str());
  return arr;
}

}  // namespace

ExactRational make_rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DivisionByZeroError("zero denominator");
  ExactRational q(num, den);
  q.canonicalize();
  return q;
}

ExactRational vdm_product(const NodeVector& xs) {
  ExactRational prod = 1;
  for (std::size_t n = 0; n < xs.size(); ++n) {
    for (std::size_t m = 0; m < n; ++m) prod *= xs[n] - xs[m];
  }
  return prod;
}

ExactRational vdm_minor_product(const NodeVector& xs, std::size_t i) {
  if (i >= xs.size()) {
    throw IndexOutOfRangeError("minor index " + std::to_string(i) + " out of range for k=" + std::to_string(xs.size()));
  }
  ExactRational prod = 1;
  for (std::size_t n = 0; n < xs.size(); ++n) {
    if (n == i) continue;
    for (std::size_t m = 0; m < n; ++m) {
      if (m != i) prod *= xs[n] - xs[m];
    }
  }
  return prod;
}

ExactMatrix vandermonde_matrix(const NodeVector& xs) {
  const std::size_t k = xs.size();
  ExactMatrix v(k, k);
  for (std::size_t r = 0; r < k; ++r) {
    ExactRational power = 1;
    for (std::size_t c = 0; c < k; ++c) {
      v(r, c) = power;
      power *= xs[r];
    }
  }
  return v;
}

ExactMatrix bordered_matrix(const NodeVector& xs, const ValueVector& fs) {
  require_matching(xs, fs);
  ExactMatrix b = vandermonde_matrix(xs);
  for (std::size_t r = 0; r < xs.size(); ++r) b(r, xs.size() - 1) = fs[r];
  return b;
}

ExactRational det_exact(const ExactMatrix& m) {
  if (!m.square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  IntMatrix scaled(n, n);
  mpz_class scale = 1;
  for (std::size_t r = 0; r < n; ++r) {
    mpz_class row_lcm = 1;
    for (std::size_t c = 0; c < n; ++c) mpz_lcm(row_lcm.get_mpz_t(), row_lcm.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < n; ++c) {
      scaled(r, c) = m(r, c).get_num() * (row_lcm / m(r, c).get_den());
    }
    scale *= row_lcm;
  }
  return make_rational(bareiss_determinant(std::move(scaled)), scale);
}

ExactRational lemma_lhs(const NodeVector& xs, const ValueVector& fs) {
  require_matching(xs, fs);
  ExactRational sum = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const ExactRational denom = distance_product(xs, i);
    if (denom == 0) throw DivisionByZeroError("coincident nodes at index " + std::to_string(i));
    sum += fs[i] / denom;
  }
  return sum;
}

ExactRational lemma_rhs(const NodeVector& xs, const ValueVector& fs) {
  require_matching(xs, fs);
  const ExactRational v = vdm_product(xs);
  if (v == 0) throw DivisionByZeroError("Vandermonde product vanishes: coincident nodes");
  return det_exact(bordered_matrix(xs, fs)) / v;
}

bool sign_identity_check(const NodeVector& xs, std::size_t i) {
  require_nonempty(xs);
  const ExactRational minor = vdm_minor_product(xs, i);
  const ExactRational rhs = cofactor_sign(xs.size(), i) * minor * distance_product(xs, i);
  return vdm_product(xs) == rhs;
}

bool cofactor_expansion_check(const NodeVector& xs, const ValueVector& fs) {
  require_matching(xs, fs);
  ExactRational expansion = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    expansion += cofactor_sign(xs.size(), i) * fs[i] * vdm_minor_product(xs, i);
  }
  return det_exact(bordered_matrix(xs, fs)) == expansion;
}

std::uint64_t instance_seed(std::uint64_t base_seed, int k, std::uint64_t trial) {
  // splitmix64 finalizer over a packed (k, trial) offset
  std::uint64_t z = base_seed + 0x9E3779B97F4A7C15ull * ((static_cast<std::uint64_t>(k) << 32) + trial + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

LemmaInstance sample_instance(std::uint64_t seed, int k) {
  if (k < 1) throw InvalidArgumentError("instance size must be positive");
  std::mt19937_64 rng(seed);
  LemmaInstance inst;
  inst.seed = seed;
  inst.k = k;
  while (inst.nodes.size() < static_cast<std::size_t>(k)) {
    ExactRational x = random_rational(rng);
    bool duplicate = false;
    for (const ExactRational& y : inst.nodes) duplicate = duplicate || (x == y);
    if (!duplicate) inst.nodes.push_back(std::move(x));
  }
  for (int i = 0; i < k; ++i) inst.values.push_back(random_rational(rng));
  return inst;
}

LemmaRecord check_instance(const LemmaInstance& inst) {
  LemmaRecord rec;
  rec.instance = inst;
  rec.lemma = lemma_lhs(inst.nodes, inst.values) == lemma_rhs(inst.nodes, inst.values);
  rec.sign_identity = true;
  for (std::size_t i = 0; i < inst.nodes.size(); ++i) {
    rec.sign_identity = rec.sign_identity && sign_identity_check(inst.nodes, i);
  }
  rec.cofactor = cofactor_expansion_check(inst.nodes, inst.values);
  return rec;
}

nlohmann::ordered_json to_json(const LemmaRecord& r) {
  nlohmann::ordered_json j;
  j["suite"] = "lemma";
  j["seed"] = r.instance.seed;
  j["k"] = r.instance.k;
  j["nodes"] = rational_array(r.instance.nodes);
  j["values"] = rational_array(r.instance.values);
  j["lemma"] = r.lemma;
  j["sign_identity"] = r.sign_identity;
  j["cofactor"] = r.cofactor;
  j["pass"] = r.passed();
  return j;
}

}  // namespace kbonacci
