// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "kbonacci/binet.hpp"
#include "kbonacci/cli.hpp"
#include "kbonacci/polynomial.hpp"
#include "kbonacci/recurrence.hpp"
#include "kbonacci/roots.hpp"
#include "kbonacci/vandermonde.hpp"

using namespace kbonacci;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Closed-form results over k in [2,10], n in [0,500], shared by criteria 1 and 8.
std::vector<BinetResult> g_matrix;

Outcome closed_form_matrix() {
  Outcome o;
  std::size_t mismatches = 0;
  for (int k = 2; k <= 10; ++k) {
    const std::vector<BigInt> ref = kbonacci_window(k, 0, 501);
    for (std::int64_t n = 0; n <= 500; ++n) {
      g_matrix.push_back(binet_eval(k, n));
      if (g_matrix.back().value != ref[static_cast<std::size_t>(n)]) {
        if (mismatches++ == 0) o.detail = "first mismatch at k=" + std::to_string(k) + " n=" + std::to_string(n) + "; ";
      }
    }
  }
  o.pass = mismatches == 0 && g_matrix.size() == 9 * 501;
  o.detail += std::to_string(g_matrix.size()) + " cells, " + std::to_string(mismatches) + " mismatches";
  return o;
}

Outcome base_cases() {
  Outcome o;
  int checked = 0;
  for (int k = 2; k <= 10; ++k) {
    for (int n = 0; n <= k - 1; ++n) {
      const BigInt expected = n == k - 1 ? 1 : 0;
      o.pass = o.pass && binet_eval(k, n).value == expected;
      ++checked;
    }
  }
  o.detail = std::to_string(checked) + " initial values";
  return o;
}

Outcome fibonacci() {
  Outcome o;
  const std::vector<BigInt> ref = kbonacci_window(2, 0, 101);
  for (std::int64_t n = 0; n <= 100; ++n) o.pass = o.pass && binet_eval(2, n).value == ref[static_cast<std::size_t>(n)];
  const RootSet rs = find_roots(2, 128);
  const ApReal s5 = sqrt(ApReal(256, 5));
  const ApReal phi1 = (ApReal(256, 1) + s5) / ApReal(256, 2);
  const ApReal phi2 = (ApReal(256, 1) - s5) / ApReal(256, 2);
  const ApReal tol(256, "1e-30");
  const ApReal e1 = abs(rs.roots[0].re - phi1) / abs(phi1);
  const ApReal e2 = abs(rs.roots[1].re - phi2) / abs(phi2);
  o.pass = o.pass && e1 < tol && e2 < tol && rs.roots[0].im.is_zero() && rs.roots[1].im.is_zero();
  o.detail = "n 0..100 exact; root relative errors " + e1.to_decimal(3) + ", " + e2.to_decimal(3);
  return o;
}

Outcome lemma_suite() {
  Outcome o;
  std::size_t total = 0, failed = 0;
  for (int k = 2; k <= 8; ++k) {
    for (std::uint64_t t = 0; t < 1000; ++t) {
      const LemmaRecord r = check_instance(sample_instance(instance_seed(cli::kDefaultSeed, k, t), k));
      ++total;
      if (!r.passed()) ++failed;
    }
  }
  o.pass = failed == 0 && total == 7000;
  o.detail = std::to_string(total) + " instances, " + std::to_string(failed) + " failures";
  return o;
}

Outcome distinctness() {
  Outcome o;
  ApReal tightest(64);
  for (int k = 2; k <= 20; ++k) {
    o.pass = o.pass && discriminant_certificate(k).nonzero;
    const RootSet rs = find_roots(k, 256);
    const ApReal sep = root_separation(rs);  // throws unless separation > 4 * perturbation bound
    const Mag bound = perturbation_bound(rs);
    o.pass = o.pass && sep > ApReal(64, 0) && bound < rs.min_separation;
    const ApReal r = sep / bound.value();
    if (k == 2 || r < tightest) tightest = r;
  }
  o.detail = "discriminants nonzero; smallest separation/perturbation ratio " + tightest.to_decimal(3);
  return o;
}

Outcome vieta() {
  Outcome o;
  double worst = -1e9;
  for (int k = 2; k <= 20; ++k) {
    for (Prec prec : {128, 256}) {
      const RootSet rs = find_roots(k, prec);
      const Prec wide = prec + 64;
      ApComplex sum(wide);
      ApComplex product(ApReal(wide, 1), ApReal(wide, 0));
      for (const ApComplex& z : rs.roots) {
        sum += z;
        product *= z;
      }
      sum.re = sum.re - ApReal(wide, 1);
      product.re = product.re - ApReal(wide, k % 2 == 0 ? -1 : 1);
      const Mag tol = Mag::pow_upper(Mag(0.5), static_cast<unsigned long>(prec - 16));
      const Mag err = max(Mag::abs_upper(sum), Mag::abs_upper(product));
      o.pass = o.pass && err <= tol;
      if (!err.is_zero()) worst = std::max(worst, err.log2() + static_cast<double>(prec - 16));
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "worst error is 2^%.1f of the tolerance", worst);
  o.detail = buf;
  return o;
}

Outcome backend_scale() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t digits = 0;
  for (int k : {2, 3, 5}) {
    const std::string a = kbonacci_matrix(k, 100000).get_str();
    const std::string b = kbonacci_recursive(k, 100000).get_str();
    o.pass = o.pass && a == b;
    digits += a.size();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.pass = o.pass && secs < 60.0;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu digits compared in %.2fs", digits, secs);
  o.detail = buf;
  return o;
}

Outcome soundness() {
  Outcome o;
  if (g_matrix.empty()) closed_form_matrix();
  std::size_t wide = 0, changed = 0;
  const Mag half(0.5);
  for (const BinetResult& r : g_matrix) {
    if (!(r.error_radius < half)) ++wide;
    BinetOptions doubled;
    doubled.start_prec = 2 * r.prec_bits_used;
    if (binet_eval(r.k, r.n, doubled).value != r.value) ++changed;
  }
  o.pass = wide == 0 && changed == 0 && !g_matrix.empty();
  o.detail = std::to_string(g_matrix.size()) + " results; " + std::to_string(wide) + " radii >= 1/2, " +
             std::to_string(changed) + " changed at doubled precision";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*check)();
  };
  const std::vector<Criterion> criteria{
      {"closed form equals recurrence for k 2..10, n 0..500", closed_form_matrix},
      {"initial values 0 and 1 from the closed form", base_cases},
      {"Fibonacci values and golden-ratio roots", fibonacci},
      {"Vandermonde identity on 1000 random instances per k 2..8", lemma_suite},
      {"discriminant nonzero and certified root separation, k 2..20", distinctness},
      {"Vieta sum and product at 128 and 256 bits, k 2..20", vieta},
      {"matrix and recurrence backends agree at n = 100000", backend_scale},
      {"certified radii below 1/2 and stable under doubled precision", soundness},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %zu: %s (%s; %.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
