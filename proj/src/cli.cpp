#include "kbonacci/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "kbonacci/binet.hpp"
#include "kbonacci/errors.hpp"
#include "kbonacci/polynomial.hpp"
#include "kbonacci/recurrence.hpp"
#include "kbonacci/roots.hpp"
#include "kbonacci/vandermonde.hpp"

namespace kbonacci::cli {

using json = nlohmann::ordered_json;

namespace {

std::int64_t parse_nonnegative(const std::string& text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw InvalidArgumentError("expected a non-negative integer, got '" + text + "'");
  }
  try {
    return std::stoll(text);
  } catch (const std::out_of_range&) {
    throw InvalidArgumentError("index out of range: '" + text + "'");
  }
}

// Replaces the last digit with its successor mod 10.
std::string flip_last_digit(std::string decimal) {
  if (!decimal.empty()) {
    char& c = decimal.back();
    c = static_cast<char>('0' + (c - '0' + 1) % 10);
  }
  return decimal;
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& body) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  const auto n_workers = static_cast<std::size_t>(std::min<std::size_t>(static_cast<std::size_t>(jobs), count));
  for (std::size_t w = 0; w < n_workers; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& t : workers) t.join();
}

std::string format_seconds(double s) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", s);
  return buf;
}

bool is_numeric_failure(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const ConvergenceError&) {
    return true;
  } catch (const PrecisionExhaustedError&) {
    return true;
  } catch (const PrecisionInsufficientError&) {
    return true;
  } catch (const TailBoundError&) {
    return true;
  } catch (...) {
    return false;
  }
}

// ---- compute ---------------------------------------------------------------

struct ComputeRecord {
  std::int64_t n = 0;
  std::string value;
  std::optional<BinetResult> binet;
};

ComputeRecord compute_one(const CommandConfig& cfg, const std::string& method, std::int64_t n) {
  ComputeRecord rec;
  rec.n = n;
  if (method == "recursive") {
    rec.value = kbonacci_recursive(cfg.k, n).get_str();
  } else if (method == "matrix") {
    rec.value = kbonacci_matrix(cfg.k, n).get_str();
  } else if (method == "dominant") {
    rec.value = dominant_term_round(cfg.k, n).get_str();
  } else {
    BinetOptions opts;
    opts.start_prec = cfg.prec_bits;
    rec.binet = binet_eval(cfg.k, n, opts);
    rec.value = rec.binet->value.get_str();
  }
  return rec;
}

// ---- verify ----------------------------------------------------------------

struct VerifyCell {
  int k = 0;
  std::int64_t n = 0;
  std::string reference;
  std::optional<BinetResult> result;
  std::string recheck_value;
  std::string error;
  bool numeric_error = false;
  bool pass = false;
};

}  // namespace

std::vector<std::int64_t> parse_index_spec(const std::string& spec) {
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t comma = spec.find(',', start);
    const std::string item = spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const std::size_t dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_nonnegative(item));
    } else {
      const std::int64_t lo = parse_nonnegative(item.substr(0, dots));
      const std::int64_t hi = parse_nonnegative(item.substr(dots + 2));
      if (hi <= lo) throw InvalidArgumentError("empty range '" + item + "' (a..b excludes b)");
      for (std::int64_t i = lo; i < hi; ++i) out.push_back(i);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string digest(const std::string& decimal) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : decimal) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int cmd_compute(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string method = cfg.methods.empty() ? "binet" : cfg.methods.front();
  std::vector<ComputeRecord> records;
  try {
    for (std::int64_t n : cfg.ns) records.push_back(compute_one(cfg, method, n));
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numeric_failure(std::current_exception()) ? kExitNumeric : kExitUsage;
  }

  if (cfg.format == Format::kCsv) out << "k,n,method,value,error_radius,prec_bits_used,escalations\n";
  for (const ComputeRecord& r : records) {
    switch (cfg.format) {
      case Format::kHuman:
        out << r.value << '\n';
        break;
      case Format::kJson: {
        json j;
        j["k"] = cfg.k;
        j["n"] = r.n;
        j["method"] = method;
        j["value"] = r.value;
        if (r.binet) {
          const json b = to_json(*r.binet);
          j["error_radius"] = b["error_radius"];
          j["prec_bits_used"] = b["prec_bits_used"];
          j["escalations"] = b["escalations"];
        }
        out << j.dump() << '\n';
        break;
      }
      case Format::kCsv:
        out << cfg.k << ',' << r.n << ',' << method << ',' << r.value << ',';
        if (r.binet) {
          out << r.binet->error_radius.to_decimal(decimal_digits_for(Mag::kBits)) << ',' << r.binet->prec_bits_used
              << ',' << r.binet->escalations;
        } else {
          out << ",,";
        }
        out << '\n';
        break;
    }
  }
  return kExitOk;
}

int cmd_roots(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  const Prec prec = cfg.prec_bits > 0 ? cfg.prec_bits : 256;
  try {
    const RootSet rs = find_roots(cfg.k, prec);
    root_separation(rs);  // refuses root sets whose balls are not certified disjoint
    const DiscriminantCertificate cert = discriminant_certificate(cfg.k);
    const bool critical = critical_points_avoid_char_roots(cfg.k);
    if (cfg.format == Format::kHuman) {
      const int digits = decimal_digits_for(rs.prec_bits);
      out << "k = " << rs.k << ", precision = " << rs.prec_bits << " bits\n";
      for (std::size_t i = 0; i < rs.roots.size(); ++i) {
        out << "phi_" << (i + 1) << " = " << rs.roots[i].re.to_decimal(digits) << " + "
            << rs.roots[i].im.to_decimal(digits) << " i\n";
      }
      out << "max residual   <= " << rs.max_residual.to_decimal(6) << '\n';
      out << "min separation >= " << rs.min_separation.to_decimal(6, MPFR_RNDD) << '\n';
      out << "discriminant   = " << cert.discriminant.get_str() << (cert.nonzero ? " (nonzero)" : " (ZERO)") << '\n';
    } else {
      json j;
      j["rootset"] = to_json(rs);
      json c;
      c["k"] = cert.k;
      c["discriminant"] = cert.discriminant.get_str();
      c["nonzero"] = cert.nonzero;
      c["critical_points_avoid_roots"] = critical;
      j["certificate"] = std::move(c);
      out << j.dump() << '\n';
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numeric_failure(std::current_exception()) ? kExitNumeric : kExitUsage;
  }
  return kExitOk;
}

int cmd_verify(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<VerifyCell> cells;
  for (int k : cfg.ks) {
    if (cfg.ns.empty()) break;
    const std::int64_t max_n = *std::max_element(cfg.ns.begin(), cfg.ns.end());
    const std::vector<BigInt> refs = kbonacci_window(k, 0, static_cast<std::size_t>(max_n) + 1);
    for (std::int64_t n : cfg.ns) {
      VerifyCell c;
      c.k = k;
      c.n = n;
      c.reference = refs[static_cast<std::size_t>(n)].get_str();
      cells.push_back(std::move(c));
    }
  }
  if (cfg.inject_fault && !cells.empty()) cells.back().reference = flip_last_digit(cells.back().reference);

  parallel_for(cells.size(), cfg.jobs, [&](std::size_t i) {
    VerifyCell& c = cells[i];
    try {
      BinetOptions opts;
      opts.start_prec = cfg.prec_bits;
      c.result = binet_eval(c.k, c.n, opts);
      c.pass = c.result->value.get_str() == c.reference && c.result->error_radius < Mag(0.5);
      if (cfg.recheck_doubled) {
        BinetOptions doubled;
        doubled.start_prec = 2 * c.result->prec_bits_used;
        c.recheck_value = binet_eval(c.k, c.n, doubled).value.get_str();
        c.pass = c.pass && c.recheck_value == c.result->value.get_str();
      }
    } catch (const Error& e) {
      c.error = e.what();
      c.numeric_error = is_numeric_failure(std::current_exception());
    }
  });

  std::vector<LemmaInstance> instances;
  for (int k : cfg.lemma_ks) {
    for (std::uint64_t t = 0; t < cfg.trials; ++t) instances.push_back(sample_instance(instance_seed(cfg.seed, k, t), k));
  }
  std::vector<LemmaRecord> lemma(instances.size());
  parallel_for(instances.size(), cfg.jobs, [&](std::size_t i) { lemma[i] = check_instance(instances[i]); });

  std::size_t binet_failures = 0;
  bool numeric = false;
  for (const VerifyCell& c : cells) {
    if (c.pass) continue;
    ++binet_failures;
    numeric = numeric || c.numeric_error;
    err << "FAIL binet k=" << c.k << " n=" << c.n << ": ";
    if (!c.error.empty()) {
      err << c.error;
    } else {
      err << "closed form " << c.result->value.get_str() << " != recurrence " << c.reference;
      if (!c.recheck_value.empty() && c.recheck_value != c.result->value.get_str()) {
        err << " (doubled precision gave " << c.recheck_value << ")";
      }
    }
    err << '\n';
  }
  std::size_t lemma_failures = 0;
  for (const LemmaRecord& r : lemma) {
    if (r.passed()) continue;
    ++lemma_failures;
    err << "FAIL lemma seed=" << r.instance.seed << " k=" << r.instance.k << '\n';
  }
  const std::string lemma_status = lemma.empty() ? "skipped" : (lemma_failures == 0 ? "passed" : "failed");
  const bool all_pass = binet_failures == 0 && lemma_failures == 0;

  if (cfg.format == Format::kHuman) {
    out << "binet: " << cells.size() << " cells, " << binet_failures << " failures\n";
    out << "lemma: " << lemma_status << " (" << lemma.size() << " instances, " << lemma_failures << " failures, seed "
        << cfg.seed << ")\n";
    out << (all_pass ? "PASS" : "FAIL") << '\n';
  } else {
    for (const VerifyCell& c : cells) {
      json j;
      j["suite"] = "binet";
      j["k"] = c.k;
      j["n"] = c.n;
      j["reference"] = c.reference;
      if (c.result) {
        j["value"] = c.result->value.get_str();
        j["error_radius"] = c.result->error_radius.to_decimal(decimal_digits_for(Mag::kBits));
        j["prec_bits_used"] = c.result->prec_bits_used;
        j["escalations"] = c.result->escalations;
      } else {
        j["error"] = c.error;
      }
      j["pass"] = c.pass;
      out << j.dump() << '\n';
    }
    for (const LemmaRecord& r : lemma) out << to_json(r).dump() << '\n';
    json s;
    s["suite"] = "summary";
    s["seed"] = cfg.seed;
    s["binet_cells"] = cells.size();
    s["binet_failures"] = binet_failures;
    s["lemma_status"] = lemma_status;
    s["lemma_instances"] = lemma.size();
    s["lemma_failures"] = lemma_failures;
    s["pass"] = all_pass;
    out << s.dump() << '\n';
  }
  if (numeric) return kExitNumeric;
  return all_pass ? kExitOk : kExitVerifyFailed;
}

int cmd_bench(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  using clock = std::chrono::steady_clock;
  std::vector<BenchRecord> records;
  for (int k : cfg.ks) {
    std::optional<std::int64_t> n_min;
    for (std::int64_t n : cfg.ns) {
      std::vector<BenchRecord> cell;
      for (const std::string& backend : cfg.methods) {
        if (backend == "dominant") {
          if (!n_min) n_min = dominant_min_index(k);
          if (n < *n_min) {
            err << "note: skipping dominant at k=" << k << " n=" << n << " (n_min=" << *n_min << ")\n";
            continue;
          }
        }
        BenchRecord rec;
        rec.backend = backend;
        rec.k = k;
        rec.n = n;
        std::string value;
        double best = 0;
        for (int rep = 0; rep < std::max(cfg.reps, 1); ++rep) {
          const auto t0 = clock::now();
          if (backend == "recursive") {
            value = kbonacci_recursive(k, n).get_str();
          } else if (backend == "matrix") {
            value = kbonacci_matrix(k, n).get_str();
          } else if (backend == "dominant") {
            value = dominant_term_round(k, n).get_str();
          } else {
            const BinetResult r = binet_eval(k, n);
            value = r.value.get_str();
            rec.peak_prec_bits = r.prec_bits_used;
          }
          const double secs = std::chrono::duration<double>(clock::now() - t0).count();
          best = rep == 0 ? secs : std::min(best, secs);
        }
        if (cfg.inject_fault && backend == cfg.methods.back()) value = flip_last_digit(value);
        rec.wall_seconds = best;
        rec.digest = digest(value);
        cell.push_back(std::move(rec));
      }
      for (const BenchRecord& r : cell) {
        if (r.digest != cell.front().digest) {
          err << "digest mismatch at k=" << k << " n=" << n << ": " << cell.front().backend << "="
              << cell.front().digest << " vs " << r.backend << "=" << r.digest << "; aborting\n";
          return kExitVerifyFailed;
        }
      }
      records.insert(records.end(), cell.begin(), cell.end());
    }
  }

  if (cfg.format == Format::kCsv) {
    out << "backend,k,n,wall_seconds,peak_prec_bits,digest\n";
    for (const BenchRecord& r : records) {
      out << r.backend << ',' << r.k << ',' << r.n << ',' << format_seconds(r.wall_seconds) << ','
          << (r.peak_prec_bits > 0 ? std::to_string(r.peak_prec_bits) : "") << ',' << r.digest << '\n';
    }
  } else if (cfg.format == Format::kJson) {
    for (const BenchRecord& r : records) {
      json j;
      j["backend"] = r.backend;
      j["k"] = r.k;
      j["n"] = r.n;
      j["wall_seconds"] = format_seconds(r.wall_seconds);
      j["peak_prec_bits"] = r.peak_prec_bits;
      j["digest"] = r.digest;
      out << j.dump() << '\n';
    }
  } else {
    for (const BenchRecord& r : records) {
      out << r.backend << " k=" << r.k << " n=" << r.n << " " << format_seconds(r.wall_seconds) << "s digest "
          << r.digest << '\n';
    }
  }
  return kExitOk;
}

namespace {

Format parse_format(const std::string& s) {
  if (s == "json") return Format::kJson;
  if (s == "csv") return Format::kCsv;
  return Format::kHuman;
}

std::vector<int> parse_orders(const std::string& spec) {
  std::vector<int> ks;
  for (std::int64_t k : parse_index_spec(spec)) {
    if (k < 2 || k > kMaxCliOrder) {
      throw InvalidArgumentError("order k=" + std::to_string(k) + " outside [2, " + std::to_string(kMaxCliOrder) + "]");
    }
    ks.push_back(static_cast<int>(k));
  }
  return ks;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    out.push_back(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-bonacci numbers by exact recurrence and by the certified closed form over the characteristic roots",
               "kbonacci"};
  app.require_subcommand(1);

  CommandConfig cfg;
  const std::vector<std::string> methods{"recursive", "matrix", "binet", "dominant"};
  const std::string range_help = "index, a..b range (includes a, excludes b) or comma list";

  // CLI11 writes default_val into the bound variable immediately, so each
  // subcommand gets its own storage.
  std::string compute_n, compute_format, roots_format;
  std::string verify_k, verify_n, lemma_k_spec, verify_format;
  std::string bench_k, bench_n, bench_format, method, methods_spec;
  std::optional<std::uint64_t> seed;

  auto* compute = app.add_subcommand("compute", "Print F^(k)_n for one or more n");
  compute->add_option("--k", cfg.k, "Recurrence order (2..64)")->required();
  compute->add_option("--n", compute_n, range_help)->required();
  compute->add_option("--method", method, "recursive | matrix | binet | dominant")
      ->check(CLI::IsMember(methods))
      ->default_val("binet");
  compute->add_option("--prec", cfg.prec_bits, "Starting precision in bits for the binet method");
  compute->add_option("--format", compute_format, "human | json | csv")
      ->check(CLI::IsMember({"human", "json", "csv"}))
      ->default_val("human");
  compute->add_option("--output", cfg.output_path, "Write to this file instead of stdout");

  auto* roots = app.add_subcommand("roots", "Roots of the characteristic polynomial and the discriminant certificate");
  roots->add_option("--k", cfg.k, "Recurrence order (2..64)")->required();
  roots->add_option("--prec", cfg.prec_bits, "Working precision in bits (default 256)");
  roots->add_option("--format", roots_format, "json | human")->check(CLI::IsMember({"human", "json"}))->default_val("json");
  roots->add_option("--output", cfg.output_path, "Write to this file instead of stdout");

  auto* verify = app.add_subcommand("verify", "Closed form vs recurrence matrix and the Vandermonde identity suite");
  verify->add_option("--k", verify_k, "Orders for the closed-form matrix; " + range_help)->default_val("2..11");
  verify->add_option("--n", verify_n, "Indices for the closed-form matrix; " + range_help)->default_val("0..501");
  verify->add_option("--lemma-k", lemma_k_spec, "Instance sizes for the identity suite")->default_val("2..9");
  verify->add_option("--trials", cfg.trials, "Random instances per size (0 skips the suite)")->default_val(1000);
  verify->add_option("--seed", seed, "Base RNG seed (else KBONACCI_SEED, else the built-in default)");
  verify->add_option("--prec", cfg.prec_bits, "Starting precision override for the closed form");
  verify->add_option("--jobs", cfg.jobs, "Worker threads")->default_val(1)->check(CLI::PositiveNumber);
  verify->add_flag("--recheck-doubled", cfg.recheck_doubled, "Re-evaluate every cell at doubled precision");
  verify->add_option("--format", verify_format, "json | human")->check(CLI::IsMember({"human", "json"}))->default_val("json");
  verify->add_option("--output", cfg.output_path, "Write to this file instead of stdout");
  verify->add_flag("--inject-fault", cfg.inject_fault, "Corrupt one reference value (harness self-test)")->group("");

  auto* bench = app.add_subcommand("bench", "Time the backends over a (k, n) grid after checking they agree");
  bench->add_option("--k", bench_k, "Orders; " + range_help)->default_val("2,3,5");
  bench->add_option("--n", bench_n, "Indices; " + range_help)->default_val("1000,10000");
  bench->add_option("--methods", methods_spec, "Comma list of backends")->default_val("recursive,matrix,binet,dominant");
  bench->add_option("--reps", cfg.reps, "Repetitions per backend; the minimum is reported")->default_val(1)->check(
      CLI::PositiveNumber);
  bench->add_option("--format", bench_format, "csv | json | human")
      ->check(CLI::IsMember({"human", "json", "csv"}))
      ->default_val("csv");
  bench->add_option("--output", cfg.output_path, "Write to this file instead of stdout");
  bench->add_flag("--inject-fault", cfg.inject_fault, "Corrupt one backend's value (harness self-test)")->group("");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (compute->parsed()) {
      cfg.subcommand = "compute";
      cfg.format = parse_format(compute_format);
      cfg.methods = {method};
      cfg.ns = parse_index_spec(compute_n);
    } else if (roots->parsed()) {
      cfg.subcommand = "roots";
      cfg.format = parse_format(roots_format);
    } else if (verify->parsed()) {
      cfg.subcommand = "verify";
      cfg.format = parse_format(verify_format);
      cfg.ks = parse_orders(verify_k);
      cfg.ns = parse_index_spec(verify_n);
      cfg.lemma_ks.clear();
      for (std::int64_t k : parse_index_spec(lemma_k_spec)) {
        if (k < 1) throw InvalidArgumentError("lemma instance size must be positive");
        cfg.lemma_ks.push_back(static_cast<int>(k));
      }
    } else {
      cfg.subcommand = "bench";
      cfg.format = parse_format(bench_format);
      cfg.ks = parse_orders(bench_k);
      cfg.ns = parse_index_spec(bench_n);
      cfg.methods = split_list(methods_spec);
      for (const std::string& m : cfg.methods) {
        if (std::find(methods.begin(), methods.end(), m) == methods.end()) {
          throw InvalidArgumentError("unknown backend '" + m + "'");
        }
      }
    }
    if (cfg.subcommand == "compute" || cfg.subcommand == "roots") {
      if (cfg.k < 2 || cfg.k > kMaxCliOrder) {
        throw InvalidArgumentError("order k=" + std::to_string(cfg.k) + " outside [2, " +
                                   std::to_string(kMaxCliOrder) + "]");
      }
    }
    if (cfg.prec_bits < 0 || (cfg.prec_bits > 0 && cfg.prec_bits < kMinPrecBits)) {
      throw InvalidArgumentError("--prec must be at least " + std::to_string(kMinPrecBits));
    }
    if (seed) {
      cfg.seed = *seed;
    } else if (const char* env = std::getenv("KBONACCI_SEED"); env != nullptr && *env != '\0') {
      cfg.seed = static_cast<std::uint64_t>(parse_nonnegative(env));
    }
  } catch (const InvalidArgumentError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::ofstream file;
  if (!cfg.output_path.empty()) {
    file.open(cfg.output_path);
    if (!file) {
      err << "usage error: cannot open " << cfg.output_path << " for writing\n";
      return kExitUsage;
    }
  }
  std::ostream& sink = cfg.output_path.empty() ? out : file;

  if (cfg.subcommand == "compute") return cmd_compute(cfg, sink, err);
  if (cfg.subcommand == "roots") return cmd_roots(cfg, sink, err);
  if (cfg.subcommand == "verify") return cmd_verify(cfg, sink, err);
  return cmd_bench(cfg, sink, err);
}

}  // namespace kbonacci::cli
