#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kbonacci::cli {

/// "kbonacci" in ASCII; KBONACCI_SEED or --seed override it.
inline constexpr std::uint64_t kDefaultSeed = 0x6B626F6E61636369ull;
inline constexpr int kMaxCliOrder = 64;

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitUsage = 2,
  kExitNumeric = 3,
};

enum class Format { kHuman, kJson, kCsv };

struct CommandConfig {
  std::string subcommand;
  int k = 0;
  std::vector<int> ks;             // verify / bench grids
  std::vector<std::int64_t> ns;
  std::vector<int> lemma_ks;
  std::vector<std::string> methods;
  long prec_bits = 0;              // 0: module default
  std::uint64_t trials = 1000;
  std::uint64_t seed = kDefaultSeed;
  int jobs = 1;
  int reps = 1;
  bool recheck_doubled = false;
  bool inject_fault = false;
  Format format = Format::kHuman;
  std::string output_path;         // empty: stdout
};

struct BenchRecord {
  std::string backend;
  int k = 0;
  std::int64_t n = 0;
  double wall_seconds = 0;
  long peak_prec_bits = 0;         // Binet backends only
  std::string digest;
};

/// Parses "7", "a..b" (inclusive-exclusive) or comma-separated mixes of both.
/// Throws kbonacci::InvalidArgumentError on empty ranges, negatives or junk.
std::vector<std::int64_t> parse_index_spec(const std::string& spec);

/// FNV-1a 64-bit hash of a decimal string, as 16 lowercase hex digits.
std::string digest(const std::string& decimal);

int cmd_compute(const CommandConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_roots(const CommandConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const CommandConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bench(const CommandConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kbonacci::cli
