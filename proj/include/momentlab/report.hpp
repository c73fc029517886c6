#pragma once
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace momentlab {

// splittable deterministic generator for the randomized property tests
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t range(std::uint64_t n) { return next() % n; }
  SplitMix64 split(std::uint64_t salt) const { return SplitMix64(state ^ (salt * 0xd1b54a32d192ed03ull)); }
};

struct RunConfig {
  std::string command;
  std::vector<std::uint64_t> q_list{101, 211, 499, 1009, 2003};
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ell_pairs{{1, 1}};
  double lambda = 1e-3;
  std::uint64_t p_max = 1'000'000;
  std::string precision = "double";  // "extended" accepted, currently aliases double
  int threads = 1;
  std::string format = "pretty";
  std::uint64_t seed = 1;
  std::string suite_filter;  // substring filter for `identities`
};

// one report cell; rows are ordered key/value lists so CSV columns stay stable
struct Field {
  std::string key;
  std::variant<double, std::int64_t, bool, std::string> value;
};

struct Row {
  std::string suite;
  std::string name;
  bool pass = true;
  bool gated = true;  // gated rows decide the exit status
  std::vector<Field> fields;
  double ms = 0.0;
};

struct Report {
  std::string version = "1";
  RunConfig config;
  std::vector<Row> results;
  std::vector<std::string> failures;  // includes every non-finite value
  double total_ms = 0.0;

  bool ok() const { return failures.empty(); }
  void add(Row r);
};

std::string emit_json(const Report& r);
std::string emit_csv(const Report& r);
std::string emit_pretty(const Report& r);
std::string emit(const Report& r, const std::string& format);

// ---- suites (shared by the CLI and the acceptance binary) ----

std::vector<Row> suite_identities(std::uint64_t seed, int threads, const std::string& filter = "");
std::vector<Row> suite_quantitative_anchor();
std::vector<Row> suite_oracle_equivalence();
std::vector<Row> suite_afe(const std::vector<std::uint64_t>& q_list);
std::vector<Row> suite_voronoi();
std::vector<Row> suite_moment_ladder(const std::vector<std::uint64_t>& q_list,
                                     const std::vector<std::pair<std::uint64_t, std::uint64_t>>& ells,
                                     int threads, bool gate_trend);
std::vector<Row> suite_mollified(double lambda, std::uint64_t p_max);
std::vector<Row> suite_q_probe(int threads);
std::vector<Row> suite_performance(int threads);
std::vector<Row> suite_constants();
std::vector<Row> suite_main_terms(const std::vector<std::uint64_t>& q_list,
                                  const std::vector<std::pair<std::uint64_t, std::uint64_t>>& ells);
std::vector<Row> suite_exp_sums(std::uint64_t seed);

// CLI front end: dispatch a validated config; returns the process exit code
// (0 pass, 1 suite failure, 2 usage error)
int run(const RunConfig& config, std::string& output);

}  // namespace momentlab
