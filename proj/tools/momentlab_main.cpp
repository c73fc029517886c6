// momentlab: verification lab for twisted and mollified fourth moments of
// Dirichlet L-functions. Subcommands run identity suites, main-term
// assemblies, brute-force moment ladders, the mollified asymptotic, the
// combinatorial-constant table, Voronoi closure and exponential-sum checks.
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "momentlab/report.hpp"

namespace {

bool parse_ell_pairs(const std::string& spec,
                     std::vector<std::pair<std::uint64_t, std::uint64_t>>& out,
                     std::string& err) {
  // format: "1,1" or "1,1;2,3;12,5"
  out.clear();
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t semi = spec.find(';', pos);
    std::string item = spec.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
    std::size_t comma = item.find(',');
    if (comma == std::string::npos) {
      err = "bad --ell item '" + item + "' (expected l1,l2)";
      return false;
    }
    try {
      out.emplace_back(std::stoull(item.substr(0, comma)), std::stoull(item.substr(comma + 1)));
    } catch (...) {
      err = "bad --ell item '" + item + "'";
      return false;
    }
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  return !out.empty();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"momentlab - fourth-moment verification lab"};
  app.require_subcommand(1);

  momentlab::RunConfig cfg;
  std::string q_csv = "101,211,499,1009,2003";
  std::string ell_spec = "1,1";

  int threads_flag = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--q", q_csv, "comma-separated prime moduli");
    sub->add_option("--ell", ell_spec, "twist pairs, e.g. 1,1;2,3");
    sub->add_option("--lambda", cfg.lambda, "mollifier exponent lambda");
    sub->add_option("--pmax", cfg.p_max, "Euler-product truncation");
    sub->add_option("--threads", threads_flag, "worker threads (default MOMENT_LAB_THREADS or 1)");
    sub->add_option("--precision", cfg.precision, "double | extended")
        ->check(CLI::IsMember({"double", "extended"}));
    sub->add_option("--format", cfg.format, "json | csv | pretty")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));
    sub->add_option("--seed", cfg.seed, "seed for randomized property tests");
    sub->add_option("--suite", cfg.suite_filter, "substring filter for identity suites");
  };

  for (const char* name : {"identities", "main-terms", "moment-ladder", "mollified", "constants",
                           "voronoi", "exp-sums"})
    add_common(app.add_subcommand(name));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();

  // aggregate config validation into one message
  std::string err;
  cfg.q_list.clear();
  std::size_t pos = 0;
  while (pos < q_csv.size()) {
    std::size_t comma = q_csv.find(',', pos);
    std::string item = q_csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      cfg.q_list.push_back(std::stoull(item));
    } catch (...) {
      err += "bad --q item '" + item + "'; ";
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  std::string ell_err;
  if (!parse_ell_pairs(ell_spec, cfg.ell_pairs, ell_err)) err += ell_err + "; ";
  if (cfg.lambda <= 0.0) err += "--lambda must be positive; ";
  if (threads_flag > 0) {
    cfg.threads = threads_flag;
  } else if (const char* env = std::getenv("MOMENT_LAB_THREADS")) {
    cfg.threads = std::max(1, std::atoi(env));
  } else {
    cfg.threads = 1;
  }
  if (!err.empty()) {
    std::cerr << "invalid configuration: " << err << "\n";
    return 2;
  }

  std::string out;
  int code = momentlab::run(cfg, out);
  std::cout << out;
  return code;
}
