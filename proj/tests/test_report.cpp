#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "momentlab/report.hpp"

using namespace momentlab;

TEST_CASE("json emission round-trips and respects the schema") {
  Report rep;
  rep.config.command = "constants";
  Row r;
  r.suite = "demo";
  r.name = "row1";
  r.fields = {{"value", 0.1234567890123456789}, {"count", std::int64_t(7)},
              {"flag", true}, {"label", std::string("x\"y")}};
  rep.add(r);
  rep.total_ms = 1.5;
  std::string js = emit_json(rep);
  auto parsed = nlohmann::json::parse(js);
  CHECK(parsed["version"] == "1");
  CHECK(parsed["results"].size() == 1);
  CHECK(parsed["results"][0]["name"] == "row1");
  CHECK(parsed["results"][0]["count"] == 7);
  CHECK(parsed["results"][0]["flag"] == true);
  CHECK(parsed["failures"].empty());
  // 17-significant-digit float round-trip preserves the double exactly
  double back = parsed["results"][0]["value"].get<double>();
  CHECK(back == 0.1234567890123456789);
}

TEST_CASE("non-finite values are failures, never numbers") {
  Report rep;
  Row r;
  r.suite = "demo";
  r.name = "bad";
  r.fields = {{"value", std::nan("")}};
  rep.add(r);
  CHECK_FALSE(rep.ok());
  std::string js = emit_json(rep);
  CHECK(js.find("nan") == std::string::npos);
  auto parsed = nlohmann::json::parse(js);
  CHECK(parsed["failures"].size() >= 1);
  CHECK(parsed["results"][0]["value"] == "non-finite");
}

TEST_CASE("empty result set still emits valid json") {
  Report rep;
  std::string js = emit_json(rep);
  auto parsed = nlohmann::json::parse(js);
  CHECK(parsed["results"].empty());
  CHECK(parsed["failures"].empty());
}

TEST_CASE("csv header stable and rows align") {
  Report rep;
  Row r;
  r.suite = "s";
  r.name = "n";
  r.fields = {{"brute", 1.0}, {"predicted", 2.0}, {"rel_error", 0.5}};
  rep.add(r);
  std::string csv = emit_csv(rep);
  CHECK(csv.rfind("suite,name,pass,ms,brute,predicted,rel_error\n", 0) == 0);
}

TEST_CASE("identities-style commands are byte-deterministic given a seed") {
  RunConfig cfg;
  cfg.command = "exp-sums";
  cfg.format = "json";
  cfg.seed = 1;
  std::string out1, out2;
  CHECK(run(cfg, out1) == 0);
  CHECK(run(cfg, out2) == 0);
  CHECK(out1 == out2);
}

TEST_CASE("run dispatch: exit codes") {
  RunConfig cfg;
  cfg.command = "constants";
  cfg.format = "json";
  std::string out;
  CHECK(run(cfg, out) == 0);
  CHECK(nlohmann::json::parse(out)["results"].size() > 10);
  cfg.command = "nonsense";
  CHECK(run(cfg, out) == 2);
}
