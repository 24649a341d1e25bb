#include <doctest.h>

#include <set>

#include "nusq/verify.hpp"

using namespace nusq;

TEST_CASE("registry") {
  const auto& reg = theorem_registry();
  CHECK(reg.size() == 22);
  std::set<std::string> ids;
  for (const auto& c : reg) {
    ids.insert(c.id);
    CHECK(c.default_max > 0);
    CHECK_FALSE(c.description.empty());
  }
  CHECK(ids.size() == 22);
  for (const char* id : {"thm-2.4", "thm-2.6", "thm-2.8", "lem-2.5", "lem-2.7-change", "lem-soleqn", "prop-2.3",
                         "thm-3.2-f", "thm-3.2-g", "cor-heptagonal", "lem-rngenf", "phi-series", "shimura-series",
                         "thm-octause", "lem-penta-tec", "thm-penta-octa", "tri-3", "tri-k", "pent-3", "pent-k",
                         "oct-3", "oct-k"})
    CHECK(ids.count(id) == 1);
  CHECK_THROWS_AS(find_check("thm-9.9"), std::invalid_argument);
  CHECK_THROWS_AS(run_verify("nope", {}), std::invalid_argument);
}

TEST_CASE("every check passes at a small bound") {
  for (const auto& c : theorem_registry()) {
    RunConfig cfg;
    cfg.max_bound = std::min<u64>(c.default_max, 1000);
    cfg.threads = 2;
    const auto r = run_verify(c.id, cfg);
    INFO(r.to_text(false));
    CHECK(r.pass);
    CHECK(r.id == c.id);
    CHECK_FALSE(r.cases.empty());
  }
}

TEST_CASE("reports are deterministic without timing") {
  RunConfig a;
  a.max_bound = 2000;
  a.threads = 1;
  RunConfig b = a;
  b.threads = 4;
  const auto ra = run_verify("thm-octause", a);
  const auto rb = run_verify("thm-octause", b);
  CHECK(ra.to_json(false).dump() == rb.to_json(false).dump());
  CHECK(ra.to_text(false) == rb.to_text(false));
  CHECK(ra.to_csv() == rb.to_csv());
  CHECK_FALSE(ra.to_json(false).contains("elapsed_ms"));
  CHECK(ra.to_json(true).contains("elapsed_ms"));
  CHECK(ra.to_csv().rfind(VerifyReport::csv_header() + "\n", 0) == 0);

  RunConfig s1;
  s1.seed = 7;
  s1.max_bound = 500;
  CHECK(run_verify("thm-penta-octa", s1).to_json(false) == run_verify("thm-penta-octa", s1).to_json(false));
}

TEST_CASE("a single prime for the sublattice ratios") {
  RunConfig cfg;
  cfg.prime = 5;
  const auto r = run_verify("prop-2.3", cfg);
  CHECK(r.pass);
  cfg.prime = 4;
  CHECK_THROWS_AS(run_verify("prop-2.3", cfg), std::invalid_argument);
}
