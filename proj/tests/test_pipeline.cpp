#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "exotori/pipeline.hpp"

using namespace exotori;

TEST_CASE("scenario list and config validation") {
  CHECK(scenario_names() == std::vector<std::string>{"sanity", "c2-prop", "cp2-theorem", "s2s2-theorem"});
  RunConfig cfg;
  CHECK_NOTHROW(validate(cfg));

  auto bad = cfg;
  bad.scenario = "nonsense";
  CHECK_THROWS_AS(validate(bad), PreconditionError);
  CHECK_THROWS_AS(run_stage_pipeline(bad), PreconditionError);
  bad = cfg;
  bad.r2 = -1.0;
  CHECK_THROWS_AS(validate(bad), PreconditionError);
  bad.r2 = std::nan("");
  CHECK_THROWS_AS(validate(bad), PreconditionError);
  bad = cfg;
  bad.grid = 48;
  CHECK_THROWS_AS(validate(bad), PreconditionError);
  bad.grid = 16;
  CHECK_THROWS_AS(validate(bad), PreconditionError);
  bad = cfg;
  bad.tol_flux = 0.0;
  CHECK_THROWS_AS(validate(bad), PreconditionError);
  bad = cfg;
  bad.time_samples = 1;
  CHECK_THROWS_AS(validate(bad), PreconditionError);
}

TEST_CASE("sanity scenario passes, negative controls included") {
  const auto res = run_stage_pipeline(RunConfig{});
  const auto& rep = res.report;
  CHECK_FALSE(rep.aborted());
  CHECK(rep.verdict());
  CHECK(res.plots.empty());
  int controls = 0;
  for (const auto& c : rep.checks()) {
    CHECK_MESSAGE(c.pass, c.name);
    if (c.comparison == ">" && c.name.rfind("negative control", 0) == 0) ++controls;
  }
  CHECK(controls == 3);
  REQUIRE(rep.find("area of a CP2 line") != nullptr);
  CHECK(std::abs(rep.find("area of a CP2 line")->value - 2.0) < 1e-8);

  const auto j = rep.to_json();
  CHECK(j["schema_version"] == 1);
  CHECK(j["scenario"] == "sanity");
  CHECK(j["verdict"] == "pass");
  CHECK(j["convention"]["hamiltonian_sign"] == kHamiltonianSign);
  CHECK(j["checks"].size() == rep.checks().size());
}

TEST_CASE("reports are deterministic") {
  RunConfig cfg;
  cfg.seed = 7;
  const auto a = run_stage_pipeline(cfg).report.to_json().dump();
  const auto b = run_stage_pipeline(cfg).report.to_json().dump();
  CHECK(a == b);
}

TEST_CASE("an aborted report fails and says why") {
  VerificationReport rep("c2-prop");
  rep.less("something", 0.0, 1.0, "-", "closed form");
  CHECK(rep.verdict());
  rep.abort("curve_isotopy: curve leaves the half-disc");
  CHECK(rep.aborted());
  CHECK_FALSE(rep.verdict());
  const auto j = rep.to_json();
  CHECK(j["verdict"] == "fail");
  CHECK(j["aborted"] == "curve_isotopy: curve leaves the half-disc");
  CHECK(j["checks"].size() == 1);
}

TEST_CASE("failing checks fail the verdict") {
  VerificationReport rep("x");
  rep.near("target", 2.0, 1.0, 1e-6, "-", "quadrature");
  rep.greater("control", 1e-9, 1e-4, "-", "negative control");
  CHECK_FALSE(rep.checks()[0].pass);
  CHECK(rep.checks()[0].residual == doctest::Approx(1.0));
  CHECK_FALSE(rep.checks()[1].pass);
  CHECK_FALSE(rep.verdict());
  CHECK(rep.summary().find("FAIL") != std::string::npos);
}
