// exotori verify <scenario> [--r2 x] [--grid n] [--tol-flux x] [--out dir] [--plots] [--seed n]
// exit 0: all checks pass, 1: a check failed, 2: usage / construction error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "exotori/numkernel.hpp"
#include "exotori/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

void print_scenarios(std::ostream& out) {
  out << "scenarios:";
  for (const auto& n : exotori::scenario_names()) out << ' ' << n;
  out << '\n';
}

bool write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
  return static_cast<bool>(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of exotic monotone tori isotopies"};
  app.require_subcommand(0, 1);
  bool list = false;
  app.add_flag("--list", list, "List scenarios and exit");

  exotori::RunConfig cfg;
  std::string out_dir = ".";
  auto* verify = app.add_subcommand("verify", "Run one verification scenario");
  verify->add_option("scenario", cfg.scenario, "Scenario name")->required();
  verify->add_option("--r2", cfg.r2, "Parameter r^2 of the C2 tori")->capture_default_str();
  verify->add_option("--grid", cfg.grid, "Torus grid per direction (power of two)")->capture_default_str();
  verify->add_option("--tol-flux", cfg.tol_flux, "Flux tolerance")->capture_default_str();
  verify->add_option("--out", out_dir, "Output directory for report.json and CSVs")->capture_default_str();
  verify->add_flag("--plots", cfg.plots, "Also write CSV plot data");
  verify->add_option("--seed", cfg.seed, "Seed for randomized checks")->capture_default_str();
  verify->add_flag("--list", list, "List scenarios and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (list) {
    print_scenarios(std::cout);
    return 0;
  }
  if (!verify->parsed()) {
    std::cerr << app.help();
    return 2;
  }

  exotori::PipelineResult result;
  try {
    result = exotori::run_stage_pipeline(cfg);
  } catch (const exotori::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (std::string_view(e.what()).find("scenario") != std::string_view::npos) print_scenarios(std::cerr);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  const fs::path dir(out_dir);
  bool ok = write_file(dir / "report.json", result.report.to_json().dump(2) + "\n");
  for (const auto& p : result.plots) ok = write_file(dir / p.name, p.csv) && ok;
  if (!ok) {
    std::cerr << "error: cannot write to " << out_dir << '\n';
    return 2;
  }

  std::cout << result.report.summary();
  if (result.report.aborted()) return 2;
  return result.report.verdict() ? 0 : 1;
}
