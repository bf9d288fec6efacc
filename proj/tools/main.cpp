#include <CLI11.hpp>
#include <iostream>

#include "asyncbcd/app/checks.hpp"
#include "asyncbcd/app/commands.hpp"

int main(int argc, char** argv) {
  using namespace asyncbcd::app;
  CLI::App app{"Asynchronous block coordinate descent simulator"};
  app.require_subcommand(1);

  std::string config, param, suite, in, svg, out_dir;
  std::vector<std::string> values;

  auto* run = app.add_subcommand("run", "Run one simulation from a config file");
  run->add_option("--config", config, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory (overrides output.directory)");

  auto* sweep = app.add_subcommand("sweep", "Run one simulation per parameter value");
  sweep->add_option("--config", config, "Base config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--param", param, "Parameter to vary")->required()->check(CLI::IsMember(sweep_params()));
  sweep->add_option("--values", values, "Comma-separated values")->required()->delimiter(',')->allow_extra_args(false);

  auto* check = app.add_subcommand("check", "Run a property suite over the built-in grid");
  check->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(check_suites()));

  auto* report = app.add_subcommand("report", "Render a trace CSV as SVG");
  report->add_option("--in", in, "Trace or sweep CSV")->required()->check(CLI::ExistingFile);
  report->add_option("--svg", svg, "Output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run)
      return cmd_run(config, out_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(out_dir),
                     std::cout, std::cerr);
    if (*sweep) {
      std::erase(values, std::string());
      return cmd_sweep(config, param, values, std::cout, std::cerr);
    }
    if (*check) return run_check_suite(suite, std::cout);
    if (*report) return cmd_report(in, svg, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRun;
  }
  return kExitConfig;
}
