#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "grandmorrey/config.hpp"
#include "grandmorrey/errors.hpp"
#include "grandmorrey/experiment.hpp"
#include "grandmorrey/report.hpp"
#include "grandmorrey/version.hpp"

// exit 0: every check passed; 1: some check failed; 2: any error
int main(int argc, char** argv) {
  CLI::App app{"grand Morrey norms, operators and inequality checks on finite spaces"};
  app.set_version_flag("--version", grandmorrey::kVersion);
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "execute an experiment config");
  std::string config_path, out_path, format;
  double kappa = 0.0;
  int eps_grid = 0;
  std::uint64_t seed = 0;
  run->add_option("config", config_path, "key = value experiment file")->required();
  auto* o_out = run->add_option("--out", out_path, "write the report here instead of stdout");
  auto* o_fmt = run->add_option("--format", format, "json or csv");
  auto* o_kap = run->add_option("--kappa", kappa, "slack for explicit-constant checks");
  auto* o_eps = run->add_option("--eps-grid", eps_grid, "grid size for the grand-norm sup");
  auto* o_seed = run->add_option("--seed", seed, "test-family seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    grandmorrey::Config cfg = grandmorrey::Config::load(config_path);
    if (o_fmt->count()) cfg.set("output.format", format);
    if (o_out->count()) cfg.set("output.path", out_path);
    if (o_kap->count()) cfg.set("kappa", std::to_string(kappa));
    if (o_eps->count()) cfg.set("eps_grid", std::to_string(eps_grid));
    if (o_seed->count()) cfg.set("family.seed", std::to_string(seed));

    grandmorrey::RunResult rr = grandmorrey::run_experiment(cfg);
    std::string text = grandmorrey::emit_report(rr.report, rr.format);
    if (rr.out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(rr.out_path, std::ios::binary);
      if (!out) throw grandmorrey::IoError("cannot open output: " + rr.out_path);
      out << text;
      if (!out) throw grandmorrey::IoError("write failed: " + rr.out_path);
    }
    return rr.report.all_pass() ? 0 : 1;
  } catch (const grandmorrey::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
