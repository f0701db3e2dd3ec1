#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cavicool/errors.hpp"
#include "cavicool/version.hpp"
#include "commands.hpp"

namespace {

int exit_code(cavicool::error_kind kind) {
  switch (kind) {
    case cavicool::error_kind::config:
      return 2;
    case cavicool::error_kind::validation:
      return 3;
    case cavicool::error_kind::numerical:
      return 4;
  }
  return 4;
}

}  // namespace

int main(int argc, char** argv) {
  using cavicool::cli::CommandContext;

  CLI::App app{"Collective cavity cooling simulator"};
  app.set_version_flag("--version", std::string(cavicool::version_string));
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::vector<std::string> overrides;
  CommandContext ctx;
  app.add_option("--config", config_path, "flat key = value config file");
  app.add_option("--set", overrides,
                 "override one config key, e.g. --set params.nu=2 (repeatable)");
  app.add_option("--out", ctx.out_dir, "output directory (default 'out')");
  app.add_option("--workers", ctx.workers, "worker threads for sweep mode")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", ctx.seed, "seed for any randomized scan");

  CLI::App* sub_oracle =
      app.add_subcommand("oracle", "integrate the truncated master equation");
  CLI::App* sub_rate =
      app.add_subcommand("rate", "integrate the expectation-value model");
  CLI::App* sub_displacement =
      app.add_subcommand("displacement", "classical displacement stage");
  CLI::App* sub_protocol =
      app.add_subcommand("protocol", "cyclic cooling protocol and floor");
  CLI::App* sub_sweep =
      app.add_subcommand("sweep", "parameter sweep of rate and floor");
  CLI::App* sub_verify =
      app.add_subcommand("verify", "run built-in consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (!config_path.empty()) {
      cavicool::cli::load_config_file(ctx.cfg, config_path);
    }
    for (const std::string& assignment : overrides) {
      const auto eq = assignment.find('=');
      if (eq == std::string::npos) {
        throw cavicool::config_error(
            "--set expects key=value, got '" + assignment + "'");
      }
      cavicool::cli::apply_assignment(ctx.cfg, assignment.substr(0, eq),
                                      assignment.substr(eq + 1), "--set");
    }

    if (sub_oracle->parsed()) {
      cavicool::cli::cmd_oracle(ctx);
    } else if (sub_rate->parsed()) {
      cavicool::cli::cmd_rate(ctx);
    } else if (sub_displacement->parsed()) {
      cavicool::cli::cmd_displacement(ctx);
    } else if (sub_protocol->parsed()) {
      cavicool::cli::cmd_protocol(ctx);
    } else if (sub_sweep->parsed()) {
      cavicool::cli::cmd_sweep(ctx);
    } else if (sub_verify->parsed()) {
      cavicool::cli::cmd_verify(ctx);
    }
    return 0;
  } catch (const cavicool::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
