#include <iostream>

#include <CLI11.hpp>

#include "cli/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Graphon and graphop dynamics: simulations, symmetry audits and bound checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", GRAPHONDYN_VERSION);

  graphondyn::cli::RunOptions opts;
  std::string out_dir;
  std::size_t threads = 0;
  auto* run = app.add_subcommand("run", "Execute a JSON config and write its artifacts");
  run->add_option("config", opts.config, "Config document")->required();
  run->add_option("--out", out_dir, "Output directory (overrides the config's \"output\")");
  run->add_option("--threads", threads, "Worker threads (default: GRAPHONDYN_THREADS or 1)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : graphondyn::cli::kUsageError;
  }
  if (!out_dir.empty()) opts.out_dir = out_dir;
  if (threads > 0) opts.threads = threads;
  return graphondyn::cli::run(opts, std::cout, std::cerr);
}
