// specband: spectral-band experiments for discretized Schrodinger operators.
//
// Usage:
//   specband <command> [--config file.json] [--out dir] [--seed N]
//            [--format json|csv|both] [--negative-control]
//
// Commands: validate-dyadic, decay, mehler, gaussian-bound, hebisch,
//           equivalence, maximal, sobolev, all.
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 usage/config error.
// SPECBAND_THREADS caps the worker count (BLAS and internal pools).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "specband/config.hpp"
#include "specband/verify.hpp"

namespace {

void cap_blas_threads() {
  if (const char* env = std::getenv("SPECBAND_THREADS")) {
    // Must happen before the first BLAS call.
    setenv("OPENBLAS_NUM_THREADS", env, 0);
    setenv("OMP_NUM_THREADS", env, 0);
  }
}

std::string now_string() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[64];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  cap_blas_threads();

  CLI::App app{"spectral functional calculus experiments for H = -Lap + V"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string config_path;
  std::string out_dir;
  std::string format;
  std::uint64_t seed = 0;
  bool have_seed = false;
  bool negative_control = false;

  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--out", out_dir, "output directory (overrides config)");
  app.add_option("--format", format, "json|csv|both (overrides config)")
      ->check(CLI::IsMember({"json", "csv", "both"}));
  app.add_option("--seed", seed, "corpus seed (overrides config)")
      ->each([&](const std::string&) { have_seed = true; });
  app.add_flag("--negative-control", negative_control,
               "run the configured negative control (validate-dyadic, decay)");

  const std::vector<std::string> commands = {
      "validate-dyadic", "decay",       "mehler",  "gaussian-bound",
      "hebisch",         "equivalence", "maximal", "sobolev",
      "all"};
  for (const auto& c : commands) app.add_subcommand(c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints help or the parse diagnostic
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    specband::RunConfig cfg = config_path.empty()
                                  ? specband::default_config()
                                  : specband::load_config(config_path);
    if (!out_dir.empty()) cfg.output.dir = out_dir;
    if (!format.empty()) cfg.output.format = format;
    if (have_seed) cfg.corpus.seed = seed;
    if (negative_control) cfg.negative_control = true;

    const std::string name = app.get_subcommands().front()->get_name();
    std::cerr << "specband " << name << " started " << now_string() << "\n";
    const int rc = specband::run_command(name, cfg, std::cout);
    std::cerr << "specband " << name << " finished " << now_string()
              << " rc=" << rc << "\n";
    return rc;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
