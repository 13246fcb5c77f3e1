// eavesim: sequential-eavesdropper BB84 attack simulator.
//
// Usage:
//   eavesim <analyze|sweep|diagram|verify> --config <path>
//           [--output <path>] [--format csv|json] [--seed <int>]
//
// Exit codes: 0 success, 1 usage or configuration error, 2 verification
// failure.

#include "eavesim/config.hpp"
#include "eavesim/runner.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Simulate n eavesdroppers attacking BB84 with the optimal individual strategy"};
  app.set_version_flag("--version", eavesim::kVersion);

  std::string mode_text;
  std::string config_path;
  std::string output;
  std::string format;
  long long seed = -1;
  app.add_option("mode", mode_text, "analyze, sweep, diagram or verify")
      ->required()
      ->check(CLI::IsMember({"analyze", "sweep", "diagram", "verify"}));
  app.add_option("--config", config_path, "run configuration file")->required();
  app.add_option("--output", output, "output file (default: standard output)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "seed for randomized checks")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? eavesim::kExitOk : eavesim::kExitUsage;
  }

  try {
    eavesim::RunConfig config = eavesim::load_config(config_path, *eavesim::parse_mode(mode_text));
    if (!output.empty()) config.output = output;
    if (!format.empty()) config.format = *eavesim::parse_format(format);
    if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
    return eavesim::run(config, std::cout);
  } catch (const eavesim::ConfigError& e) {
    std::cerr << "eavesim: " << e.what() << "\n";
  } catch (const eavesim::CapacityError& e) {
    std::cerr << "eavesim: capacity error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "eavesim: " << e.what() << "\n";
  }
  return eavesim::kExitUsage;
}
