#pragma once

// Run configuration: a flat `key = value` text file.
//
//   # two eavesdroppers, symmetric strategies
//   basis = xy
//   d = 0.1, 0.2            # shorthand for eve.1.d, eve.2.d
//   eve.3.delta_uv = 0.3    # asymmetric eavesdropper: both keys required
//   eve.3.d_xy = 0.05
//   sweep.eve = 1           # sweep / diagram only
//   sweep.start = 0
//   sweep.stop = 0.5
//   sweep.step = 0.01
//
// See README.md for the full key list.

#include "eavesim/attack_model.hpp"
#include "eavesim/verification.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eavesim {

enum class Mode { analyze, sweep, diagram, verify };
enum class OutputFormat { csv, json };

const char* to_string(Mode m);
const char* to_string(OutputFormat f);
std::optional<Mode> parse_mode(const std::string& text);
std::optional<OutputFormat> parse_format(const std::string& text);

// The swept eavesdropper uses a symmetric strategy with disturbance running
// from start to stop (inclusive) in increments of step.
struct SweepSpec {
  int eve = 1;
  double start = 0.0;
  double stop = 0.5;
  double step = 0.01;

  std::vector<double> grid() const;
};

struct RunConfig {
  Mode mode = Mode::analyze;
  AttackScenario scenario;
  std::optional<SweepSpec> sweep;
  std::string output;  // empty: standard output
  OutputFormat format = OutputFormat::json;
  std::uint64_t seed = 1;
  VerifyOptions verify;
  std::string source;  // where the config came from, for diagnostics
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

// `mode` comes from the command line; a `mode` key in the file must agree.
RunConfig parse_config(std::istream& in, Mode mode, const std::string& source = "<config>");
RunConfig load_config(const std::string& path, Mode mode);

}  // namespace eavesim
