#pragma once

// The four run modes behind the `eavesim` command line tool.

#include "eavesim/config.hpp"
#include "eavesim/information_analysis.hpp"
#include "eavesim/verification.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace eavesim {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;

// Decimal text with 12 significant digits.
std::string format_number(double value);

// The scenario with the swept eavesdropper set to the symmetric strategy `d`.
AttackScenario scenario_at(const RunConfig& config, double d);

// One full analysis per sweep grid point, in grid order.
std::vector<AnalysisReport> sweep_reports(const RunConfig& config);

struct DiagramRow {
  double d_var = 0.0;
  double d_b = 0.0;
  std::vector<double> i_ae;
  double i_ab = 0.0;
  std::optional<double> i_opt;
};

std::vector<DiagramRow> diagram_rows(const RunConfig& config);

// Header `d_var,d_b,i_ae_1,...,i_ae_n,i_ab,i_opt`.
void write_diagram_csv(std::ostream& out, std::span<const DiagramRow> rows, int num_eves);

// Serialized report; see README.md for the schema.
std::string analysis_json(const RunConfig& config, const AnalysisReport& report);

int run_analyze(const RunConfig& config, std::ostream& out);
int run_sweep(const RunConfig& config, std::ostream& out);
int run_diagram(const RunConfig& config, std::ostream& out);
// Summary lines go to `console`; a structured copy goes to `out` when given.
int run_verify(const RunConfig& config, std::ostream& console, std::ostream* out);

// Dispatches on config.mode and writes to config.output (or `console`).
int run(const RunConfig& config, std::ostream& console);

}  // namespace eavesim
