#include "eavesim/runner.hpp"

#include "eavesim/closed_form.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

namespace eavesim {

namespace {

using nlohmann::ordered_json;

// Evaluates fn(i) for i in [0, count) on a small thread pool; results keep
// index order.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, Fn fn) {
  std::vector<T> out(count);
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1U, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

ordered_json maybe(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json input_json(const RunConfig& config, const AttackScenario& scenario) {
  ordered_json eves = ordered_json::array();
  for (const auto& e : scenario.eves) {
    eves.push_back({{"delta_uv", e.delta_uv},
                    {"d_xy", e.d_xy},
                    {"d_uv", e.d_uv()},
                    {"symmetric", e.symmetric()}});
  }
  ordered_json in = {{"basis", to_string(scenario.signal_basis)},
                     {"n", scenario.num_eves()},
                     {"max_qubits", scenario.max_qubits},
                     {"eves", eves},
                     {"seed", config.seed}};
  if (config.sweep) {
    in["sweep"] = {{"eve", config.sweep->eve},
                   {"start", config.sweep->start},
                   {"stop", config.sweep->stop},
                   {"step", config.sweep->step}};
  }
  return in;
}

ordered_json report_json(const AnalysisReport& report) {
  ordered_json eves = ordered_json::array();
  for (const auto& e : report.eves) {
    ordered_json outcomes = ordered_json::array();
    for (std::size_t l = 0; l < kOutcomes; ++l) {
      const auto& t = e.table;
      outcomes.push_back({{"lambda", l},
                          {"reachable", t.reachable[l]},
                          {"p", {t.p[l][0], t.p[l][1]}},
                          {"q", t.q[l]},
                          {"posterior", t.reachable[l] ? ordered_json{t.posterior[0][l], t.posterior[1][l]}
                                                       : ordered_json(nullptr)},
                          {"gain", t.reachable[l] ? ordered_json(t.gain[l]) : ordered_json(nullptr)}});
    }
    eves.push_back({{"index", e.index},
                    {"gain", e.gain},
                    {"gain_spread", e.gain_spread},
                    {"mutual_information", e.mutual_information},
                    {"povm_degenerate", e.povm_degenerate},
                    {"povm_eigenvector_residual", e.povm_eigenvector_residual},
                    {"outcomes", outcomes}});
  }
  ordered_json out = {{"provenance", "numeric"},
                      {"symmetric", report.symmetric},
                      {"eves", eves},
                      {"d_b", report.d_b},
                      {"d_b_xy", report.d_b_xy},
                      {"d_b_uv", report.d_b_uv},
                      {"i_ab", report.i_ab},
                      {"i_opt", maybe(report.i_opt)}};

  // Closed-form values exist for symmetric x-y attacks only.
  const auto& s = report.scenario;
  if (report.symmetric && s.signal_basis == Basis::xy && s.fault == CircuitFault::none) {
    std::vector<double> d;
    for (const auto& e : s.eves) d.push_back(e.d_xy);
    const closed_form::SymmetricDisturbances sd(d);
    out["closed_form"] = {{"provenance", "closed_form"},
                          {"gains", closed_form::gains(sd)},
                          {"mutual_informations", closed_form::mutual_informations(sd)},
                          {"d_b", closed_form::bob_error_recursive(sd)}};
  } else {
    out["closed_form"] = nullptr;
  }
  return out;
}

ordered_json envelope(const RunConfig& config) {
  return {{"schema_version", kSchemaVersion},
          {"tool", "eavesim"},
          {"version", kVersion},
          {"mode", to_string(config.mode)}};
}

void require_sweep(const RunConfig& config) {
  if (!config.sweep) throw std::invalid_argument("sweep specification missing");
  if (config.sweep->eve > config.scenario.num_eves())
    throw std::invalid_argument("swept eavesdropper outside the scenario");
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

AttackScenario scenario_at(const RunConfig& config, double d) {
  require_sweep(config);
  AttackScenario s = config.scenario;
  s.eves[static_cast<std::size_t>(config.sweep->eve - 1)] = EveParams::from_disturbance(d);
  return s;
}

std::vector<AnalysisReport> sweep_reports(const RunConfig& config) {
  require_sweep(config);
  config.scenario.validate();
  const auto grid = config.sweep->grid();
  return parallel_map<AnalysisReport>(grid.size(),
                                      [&](std::size_t i) { return analyze(scenario_at(config, grid[i])); });
}

std::vector<DiagramRow> diagram_rows(const RunConfig& config) {
  const auto grid = config.sweep ? config.sweep->grid() : std::vector<double>{};
  const auto reports = sweep_reports(config);
  std::vector<DiagramRow> rows;
  rows.reserve(reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    DiagramRow row;
    row.d_var = grid[i];
    row.d_b = reports[i].d_b;
    for (const auto& e : reports[i].eves) row.i_ae.push_back(e.mutual_information);
    row.i_ab = reports[i].i_ab;
    row.i_opt = reports[i].i_opt;
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_diagram_csv(std::ostream& out, std::span<const DiagramRow> rows, int num_eves) {
  out << "d_var,d_b";
  for (int j = 1; j <= num_eves; ++j) out << ",i_ae_" << j;
  out << ",i_ab,i_opt\n";
  for (const auto& row : rows) {
    out << format_number(row.d_var) << ',' << format_number(row.d_b);
    for (double v : row.i_ae) out << ',' << format_number(v);
    out << ',' << format_number(row.i_ab) << ','
        << (row.i_opt ? format_number(*row.i_opt) : std::string("nan")) << '\n';
  }
}

std::string analysis_json(const RunConfig& config, const AnalysisReport& report) {
  ordered_json doc = envelope(config);
  doc["input"] = input_json(config, report.scenario);
  doc["report"] = report_json(report);
  return doc.dump(2) + "\n";
}

int run_analyze(const RunConfig& config, std::ostream& out) {
  if (config.format != OutputFormat::json)
    throw std::invalid_argument("analyze writes a json report; csv is available in sweep and diagram modes");
  out << analysis_json(config, analyze(config.scenario));
  return kExitOk;
}

int run_sweep(const RunConfig& config, std::ostream& out) {
  const auto grid = config.sweep ? config.sweep->grid() : std::vector<double>{};
  const auto reports = sweep_reports(config);
  const int n = config.scenario.num_eves();
  if (config.format == OutputFormat::json) {
    ordered_json doc = envelope(config);
    doc["input"] = input_json(config, config.scenario);
    ordered_json points = ordered_json::array();
    for (std::size_t i = 0; i < reports.size(); ++i)
      points.push_back({{"d_var", grid[i]}, {"report", report_json(reports[i])}});
    doc["points"] = points;
    out << doc.dump(2) << "\n";
    return kExitOk;
  }
  out << "d_var,d_b,d_b_xy,d_b_uv";
  for (int j = 1; j <= n; ++j) out << ",g_" << j;
  for (int j = 1; j <= n; ++j) out << ",i_ae_" << j;
  out << ",i_ab,i_opt\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    out << format_number(grid[i]) << ',' << format_number(r.d_b) << ',' << format_number(r.d_b_xy) << ','
        << format_number(r.d_b_uv);
    for (const auto& e : r.eves) out << ',' << format_number(e.gain);
    for (const auto& e : r.eves) out << ',' << format_number(e.mutual_information);
    out << ',' << format_number(r.i_ab) << ',' << (r.i_opt ? format_number(*r.i_opt) : "nan") << '\n';
  }
  return kExitOk;
}

int run_diagram(const RunConfig& config, std::ostream& out) {
  if (config.format != OutputFormat::csv) throw std::invalid_argument("diagram writes csv only");
  const auto rows = diagram_rows(config);
  write_diagram_csv(out, rows, config.scenario.num_eves());
  return kExitOk;
}

int run_verify(const RunConfig& config, std::ostream& console, std::ostream* out) {
  const auto summary = run_verification(config.verify, config.seed);
  for (const auto& f : summary.families) {
    console << (f.passed ? "PASS " : "FAIL ") << f.name << "  max_dev=" << format_number(f.max_deviation)
            << "  tol=" << format_number(f.tolerance) << "  checks=" << f.checks;
    if (!f.passed) console << "  at " << f.worst_point;
    console << "\n";
  }
  console << (summary.passed() ? "verification passed" : "verification FAILED") << "\n";

  if (out) {
    if (config.format == OutputFormat::json) {
      ordered_json doc = envelope(config);
      doc["seed"] = config.seed;
      ordered_json families = ordered_json::array();
      for (const auto& f : summary.families) {
        families.push_back({{"name", f.name},
                            {"passed", f.passed},
                            {"max_deviation", f.max_deviation},
                            {"tolerance", f.tolerance},
                            {"checks", f.checks},
                            {"worst_point", f.worst_point}});
      }
      doc["families"] = families;
      doc["passed"] = summary.passed();
      *out << doc.dump(2) << "\n";
    } else {
      *out << "family,passed,max_deviation,tolerance,checks\n";
      for (const auto& f : summary.families) {
        *out << f.name << ',' << (f.passed ? "true" : "false") << ',' << format_number(f.max_deviation) << ','
             << format_number(f.tolerance) << ',' << f.checks << '\n';
      }
    }
  }
  return summary.passed() ? kExitOk : kExitVerifyFailed;
}

int run(const RunConfig& config, std::ostream& console) {
  std::ofstream file;
  std::ostream* out = &console;
  if (!config.output.empty()) {
    file.open(config.output, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file '" + config.output + "'");
    out = &file;
  }
  switch (config.mode) {
    case Mode::analyze: return run_analyze(config, *out);
    case Mode::sweep: return run_sweep(config, *out);
    case Mode::diagram: return run_diagram(config, *out);
    case Mode::verify: return run_verify(config, console, config.output.empty() ? nullptr : out);
  }
  return kExitUsage;
}

}  // namespace eavesim
