#include "eavesim/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace eavesim {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string value;
  int line = 0;
};

class Parser {
 public:
  Parser(std::istream& in, std::string source) : source_(std::move(source)) {
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
      ++line;
      if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      const std::string text = trim(raw);
      if (text.empty()) continue;
      const auto eq = text.find('=');
      if (eq == std::string::npos) fail(line, "expected 'key = value', got '" + text + "'");
      const std::string key = trim(text.substr(0, eq));
      const std::string value = trim(text.substr(eq + 1));
      if (key.empty()) fail(line, "missing key before '='");
      if (value.empty()) fail(line, "missing value for '" + key + "'");
      if (entries_.count(key)) {
        fail(line, "duplicate key '" + key + "' (first set on line " +
                       std::to_string(entries_[key].line) + ")");
      }
      entries_[key] = {value, line};
    }
  }

  [[noreturn]] void fail(int line, const std::string& message) const {
    throw ConfigError(source_, line, message);
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  int line_of(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }
  const std::map<std::string, Entry>& entries() const { return entries_; }

  std::string text(const std::string& key) {
    used_.insert(key);
    return entries_.at(key).value;
  }

  double number(const std::string& key) { return parse_number(text(key), line_of(key), key); }

  long long integer(const std::string& key) {
    const std::string value = text(key);
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
      fail(line_of(key), "'" + key + "' expects an integer, got '" + value + "'");
    return out;
  }

  std::vector<double> number_list(const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(text(key));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(trim(item), line_of(key), key));
    return out;
  }

  void reject_unused() const {
    for (const auto& [key, entry] : entries_)
      if (!used_.count(key)) fail(entry.line, "unknown key '" + key + "'");
  }

 private:
  double parse_number(const std::string& value, int line, const std::string& key) const {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(out))
      fail(line, "'" + key + "' expects a number, got '" + value + "'");
    return out;
  }

  std::string source_;
  std::map<std::string, Entry> entries_;
  std::set<std::string> used_;
};

struct EveSpec {
  std::optional<double> d;
  std::optional<double> delta_uv;
  std::optional<double> d_xy;
  int line = 0;
};

void check_range(Parser& p, int line, const std::string& key, double value, double lo, double hi) {
  if (value < lo || value > hi) {
    std::ostringstream os;
    os << "'" << key << "' = " << value << " outside [" << lo << ", " << hi << "]";
    p.fail(line, os.str());
  }
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " +
                         message),
      line_(line) {}

const char* to_string(Mode m) {
  switch (m) {
    case Mode::analyze: return "analyze";
    case Mode::sweep: return "sweep";
    case Mode::diagram: return "diagram";
    case Mode::verify: return "verify";
  }
  return "?";
}

const char* to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

std::optional<Mode> parse_mode(const std::string& text) {
  for (Mode m : {Mode::analyze, Mode::sweep, Mode::diagram, Mode::verify})
    if (text == to_string(m)) return m;
  return std::nullopt;
}

std::optional<OutputFormat> parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  return std::nullopt;
}

std::vector<double> SweepSpec::grid() const {
  std::vector<double> out;
  if (stop == start) return {start};
  const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
  for (long long k = 0; k <= count; ++k) {
    double value = start + static_cast<double>(k) * step;
    if (std::abs(value - stop) < 1e-9 * step) value = stop;
    out.push_back(value);
  }
  return out;
}

RunConfig parse_config(std::istream& in, Mode mode, const std::string& source) {
  Parser p(in, source);
  RunConfig cfg;
  cfg.mode = mode;
  cfg.source = source;
  cfg.format = (mode == Mode::analyze || mode == Mode::verify) ? OutputFormat::json : OutputFormat::csv;

  if (p.has("mode")) {
    const std::string m = p.text("mode");
    const auto parsed = parse_mode(m);
    if (!parsed) p.fail(p.line_of("mode"), "unknown mode '" + m + "'");
    if (*parsed != mode) {
      p.fail(p.line_of("mode"), std::string("config is for mode '") + m + "' but '" +
                                    to_string(mode) + "' was requested");
    }
  }
  if (p.has("basis")) {
    const std::string b = p.text("basis");
    if (b == "xy") cfg.scenario.signal_basis = Basis::xy;
    else if (b == "uv") cfg.scenario.signal_basis = Basis::uv;
    else p.fail(p.line_of("basis"), "basis must be 'xy' or 'uv', got '" + b + "'");
  }
  if (p.has("max_qubits")) {
    const auto q = p.integer("max_qubits");
    if (q < 1 || q > kHardMaxQubits)
      p.fail(p.line_of("max_qubits"), "max_qubits must lie in [1, " + std::to_string(kHardMaxQubits) + "]");
    cfg.scenario.max_qubits = static_cast<int>(q);
  }
  if (p.has("output")) cfg.output = p.text("output");
  if (p.has("format")) {
    const std::string f = p.text("format");
    const auto parsed = parse_format(f);
    if (!parsed) p.fail(p.line_of("format"), "format must be 'csv' or 'json', got '" + f + "'");
    cfg.format = *parsed;
  }
  if (p.has("seed")) {
    const auto s = p.integer("seed");
    if (s < 0) p.fail(p.line_of("seed"), "seed must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(s);
  }

  // Eavesdroppers.
  std::map<int, EveSpec> eves;
  if (p.has("d")) {
    const auto list = p.number_list("d");
    for (std::size_t j = 0; j < list.size(); ++j) eves[static_cast<int>(j) + 1] = {list[j], {}, {}, p.line_of("d")};
  }
  for (const auto& [key, entry] : p.entries()) {
    if (key.rfind("eve.", 0) != 0) continue;
    const auto dot = key.find('.', 4);
    const std::string index_text = key.substr(4, dot == std::string::npos ? std::string::npos : dot - 4);
    int index = 0;
    const auto [ptr, ec] = std::from_chars(index_text.data(), index_text.data() + index_text.size(), index);
    if (dot == std::string::npos || ec != std::errc{} || ptr != index_text.data() + index_text.size() ||
        index < 1)
      p.fail(entry.line, "malformed eavesdropper key '" + key + "' (expected eve.<j>.<field>, j >= 1)");
    const std::string field = key.substr(dot + 1);
    EveSpec& spec = eves[index];
    if (spec.line != 0 && spec.line == p.line_of("d"))
      p.fail(entry.line, "eavesdropper " + std::to_string(index) + " is already set by 'd' on line " +
                             std::to_string(spec.line));
    if (spec.line == 0) spec.line = entry.line;
    if (field == "d") spec.d = p.number(key);
    else if (field == "delta_uv") spec.delta_uv = p.number(key);
    else if (field == "d_xy") spec.d_xy = p.number(key);
    else p.fail(entry.line, "unknown eavesdropper field '" + field + "' (use d, delta_uv, d_xy)");
  }

  // Sweep.
  const bool wants_sweep = mode == Mode::sweep || mode == Mode::diagram;
  bool any_sweep_key = false;
  for (const auto& [key, entry] : p.entries()) {
    if (key.rfind("sweep.", 0) != 0) continue;
    any_sweep_key = true;
    if (!wants_sweep) p.fail(entry.line, "'" + key + "' is only valid in sweep and diagram modes");
  }
  if (wants_sweep) {
    if (!any_sweep_key) p.fail(0, std::string("mode '") + to_string(mode) + "' needs a sweep.eve entry");
    if (!p.has("sweep.eve")) p.fail(0, "missing 'sweep.eve'");
    SweepSpec sweep;
    sweep.eve = static_cast<int>(p.integer("sweep.eve"));
    if (sweep.eve < 1) p.fail(p.line_of("sweep.eve"), "sweep.eve must be >= 1");
    for (const char* key : {"sweep.start", "sweep.stop", "sweep.step"}) {
      if (!p.has(key)) continue;
      const double value = p.number(key);
      const std::string k = key;
      if (k == "sweep.step") {
        if (!(value > 0.0)) p.fail(p.line_of(k), "sweep.step must be positive");
        sweep.step = value;
      } else {
        check_range(p, p.line_of(k), k, value, 0.0, 0.5);
        (k == "sweep.start" ? sweep.start : sweep.stop) = value;
      }
    }
    if (sweep.start > sweep.stop) p.fail(p.line_of("sweep.start"), "sweep.start exceeds sweep.stop");
    if (eves.count(sweep.eve))
      p.fail(eves[sweep.eve].line, "eavesdropper " + std::to_string(sweep.eve) +
                                       " is swept; remove its fixed parameters");
    eves[sweep.eve] = {0.0, {}, {}, p.line_of("sweep.eve")};
    cfg.sweep = sweep;
  }

  // Verification.
  const std::map<std::string, int*> verify_ints = {
      {"verify.samples", &cfg.verify.samples},
      {"verify.max_eves", &cfg.verify.max_eves},
      {"verify.brute_force_max_eves", &cfg.verify.brute_force_max_eves},
      {"verify.brute_force_draws", &cfg.verify.brute_force_draws}};
  for (const auto& [key, entry] : p.entries()) {
    if (key.rfind("verify.", 0) != 0) continue;
    if (mode != Mode::verify) p.fail(entry.line, "'" + key + "' is only valid in verify mode");
    if (key == "verify.fault") {
      const std::string f = p.text(key);
      if (f == "none") cfg.verify.fault = CircuitFault::none;
      else if (f == "swapped_signal_cnot") cfg.verify.fault = CircuitFault::swapped_signal_cnot;
      else p.fail(entry.line, "unknown fault '" + f + "' (use none or swapped_signal_cnot)");
    } else if (const auto it = verify_ints.find(key); it != verify_ints.end()) {
      const auto value = p.integer(key);
      if (value < 1 || value > 1'000'000) p.fail(entry.line, "'" + key + "' must lie in [1, 1000000]");
      *it->second = static_cast<int>(value);
    }
  }
  if (cfg.verify.max_eves * 2 + 1 > kHardMaxQubits || cfg.verify.brute_force_max_eves > 8)
    p.fail(p.line_of("verify.max_eves"), "verification register sizes too large");

  // Assemble eavesdroppers in attack order.
  int expected = 1;
  for (const auto& [index, spec] : eves) {
    if (index != expected) {
      p.fail(spec.line, "eavesdropper indices must run 1..n without gaps; eavesdropper " +
                            std::to_string(expected) + " is missing");
    }
    ++expected;
    const std::string where = "eavesdropper " + std::to_string(index);
    if (spec.d) {
      if (spec.delta_uv || spec.d_xy)
        p.fail(spec.line, where + ": give either d or both delta_uv and d_xy, not both forms");
      check_range(p, spec.line, where + " d", *spec.d, 0.0, 0.5);
      cfg.scenario.eves.push_back(EveParams::from_disturbance(*spec.d));
    } else {
      if (!spec.delta_uv || !spec.d_xy) p.fail(spec.line, where + ": needs both delta_uv and d_xy");
      check_range(p, spec.line, where + " delta_uv", *spec.delta_uv, 0.0, 1.0);
      check_range(p, spec.line, where + " d_xy", *spec.d_xy, 0.0, 1.0);
      cfg.scenario.eves.push_back({*spec.delta_uv, *spec.d_xy});
    }
  }
  if (p.has("n")) {
    const auto n = p.integer("n");
    if (n != cfg.scenario.num_eves())
      p.fail(p.line_of("n"), "n = " + std::to_string(n) + " but " +
                                 std::to_string(cfg.scenario.num_eves()) + " eavesdroppers are defined");
  }
  p.reject_unused();
  return cfg;
}

RunConfig load_config(const std::string& path, Mode mode) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot open config file");
  return parse_config(in, mode, path);
}

}  // namespace eavesim
