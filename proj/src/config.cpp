#include "ddflow/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "ddflow/error.hpp"

namespace ddflow {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string value;
  int line = 0;
};

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw Error(ErrorKind::kParseError, "line " + std::to_string(line) + ": " + what);
}

double to_double(const Entry& e, const std::string& key) {
  std::istringstream is(e.value);
  double v = 0.0;
  std::string rest;
  if (!(is >> v) || (is >> rest)) parse_fail(e.line, key + " expects a number");
  return v;
}

int to_int(const Entry& e, const std::string& key) {
  std::istringstream is(e.value);
  long long v = 0;
  std::string rest;
  if (!(is >> v) || (is >> rest)) parse_fail(e.line, key + " expects an integer");
  return static_cast<int>(v);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

FourierMode to_mode(const Entry& e, const std::string& key) {
  std::istringstream is(e.value);
  FourierMode m;
  std::string rest;
  if (!(is >> m.p1 >> m.p2 >> m.cos_amp >> m.sin_amp) || (is >> rest)) {
    parse_fail(e.line, key + " expects 'p1 p2 cos_amp sin_amp'");
  }
  return m;
}

void fail_validation(const std::string& what) {
  throw Error(ErrorKind::kValidationError, what);
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "preset", "M", "N", "T", "N_T", "L", "stress.kind", "stress.a0", "stress.a1",
      "fp_tol", "fp_max_iter", "cfl_mode", "smooth_order", "snapshot_times", "output_dir",
      "emit_fields", "init.plus.gaussian", "init.minus.gaussian", "init.plus.mode",
      "init.minus.mode"};
  return keys;
}

}  // namespace

RunConfig config_from_preset(const std::string& name) {
  const Preset p = preset(name);
  RunConfig cfg;
  cfg.params = p.params;
  cfg.preset_name = p.name;
  cfg.init_plus = p.init_plus;
  cfg.init_minus = p.init_minus;
  cfg.snapshot_times = p.snapshot_times;
  cfg.output_dir = "out/" + name;
  return cfg;
}

RunConfig parse_config(const std::string& text) {
  std::map<std::string, Entry> single;
  std::vector<std::pair<std::string, Entry>> modes;
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) parse_fail(lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) parse_fail(lineno, "empty key");
    if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end()) {
      parse_fail(lineno, "unknown key '" + key + "'");
    }
    if (key == "init.plus.mode" || key == "init.minus.mode") {
      modes.emplace_back(key, Entry{value, lineno});
      continue;
    }
    if (single.count(key)) parse_fail(lineno, "duplicate key '" + key + "'");
    single[key] = Entry{value, lineno};
  }

  RunConfig cfg;
  const bool has_preset = single.count("preset") > 0;
  if (has_preset) {
    try {
      cfg = config_from_preset(single["preset"].value);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kUnknownPreset) fail_validation(e.what());
      throw;
    }
  }

  auto has = [&](const std::string& k) { return single.count(k) > 0; };
  SimParams& p = cfg.params;
  if (has("M")) p.order = to_int(single["M"], "M");
  if (has("N")) p.grid = to_int(single["N"], "N");
  if (has("T")) p.final_time = to_double(single["T"], "T");
  if (has("N_T")) p.steps = to_int(single["N_T"], "N_T");
  if (has("L")) p.total_density = to_double(single["L"], "L");
  if (has("stress.kind")) p.stress.kind = parse_stress_kind(single["stress.kind"].value);
  if (has("stress.a0")) p.stress.a0 = to_double(single["stress.a0"], "stress.a0");
  if (has("stress.a1")) p.stress.a1 = to_double(single["stress.a1"], "stress.a1");
  if (has("fp_tol")) p.fp_tol = to_double(single["fp_tol"], "fp_tol");
  if (has("fp_max_iter")) p.fp_max_iter = to_int(single["fp_max_iter"], "fp_max_iter");
  if (has("cfl_mode")) p.cfl_mode = parse_cfl_mode(single["cfl_mode"].value);
  if (has("smooth_order")) p.smooth_order = to_int(single["smooth_order"], "smooth_order");
  if (has("output_dir")) cfg.output_dir = single["output_dir"].value;
  if (has("emit_fields")) cfg.emit_fields = split_list(single["emit_fields"].value);
  if (has("snapshot_times")) {
    cfg.snapshot_times.clear();
    for (const auto& item : split_list(single["snapshot_times"].value)) {
      cfg.snapshot_times.push_back(
          to_double(Entry{item, single["snapshot_times"].line}, "snapshot_times"));
    }
  } else if (!has_preset) {
    cfg.snapshot_times = {0.0, p.final_time};
  } else if (has("T")) {
    // Keep the preset's times that still fit and end at the new horizon.
    std::erase_if(cfg.snapshot_times, [&](double t) { return t >= p.final_time; });
    cfg.snapshot_times.push_back(p.final_time);
  }

  bool plus_set = false;
  bool minus_set = false;
  auto reset_once = [](AnalyticInit& init, bool& flag) {
    if (!flag) init = AnalyticInit{};
    flag = true;
  };
  if (has("init.plus.gaussian")) {
    reset_once(cfg.init_plus, plus_set);
    cfg.init_plus.gaussian_scale = to_double(single["init.plus.gaussian"], "init.plus.gaussian");
  }
  if (has("init.minus.gaussian")) {
    reset_once(cfg.init_minus, minus_set);
    cfg.init_minus.gaussian_scale =
        to_double(single["init.minus.gaussian"], "init.minus.gaussian");
  }
  for (const auto& [key, entry] : modes) {
    if (key == "init.plus.mode") {
      reset_once(cfg.init_plus, plus_set);
      cfg.init_plus.modes.push_back(to_mode(entry, key));
    } else {
      reset_once(cfg.init_minus, minus_set);
      cfg.init_minus.modes.push_back(to_mode(entry, key));
    }
  }
  if (!has_preset) {
    for (const char* key : {"M", "N", "T", "N_T", "L"}) {
      if (!has(key)) fail_validation(std::string("missing required key '") + key + "'");
    }
  }
  if (!has_preset && !plus_set && !minus_set) {
    fail_validation("no initial data: set preset or init.plus/init.minus keys");
  }

  if (p.order > p.grid) fail_validation("M must not exceed N");
  try {
    p.validate();
  } catch (const Error& e) {
    fail_validation(e.what());
  }
  for (double t : cfg.snapshot_times) {
    if (t < 0.0 || t > p.final_time) {
      fail_validation("snapshot time " + format_double(t) + " outside [0, T]");
    }
  }
  for (const auto& f : cfg.emit_fields) {
    if (std::find(field_names().begin(), field_names().end(), f) == field_names().end()) {
      fail_validation("unknown field '" + f + "' in emit_fields");
    }
  }
  if (cfg.output_dir.empty()) fail_validation("output_dir must not be empty");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::kIoError, "cannot open config " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::string to_config_text(const RunConfig& cfg) {
  std::ostringstream os;
  const SimParams& p = cfg.params;
  os << "M = " << p.order << '\n'
     << "N = " << p.grid << '\n'
     << "T = " << format_double(p.final_time) << '\n'
     << "N_T = " << p.steps << '\n'
     << "L = " << format_double(p.total_density) << '\n'
     << "stress.kind = " << to_string(p.stress.kind) << '\n'
     << "stress.a0 = " << format_double(p.stress.a0) << '\n'
     << "stress.a1 = " << format_double(p.stress.a1) << '\n'
     << "fp_tol = " << format_double(p.fp_tol) << '\n'
     << "fp_max_iter = " << p.fp_max_iter << '\n'
     << "cfl_mode = " << to_string(p.cfl_mode) << '\n'
     << "smooth_order = " << p.smooth_order << '\n';
  os << "snapshot_times = ";
  for (std::size_t k = 0; k < cfg.snapshot_times.size(); ++k) {
    os << (k ? ", " : "") << format_double(cfg.snapshot_times[k]);
  }
  os << '\n' << "output_dir = " << cfg.output_dir << '\n' << "emit_fields = ";
  for (std::size_t k = 0; k < cfg.emit_fields.size(); ++k) {
    os << (k ? ", " : "") << cfg.emit_fields[k];
  }
  os << '\n';
  auto write_init = [&os](const char* species, const AnalyticInit& init) {
    os << "init." << species << ".gaussian = " << format_double(init.gaussian_scale) << '\n';
    for (const auto& m : init.modes) {
      os << "init." << species << ".mode = " << m.p1 << ' ' << m.p2 << ' '
         << format_double(m.cos_amp) << ' ' << format_double(m.sin_amp) << '\n';
    }
  };
  write_init("plus", cfg.init_plus);
  write_init("minus", cfg.init_minus);
  return os.str();
}

}  // namespace ddflow
