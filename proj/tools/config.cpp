// Copyright 2026 The catpump Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "config.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace catpump::cli {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_exact(values[i]);
  }
  return out;
}

// Reads one section, recording every key it consumes so leftovers can be
// reported as unknown.
class SectionReader {
 public:
  SectionReader(const RawConfig& raw, std::string section, RunConfig& cfg)
      : section_(std::move(section)), cfg_(cfg) {
    auto it = raw.find(section_);
    if (it != raw.end()) values_ = &it->second;
  }

  bool has(const std::string& key) const { return values_ && values_->count(key); }

  std::string field(const std::string& key) const { return section_ + "." + key; }

  double get_double(const std::string& key, double fallback) {
    const double v = has(key) ? parse_double(field(key), take(key)) : fallback;
    record(key, format_exact(v));
    return v;
  }

  int get_int(const std::string& key, int fallback) {
    const int v = has(key) ? parse_int(field(key), take(key)) : fallback;
    record(key, std::to_string(v));
    return v;
  }

  Complex get_complex(const std::string& key, Complex fallback) {
    const Complex v = has(key) ? parse_complex(field(key), take(key)) : fallback;
    record(key, format_exact(v));
    return v;
  }

  std::vector<double> get_list(const std::string& key, const std::string& fallback) {
    const std::vector<double> v = parse_list(field(key), has(key) ? take(key) : fallback);
    record(key, join(v));
    return v;
  }

  std::string get_string(const std::string& key, const std::string& fallback) {
    const std::string v = has(key) ? trim(take(key)) : fallback;
    record(key, v);
    return v;
  }

  // "auto" maps to 0.
  int get_auto_int(const std::string& key) {
    std::string text = has(key) ? trim(take(key)) : "auto";
    int v = 0;
    if (text != "auto") {
      v = parse_int(field(key), text);
      if (v < 1) throw ConfigError(field(key), "must be >= 1 or 'auto'");
    }
    record(key, v == 0 ? "auto" : std::to_string(v));
    return v;
  }

  double get_auto_double(const std::string& key) {
    std::string text = has(key) ? trim(take(key)) : "auto";
    double v = 0.0;
    if (text != "auto") {
      v = parse_double(field(key), text);
      if (!(v > 0.0)) throw ConfigError(field(key), "must be > 0 or 'auto'");
    }
    record(key, v == 0.0 ? "auto" : format_exact(v));
    return v;
  }

  void reject(const std::string& key, const std::string& why) {
    if (has(key)) throw ConfigError(field(key), why);
  }

  void finish() const {
    if (!values_) return;
    for (const auto& [key, value] : *values_) {
      if (!used_.count(key)) throw ConfigError(field(key), "unknown key");
    }
  }

 private:
  std::string take(const std::string& key) {
    used_.insert(key);
    return values_->at(key);
  }
  void record(const std::string& key, const std::string& value) {
    used_.insert(key);
    cfg_.resolved.emplace_back(field(key), value);
  }

  std::string section_;
  RunConfig& cfg_;
  const std::map<std::string, std::string>* values_ = nullptr;
  std::set<std::string> used_;
};

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field, what);
}

void require_all(const std::vector<double>& values, bool (*pred)(double), const std::string& field,
                 const std::string& what) {
  for (double v : values) require(pred(v), field, what);
}

PumpConfig read_pump(SectionReader& r) {
  PumpConfig p;
  p.pump_over_phi = r.get_complex("pump_over_phi", p.pump_over_phi);
  p.cycle_ratio = r.get_double("cycle_ratio", p.cycle_ratio);
  require(p.cycle_ratio >= 1.0, r.field("cycle_ratio"), "must be >= 1");
  p.n_cycles = r.get_auto_int("n_cycles");
  return p;
}

void read_common(const RawConfig& raw, RunConfig& cfg) {
  SectionReader r(raw, "common", cfg);
  CommonConfig& c = cfg.common;
  c.signal_dim = r.get_int("signal_dim", c.signal_dim);
  c.pump_dim = r.get_int("pump_dim", c.pump_dim);
  c.convergence_signal_dim = r.get_int("convergence_signal_dim", c.convergence_signal_dim);
  c.convergence_pump_dim = r.get_int("convergence_pump_dim", c.convergence_pump_dim);
  require(c.signal_dim >= 2, r.field("signal_dim"), "must be >= 2");
  require(c.pump_dim >= 2, r.field("pump_dim"), "must be >= 2");
  require(c.convergence_signal_dim >= 2, r.field("convergence_signal_dim"), "must be >= 2");
  require(c.convergence_pump_dim >= 2, r.field("convergence_pump_dim"), "must be >= 2");
  c.convergence_tol = r.get_double("convergence_tol", c.convergence_tol);
  require(c.convergence_tol > 0.0, r.field("convergence_tol"), "must be > 0");
  c.grid.alpha_min = r.get_double("alpha_min", c.grid.alpha_min);
  c.grid.alpha_max = r.get_double("alpha_max", c.grid.alpha_max);
  c.grid.n_mag = r.get_int("n_mag", c.grid.n_mag);
  c.grid.n_phase = r.get_int("n_phase", c.grid.n_phase);
  c.grid.refine = r.get_int("refine", c.grid.refine ? 1 : 0) != 0;
  require(c.grid.alpha_min > 0.0, r.field("alpha_min"), "must be > 0");
  require(c.grid.alpha_max > c.grid.alpha_min, r.field("alpha_max"), "must exceed alpha_min");
  require(c.grid.n_mag >= 2, r.field("n_mag"), "must be >= 2");
  require(c.grid.n_phase >= 2, r.field("n_phase"), "must be >= 2");
  r.finish();
}

bool positive(double v) { return v > 0.0; }
bool nonnegative(double v) { return v >= 0.0; }

}  // namespace

const char* kind_name(Kind kind) {
  switch (kind) {
    case Kind::kPhiSweep: return "phi-sweep";
    case Kind::kTrajectory: return "trajectory";
    case Kind::kLossSweep: return "loss-sweep";
    case Kind::kWigner: return "wigner";
    case Kind::kEffectiveLoss: return "effective-loss";
  }
  return "?";
}

Kind kind_from_name(const std::string& name) {
  for (Kind k : {Kind::kPhiSweep, Kind::kTrajectory, Kind::kLossSweep, Kind::kWigner, Kind::kEffectiveLoss}) {
    if (name == kind_name(k)) return k;
  }
  throw ConfigError("kind", "unknown experiment kind '" + name + "'");
}

double parse_double(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError(field, "expected a number, got an empty value");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError(field, "expected a finite number, got '" + t + "'");
  }
  return v;
}

int parse_int(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || v < -1000000000L || v > 1000000000L) {
    throw ConfigError(field, "expected an integer, got '" + t + "'");
  }
  return static_cast<int>(v);
}

Complex parse_complex(const std::string& field, const std::string& text) {
  std::string t;
  for (char c : text) {
    if (c != ' ' && c != '\t') t += c;
  }
  if (t.empty()) throw ConfigError(field, "expected a complex number, got an empty value");
  if (t.back() != 'i') return {parse_double(field, t), 0.0};
  t.pop_back();
  // Split at the last sign that is neither leading nor part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string re = split == std::string::npos ? "" : t.substr(0, split);
  std::string im = split == std::string::npos ? t : t.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  try {
    return {re.empty() ? 0.0 : parse_double(field, re), parse_double(field, im)};
  } catch (const ConfigError&) {
    throw ConfigError(field, "expected a complex number like 0.5-2i, got '" + text + "'");
  }
}

std::vector<double> parse_list(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError(field, "empty list");
  std::vector<double> out;
  if (t.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(t);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw ConfigError(field, "ranges are written start:step:stop");
    const double start = parse_double(field, parts[0]);
    const double step = parse_double(field, parts[1]);
    const double stop = parse_double(field, parts[2]);
    if (step == 0.0 || (stop - start) * step < 0.0) {
      throw ConfigError(field, "range step must be nonzero and point from start to stop");
    }
    const double span = (stop - start) / step;
    if (span > 1e6) throw ConfigError(field, "range has too many points");
    const int count = static_cast<int>(std::floor(span + 1e-9)) + 1;
    for (int i = 0; i < count; ++i) out.push_back(start + i * step);
    return out;
  }
  std::stringstream ss(t);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_double(field, item));
  if (t.back() == ',') throw ConfigError(field, "trailing comma in list");
  return out;
}

std::string format_exact(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string format_exact(Complex value) {
  std::string out = format_exact(value.real());
  const double im = value.imag() == 0.0 ? 0.0 : value.imag();
  out += (im < 0.0 || std::signbit(im)) ? "-" : "+";
  out += format_exact(std::abs(im));
  out += 'i';
  return out;
}

RawConfig parse_header_line(const std::string& line) {
  std::stringstream ss(line);
  std::string token;
  ss >> token;
  if (token == "#") ss >> token;
  const std::string prefix = "catpump-config/";
  if (token.rfind(prefix, 0) != 0) throw ConfigError("header", "not a catpump config header");
  if (token.substr(prefix.size()) != std::to_string(kConfigVersion)) {
    throw ConfigError("header", "unsupported config version '" + token.substr(prefix.size()) + "'");
  }
  RawConfig raw;
  while (ss >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw ConfigError("header", "malformed entry '" + token + "'");
    const std::string key = token.substr(0, eq);
    if (key == "kind") continue;
    const auto dot = key.find('.');
    if (dot == std::string::npos) throw ConfigError("header", "malformed key '" + key + "'");
    raw[key.substr(0, dot)][key.substr(dot + 1)] = token.substr(eq + 1);
  }
  return raw;
}

RawConfig read_config_file(const std::string& path) {
  {
    // A CSV written by catpump reruns from its header line.
    std::ifstream in(path);
    std::string first;
    if (in && std::getline(in, first) && first.rfind("# catpump-config/", 0) == 0) {
      return parse_header_line(first);
    }
  }
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("config", e.message() + " (" + path + ":" + std::to_string(e.line()) + ")");
  }
  RawConfig raw;
  for (const auto& [name, node] : tree) {
    if (node.empty()) throw ConfigError(name, "keys must appear inside a [section]");
    auto& section = raw[name];
    for (const auto& [key, value] : node) section[key] = value.data();
  }
  return raw;
}

RunConfig resolve_config(Kind kind, const RawConfig& raw) {
  RunConfig cfg;
  cfg.kind = kind;
  read_common(raw, cfg);
  SectionReader r(raw, kind_name(kind), cfg);

  switch (kind) {
    case Kind::kPhiSweep: {
      auto& c = cfg.phi_sweep;
      c.phi_inv = r.get_list("phi_inv", "1:1:15");
      require_all(c.phi_inv, positive, r.field("phi_inv"), "values must be > 0");
      c.pump = read_pump(r);
      break;
    }
    case Kind::kTrajectory: {
      auto& c = cfg.trajectory;
      const std::string mode = r.get_string("mode", "synchronous");
      if (mode == "synchronous") {
        c.mode = TrajectoryConfig::Mode::kSynchronous;
        for (const char* key : {"s", "gamma_d", "omega_p", "g_nl", "gamma_p", "t_final", "dt", "sample_interval"}) {
          r.reject(key, "only used with mode = adiabatic");
        }
        c.phi_inv = r.get_double("phi_inv", c.phi_inv);
        require(c.phi_inv > 0.0, r.field("phi_inv"), "must be > 0");
        c.pump = read_pump(r);
      } else if (mode == "adiabatic") {
        c.mode = TrajectoryConfig::Mode::kAdiabatic;
        for (const char* key : {"phi_inv", "pump_over_phi", "cycle_ratio", "n_cycles"}) {
          r.reject(key, "only used with mode = synchronous");
        }
        c.from_pump = r.has("omega_p") || r.has("gamma_p") || r.has("g_nl");
        if (c.from_pump) {
          r.reject("s", "give either (s, gamma_d) or (omega_p, g_nl, gamma_p), not both");
          r.reject("gamma_d", "give either (s, gamma_d) or (omega_p, g_nl, gamma_p), not both");
          c.omega_p = r.get_double("omega_p", c.omega_p);
          c.g_nl = r.get_double("g_nl", c.g_nl);
          c.gamma_p = r.get_double("gamma_p", c.gamma_p);
          require(c.gamma_p > 0.0, r.field("gamma_p"), "must be > 0");
        } else {
          c.s = r.get_complex("s", c.s);
          c.gamma_d = r.get_double("gamma_d", c.gamma_d);
          require(c.gamma_d >= 0.0, r.field("gamma_d"), "must be >= 0");
        }
        c.t_final = r.get_double("t_final", c.t_final);
        c.dt = r.get_double("dt", c.dt);
        c.sample_interval = r.get_double("sample_interval", c.sample_interval);
        require(c.t_final > 0.0, r.field("t_final"), "must be > 0");
        require(c.dt > 0.0, r.field("dt"), "must be > 0");
        require(c.sample_interval > 0.0, r.field("sample_interval"), "must be > 0");
      } else {
        throw ConfigError(r.field("mode"), "must be 'synchronous' or 'adiabatic'");
      }
      break;
    }
    case Kind::kLossSweep: {
      auto& c = cfg.loss_sweep;
      c.phi_inv = r.get_list("phi_inv", "1,1.5,2,2.5,3,4,5");
      require_all(c.phi_inv, positive, r.field("phi_inv"), "values must be > 0");
      c.gamma_s_signal = r.get_list("gamma_s_signal", "0.1");
      require_all(c.gamma_s_signal, nonnegative, r.field("gamma_s_signal"), "values must be >= 0");
      c.gamma_s_pump = r.get_list("gamma_s_pump", "0,0.05,0.1,0.2");
      require_all(c.gamma_s_pump, nonnegative, r.field("gamma_s_pump"), "values must be >= 0");
      c.pump = read_pump(r);
      break;
    }
    case Kind::kWigner: {
      auto& c = cfg.wigner;
      c.phi_inv = r.get_double("phi_inv", c.phi_inv);
      require(c.phi_inv > 0.0, r.field("phi_inv"), "must be > 0");
      c.pump = read_pump(r);
      c.snapshots = r.get_list("snapshots", "0.5,4");
      require_all(c.snapshots, nonnegative, r.field("snapshots"), "values must be >= 0");
      c.grid_points = r.get_int("grid_points", c.grid_points);
      require(c.grid_points >= 2, r.field("grid_points"), "must be >= 2");
      c.extent = r.get_auto_double("extent");
      break;
    }
    case Kind::kEffectiveLoss: {
      auto& c = cfg.effective_loss;
      c.g_loss_hz = r.get_list("g_loss_hz", "1e7");
      require_all(c.g_loss_hz, nonnegative, r.field("g_loss_hz"), "values must be >= 0");
      c.gamma_re_hz = r.get_list("gamma_re_hz", "1e7");
      require_all(c.gamma_re_hz, positive, r.field("gamma_re_hz"), "values must be > 0");
      c.delta_hz = r.get_list("delta_hz", "-1e9,-3e7,0,3e7,1e9");
      c.g_nl_hz = r.get_double("g_nl_hz", c.g_nl_hz);
      require(c.g_nl_hz > 0.0, r.field("g_nl_hz"), "must be > 0");
      break;
    }
  }
  r.finish();
  return cfg;
}

std::string header_line(const RunConfig& cfg) {
  std::string out = "catpump-config/" + std::to_string(kConfigVersion) + " kind=" + kind_name(cfg.kind);
  for (const auto& [key, value] : cfg.resolved) out += " " + key + "=" + value;
  return out;
}

}  // namespace catpump::cli
