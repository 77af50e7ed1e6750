#include "greyhelm/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "greyhelm/serialize.hpp"

namespace greyhelm {

void RunConfig::validate() const {
  vessel.validate();
  disturbance.validate();
  train.validate();
  if (ident.lambda < 0.0) throw std::invalid_argument("RunConfig: ident.lambda");
  if (ident.prefilter_window < 1 || ident.prefilter_window % 2 == 0)
    throw std::invalid_argument("RunConfig: prefilter_window must be odd and >= 1");
  if (!(velocity_bound_factor > 0.0))
    throw std::invalid_argument("RunConfig: velocity_bound_factor");
  if (out_dir.empty()) throw std::invalid_argument("RunConfig: out_dir empty");
}

RunConfig default_run_config() {
  RunConfig cfg;
  cfg.vessel = reference_vessel();
  return cfg;
}

double parse_angle(const std::string& text) {
  std::string s = text;
  double factor = 1.0;
  const auto strip = [&](const char* suffix) {
    const std::size_t len = std::string(suffix).size();
    if (s.size() > len && s.compare(s.size() - len, len, suffix) == 0) {
      s = s.substr(0, s.size() - len);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
      return true;
    }
    return false;
  };
  if (strip("deg")) {
    factor = std::numbers::pi / 180.0;
  } else {
    strip("rad");
  }
  char* end = nullptr;
  const double value = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw std::runtime_error("bad angle value: '" + text + "'");
  return value * factor;
}

namespace {

struct RawValue {
  std::string text;
  int line{0};
  bool quoted{false};
};

class KeyTable {
 public:
  void insert(const std::string& key, RawValue value) {
    if (values_.count(key))
      throw std::runtime_error("line " + std::to_string(value.line) +
                               ": duplicate key '" + key + "'");
    values_[key] = std::move(value);
  }

  bool take(const std::string& key, RawValue& out) {
    auto it = values_.find(key);
    if (it == values_.end()) return false;
    out = it->second;
    values_.erase(it);
    return true;
  }

  void expect_empty() const {
    if (values_.empty()) return;
    std::string msg = "unknown config key(s):";
    for (const auto& [key, value] : values_)
      msg += " '" + key + "' (line " + std::to_string(value.line) + ")";
    throw std::runtime_error(msg);
  }

 private:
  std::map<std::string, RawValue> values_;
};

double to_number(const RawValue& v, const std::string& key) {
  char* end = nullptr;
  const double value = std::strtod(v.text.c_str(), &end);
  if (v.quoted || end == v.text.c_str() || *end != '\0')
    throw std::runtime_error("line " + std::to_string(v.line) + ": key '" + key +
                             "' expects a number, got '" + v.text + "'");
  return value;
}

void get_number(KeyTable& table, const std::string& key, double& target) {
  RawValue v;
  if (table.take(key, v)) target = to_number(v, key);
}

void get_angle(KeyTable& table, const std::string& key, double& target) {
  RawValue v;
  if (!table.take(key, v)) return;
  try {
    target = parse_angle(v.text);
  } catch (const std::exception& e) {
    throw std::runtime_error("line " + std::to_string(v.line) + ": key '" + key + "': " +
                             e.what());
  }
}

void get_angle_deg(KeyTable& table, const std::string& key, double& target_deg) {
  RawValue v;
  if (!table.take(key, v)) return;
  // deg-suffixed values stay in degrees untouched; only radians convert
  const std::string& s = v.text;
  if (s.size() > 3 && s.compare(s.size() - 3, 3, "deg") == 0) {
    char* end = nullptr;
    const double deg = std::strtod(s.c_str(), &end);
    if (end == s.c_str())
      throw std::runtime_error("line " + std::to_string(v.line) + ": key '" + key +
                               "': bad angle '" + s + "'");
    target_deg = deg;
    return;
  }
  try {
    target_deg = parse_angle(s) * 180.0 / std::numbers::pi;
  } catch (const std::exception& e) {
    throw std::runtime_error("line " + std::to_string(v.line) + ": key '" + key + "': " +
                             e.what());
  }
}

void get_int(KeyTable& table, const std::string& key, int& target) {
  RawValue v;
  if (!table.take(key, v)) return;
  const double num = to_number(v, key);
  if (num != std::floor(num))
    throw std::runtime_error("line " + std::to_string(v.line) + ": key '" + key +
                             "' expects an integer");
  target = static_cast<int>(num);
}

void get_u64(KeyTable& table, const std::string& key, std::uint64_t& target) {
  RawValue v;
  if (!table.take(key, v)) return;
  try {
    target = std::stoull(v.text);
  } catch (const std::exception&) {
    throw std::runtime_error("line " + std::to_string(v.line) + ": key '" + key +
                             "' expects an unsigned integer");
  }
}

void get_bool(KeyTable& table, const std::string& key, bool& target) {
  RawValue v;
  if (!table.take(key, v)) return;
  if (v.text == "true") {
    target = true;
  } else if (v.text == "false") {
    target = false;
  } else {
    throw std::runtime_error("line " + std::to_string(v.line) + ": key '" + key +
                             "' expects true or false");
  }
}

void get_string(KeyTable& table, const std::string& key, std::string& target) {
  RawValue v;
  if (table.take(key, v)) target = v.text;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

KeyTable tokenize(const std::string& text) {
  KeyTable table;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // strip comments outside quotes
    bool in_quote = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_quote = !in_quote;
      if (line[i] == '#' && !in_quote) {
        line = line.substr(0, i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("line " + std::to_string(lineno) + ": malformed section");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw std::runtime_error("line " + std::to_string(lineno) + ": empty section");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected key = value");
    bool quoted = false;
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
      quoted = true;
    }
    const std::string full = section.empty() ? key : section + "." + key;
    table.insert(full, {value, lineno, quoted});
  }
  return table;
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
  KeyTable t = tokenize(text);
  RunConfig cfg = default_run_config();

  get_u64(t, "seed", cfg.seed);
  get_string(t, "out_dir", cfg.out_dir);
  get_number(t, "velocity_bound_factor", cfg.velocity_bound_factor);

  get_number(t, "vessel.mass", cfg.vessel.mass);
  get_angle(t, "vessel.delta_max", cfg.vessel.delta_max);
  get_number(t, "vessel.nondim.length", cfg.vessel.nondim.length);
  get_number(t, "vessel.nondim.u_ref", cfg.vessel.nondim.u_ref);
  get_number(t, "vessel.nondim.rho", cfg.vessel.nondim.rho);
  get_number(t, "vessel.jet.alpha", cfg.vessel.jet.alpha);
  get_number(t, "vessel.jet.area", cfg.vessel.jet.area);
  get_number(t, "vessel.jet.a", cfg.vessel.jet.a);
  get_number(t, "vessel.jet.b", cfg.vessel.jet.b);
  get_int(t, "vessel.jet.jet_count", cfg.vessel.jet.jet_count);
  get_number(t, "vessel.surge.x_udot", cfg.vessel.surge.x_udot);
  get_number(t, "vessel.surge.x_u", cfg.vessel.surge.x_u);
  get_number(t, "vessel.surge.x_uu", cfg.vessel.surge.x_uu);
  get_number(t, "vessel.surge.x_uuu", cfg.vessel.surge.x_uuu);

  SwayYawCoeffs& sy = cfg.vessel.swayyaw;
  get_number(t, "vessel.swayyaw.v_v", sy.v_v);
  get_number(t, "vessel.swayyaw.v_r", sy.v_r);
  get_number(t, "vessel.swayyaw.v_delta", sy.v_delta);
  get_number(t, "vessel.swayyaw.v_rrr", sy.v_rrr);
  get_number(t, "vessel.swayyaw.v_vrdelta", sy.v_vrdelta);
  get_number(t, "vessel.swayyaw.v_ur", sy.v_ur);
  get_number(t, "vessel.swayyaw.v_0", sy.v_0);
  get_number(t, "vessel.swayyaw.r_r", sy.r_r);
  get_number(t, "vessel.swayyaw.r_delta", sy.r_delta);
  get_number(t, "vessel.swayyaw.r_rrr", sy.r_rrr);
  get_number(t, "vessel.swayyaw.r_vrdelta", sy.r_vrdelta);
  get_number(t, "vessel.swayyaw.r_ur", sy.r_ur);
  get_number(t, "vessel.swayyaw.r_rdd", sy.r_rdd);
  get_number(t, "vessel.swayyaw.r_vrr", sy.r_vrr);
  get_number(t, "vessel.swayyaw.r_0", sy.r_0);

  DisturbanceSpec& d = cfg.disturbance;
  get_number(t, "disturbance.current_speed", d.current_speed);
  get_angle(t, "disturbance.current_dir", d.current_dir);
  get_number(t, "disturbance.wave_amp_v", d.wave_amp_v);
  get_number(t, "disturbance.wave_amp_r", d.wave_amp_r);
  get_number(t, "disturbance.wave_freq", d.wave_freq);
  get_angle(t, "disturbance.wave_dir", d.wave_dir);
  get_number(t, "disturbance.wavedrift_amp_v", d.wavedrift_amp_v);
  get_number(t, "disturbance.wavedrift_amp_r", d.wavedrift_amp_r);
  get_number(t, "disturbance.noise_std_u", d.noise_std_u);
  get_number(t, "disturbance.noise_std_v", d.noise_std_v);
  get_number(t, "disturbance.noise_std_r", d.noise_std_r);
  get_u64(t, "disturbance.seed", d.seed);

  get_number(t, "identification.lambda", cfg.ident.lambda);
  get_bool(t, "identification.standardize", cfg.ident.standardize);
  get_int(t, "identification.prefilter_window", cfg.ident.prefilter_window);

  TrainConfig& tr = cfg.train;
  get_number(t, "training.learning_rate", tr.learning_rate);
  get_int(t, "training.iterations", tr.iterations);
  get_bool(t, "training.iterations_are_epochs", tr.iterations_are_epochs);
  get_int(t, "training.batch_size", tr.batch_size);
  get_number(t, "training.lambda", tr.lambda);
  get_u64(t, "training.seed", tr.seed);
  get_number(t, "training.beta1", tr.beta1);
  get_number(t, "training.beta2", tr.beta2);
  get_number(t, "training.epsilon", tr.epsilon);
  get_int(t, "training.hidden", tr.hidden);

  DatasetConfig& ds = cfg.dataset;
  get_number(t, "dataset.random_duration", ds.random_duration);
  get_number(t, "dataset.train_turn_duration", ds.train_turn_duration);
  get_number(t, "dataset.test_turn_duration", ds.test_turn_duration);
  get_number(t, "dataset.zigzag_duration", ds.zigzag_duration);
  get_number(t, "dataset.n_cmd", ds.n_cmd);
  get_angle_deg(t, "dataset.train_turn_a", ds.train_turn_deg_a);
  get_angle_deg(t, "dataset.train_turn_b", ds.train_turn_deg_b);
  get_angle_deg(t, "dataset.test_turn_a", ds.test_turn_deg_a);
  get_angle_deg(t, "dataset.test_turn_b", ds.test_turn_deg_b);
  get_angle_deg(t, "dataset.test_turn_c", ds.test_turn_deg_c);
  get_angle_deg(t, "dataset.zigzag_amplitude", ds.zigzag_amp_deg);
  get_angle_deg(t, "dataset.zigzag_switch", ds.zigzag_switch_deg);
  get_number(t, "dataset.rand_hold", ds.rand_hold);
  get_number(t, "dataset.rand_n_hold", ds.rand_n_hold);
  get_number(t, "dataset.rand_n_min", ds.rand_n_min);
  get_number(t, "dataset.rand_n_max", ds.rand_n_max);

  t.expect_empty();
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_run_config(buf.str());
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string canonical_config_string(const RunConfig& cfg) {
  std::ostringstream out;
  auto kv = [&](const char* key, double value) {
    out << key << "=" << format_double(value) << "\n";
  };
  // out_dir is deliberately absent: where artifacts land does not change
  // what experiment they came from
  out << "seed=" << cfg.seed << "\n";
  kv("velocity_bound_factor", cfg.velocity_bound_factor);

  kv("vessel.mass", cfg.vessel.mass);
  kv("vessel.delta_max", cfg.vessel.delta_max);
  kv("vessel.nondim.length", cfg.vessel.nondim.length);
  kv("vessel.nondim.u_ref", cfg.vessel.nondim.u_ref);
  kv("vessel.nondim.rho", cfg.vessel.nondim.rho);
  kv("vessel.jet.alpha", cfg.vessel.jet.alpha);
  kv("vessel.jet.area", cfg.vessel.jet.area);
  kv("vessel.jet.a", cfg.vessel.jet.a);
  kv("vessel.jet.b", cfg.vessel.jet.b);
  out << "vessel.jet.jet_count=" << cfg.vessel.jet.jet_count << "\n";
  kv("vessel.surge.x_udot", cfg.vessel.surge.x_udot);
  kv("vessel.surge.x_u", cfg.vessel.surge.x_u);
  kv("vessel.surge.x_uu", cfg.vessel.surge.x_uu);
  kv("vessel.surge.x_uuu", cfg.vessel.surge.x_uuu);
  const SwayYawCoeffs& sy = cfg.vessel.swayyaw;
  kv("vessel.swayyaw.v_v", sy.v_v);
  kv("vessel.swayyaw.v_r", sy.v_r);
  kv("vessel.swayyaw.v_delta", sy.v_delta);
  kv("vessel.swayyaw.v_rrr", sy.v_rrr);
  kv("vessel.swayyaw.v_vrdelta", sy.v_vrdelta);
  kv("vessel.swayyaw.v_ur", sy.v_ur);
  kv("vessel.swayyaw.v_0", sy.v_0);
  kv("vessel.swayyaw.r_r", sy.r_r);
  kv("vessel.swayyaw.r_delta", sy.r_delta);
  kv("vessel.swayyaw.r_rrr", sy.r_rrr);
  kv("vessel.swayyaw.r_vrdelta", sy.r_vrdelta);
  kv("vessel.swayyaw.r_ur", sy.r_ur);
  kv("vessel.swayyaw.r_rdd", sy.r_rdd);
  kv("vessel.swayyaw.r_vrr", sy.r_vrr);
  kv("vessel.swayyaw.r_0", sy.r_0);

  const DisturbanceSpec& d = cfg.disturbance;
  kv("disturbance.current_speed", d.current_speed);
  kv("disturbance.current_dir", d.current_dir);
  kv("disturbance.wave_amp_v", d.wave_amp_v);
  kv("disturbance.wave_amp_r", d.wave_amp_r);
  kv("disturbance.wave_freq", d.wave_freq);
  kv("disturbance.wave_dir", d.wave_dir);
  kv("disturbance.wavedrift_amp_v", d.wavedrift_amp_v);
  kv("disturbance.wavedrift_amp_r", d.wavedrift_amp_r);
  kv("disturbance.noise_std_u", d.noise_std_u);
  kv("disturbance.noise_std_v", d.noise_std_v);
  kv("disturbance.noise_std_r", d.noise_std_r);
  out << "disturbance.seed=" << d.seed << "\n";

  kv("identification.lambda", cfg.ident.lambda);
  out << "identification.standardize=" << (cfg.ident.standardize ? "true" : "false")
      << "\n";
  out << "identification.prefilter_window=" << cfg.ident.prefilter_window << "\n";

  const TrainConfig& tr = cfg.train;
  kv("training.learning_rate", tr.learning_rate);
  out << "training.iterations=" << tr.iterations << "\n";
  out << "training.iterations_are_epochs=" << (tr.iterations_are_epochs ? "true" : "false")
      << "\n";
  out << "training.batch_size=" << tr.batch_size << "\n";
  kv("training.lambda", tr.lambda);
  out << "training.seed=" << tr.seed << "\n";
  kv("training.beta1", tr.beta1);
  kv("training.beta2", tr.beta2);
  kv("training.epsilon", tr.epsilon);
  out << "training.hidden=" << tr.hidden << "\n";

  const DatasetConfig& ds = cfg.dataset;
  kv("dataset.random_duration", ds.random_duration);
  kv("dataset.train_turn_duration", ds.train_turn_duration);
  kv("dataset.test_turn_duration", ds.test_turn_duration);
  kv("dataset.zigzag_duration", ds.zigzag_duration);
  kv("dataset.n_cmd", ds.n_cmd);
  kv("dataset.train_turn_a", ds.train_turn_deg_a);
  kv("dataset.train_turn_b", ds.train_turn_deg_b);
  kv("dataset.test_turn_a", ds.test_turn_deg_a);
  kv("dataset.test_turn_b", ds.test_turn_deg_b);
  kv("dataset.test_turn_c", ds.test_turn_deg_c);
  kv("dataset.zigzag_amplitude", ds.zigzag_amp_deg);
  kv("dataset.zigzag_switch", ds.zigzag_switch_deg);
  kv("dataset.rand_hold", ds.rand_hold);
  kv("dataset.rand_n_hold", ds.rand_n_hold);
  kv("dataset.rand_n_min", ds.rand_n_min);
  kv("dataset.rand_n_max", ds.rand_n_max);
  return out.str();
}

std::string config_hash(const RunConfig& cfg) {
  const std::string s = canonical_config_string(cfg);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace greyhelm
