#include "greyhelm/serialize.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace greyhelm {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void ModelBundle::validate() const {
  if (weights.has_value() != scaler.has_value())
    throw std::invalid_argument(
        "ModelBundle: scaler must be present exactly when weights are");
  if (dd_weights.has_value() != dd_scaler.has_value())
    throw std::invalid_argument(
        "ModelBundle: dd_scaler must be present exactly when dd_weights are");
  if (weights) weights->validate();
  if (dd_weights) dd_weights->validate();
}

void write_trial_csv(const TrialLog& log, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& [key, value] : log.meta) out << "# " << key << "=" << value << "\n";
  out << "# dt=" << format_double(log.dt) << "\n";
  out << "t,x,y,psi,u,v,r,delta,n\n";
  for (const LogRow& r : log.rows) {
    out << format_double(r.t) << ',' << format_double(r.x) << ',' << format_double(r.y)
        << ',' << format_double(r.psi) << ',' << format_double(r.u) << ','
        << format_double(r.v) << ',' << format_double(r.r) << ','
        << format_double(r.delta) << ',' << format_double(r.n) << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

double parse_field(const std::string& field, const std::string& path, int line) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end == field.c_str() || *end != '\0')
    throw std::runtime_error(path + ": bad numeric field '" + field + "' at line " +
                             std::to_string(line));
  return v;
}

}  // namespace

TrialLog read_trial_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  TrialLog log;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::size_t eq = line.find('=');
      if (eq != std::string::npos) {
        std::string key = line.substr(1, eq - 1);
        while (!key.empty() && key.front() == ' ') key.erase(key.begin());
        while (!key.empty() && key.back() == ' ') key.pop_back();
        const std::string value = line.substr(eq + 1);
        if (key == "dt") {
          log.dt = parse_field(value, path, lineno);
        } else {
          log.meta[key] = value;
        }
      }
      continue;
    }
    if (!header_seen) {
      if (line != "t,x,y,psi,u,v,r,delta,n")
        throw std::runtime_error(path + ": unexpected header at line " +
                                 std::to_string(lineno) + ": '" + line + "'");
      header_seen = true;
      continue;
    }
    std::array<double, 9> fields{};
    std::size_t start = 0;
    for (int i = 0; i < 9; ++i) {
      const std::size_t comma = line.find(',', start);
      const bool last = i == 8;
      if ((comma == std::string::npos) != last)
        throw std::runtime_error(path + ": expected 9 fields at line " +
                                 std::to_string(lineno));
      const std::string field =
          last ? line.substr(start) : line.substr(start, comma - start);
      fields[static_cast<std::size_t>(i)] = parse_field(field, path, lineno);
      start = comma + 1;
    }
    log.rows.push_back({fields[0], fields[1], fields[2], fields[3], fields[4], fields[5],
                        fields[6], fields[7], fields[8]});
  }
  if (!header_seen) throw std::runtime_error(path + ": missing header");
  return log;
}

namespace {

ordered_json matrix_json(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const ordered_json& j) {
  const auto rows = j.size();
  const auto cols = rows > 0 ? j.at(0).size() : 0;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (j.at(i).size() != cols) throw std::runtime_error("ragged weight matrix");
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          j.at(i).at(k).get<double>();
  }
  return m;
}

ordered_json vector_json(const Eigen::VectorXd& v) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Eigen::VectorXd vector_from_json(const ordered_json& j) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = j.at(i).get<double>();
  return v;
}

ordered_json weights_json(const FfnWeights& w) {
  return {{"hidden", w.hidden()}, {"w1", matrix_json(w.w1)}, {"b1", vector_json(w.b1)},
          {"w2", matrix_json(w.w2)}, {"b2", vector_json(w.b2)},
          {"w3", matrix_json(w.w3)}, {"b3", vector_json(w.b3)}};
}

FfnWeights weights_from_json(const ordered_json& j) {
  FfnWeights w;
  w.w1 = matrix_from_json(j.at("w1"));
  w.b1 = vector_from_json(j.at("b1"));
  w.w2 = matrix_from_json(j.at("w2"));
  w.b2 = vector_from_json(j.at("b2"));
  w.w3 = matrix_from_json(j.at("w3"));
  w.b3 = vector_from_json(j.at("b3"));
  w.validate();
  return w;
}

ordered_json scaler_json(const FeatureScaler& s) {
  return {{"feature_mean", vector_json(s.mean)},
          {"feature_std", vector_json(s.std)},
          {"target_scale", vector_json(s.target_scale)},
          {"clip", s.clip}};
}

FeatureScaler scaler_from_json(const ordered_json& j) {
  FeatureScaler s;
  const Eigen::VectorXd mean = vector_from_json(j.at("feature_mean"));
  const Eigen::VectorXd std = vector_from_json(j.at("feature_std"));
  const Eigen::VectorXd scale = vector_from_json(j.at("target_scale"));
  if (mean.size() != kFeatureDim || std.size() != kFeatureDim || scale.size() != kOutputDim)
    throw std::runtime_error("scaler dimensions wrong");
  s.mean = mean;
  s.std = std;
  s.target_scale = scale;
  s.clip = j.at("clip").get<double>();
  return s;
}

ordered_json surge_json(const SurgeCoeffs& c) {
  return {{"X_udot", c.x_udot}, {"X_u", c.x_u}, {"X_uu", c.x_uu}, {"X_uuu", c.x_uuu}};
}

ordered_json swayyaw_json(const SwayYawCoeffs& c) {
  return {{"Y_v", c.v_v},       {"Y_r", c.v_r},
          {"Y_delta", c.v_delta}, {"Y_rrr", c.v_rrr},
          {"Y_vrdelta", c.v_vrdelta}, {"Y_ur", c.v_ur},
          {"Y_0", c.v_0},       {"R_r", c.r_r},
          {"R_delta", c.r_delta}, {"R_rrr", c.r_rrr},
          {"R_vrdelta", c.r_vrdelta}, {"R_ur", c.r_ur},
          {"R_rdd", c.r_rdd},   {"R_vrr", c.r_vrr},
          {"R_0", c.r_0}};
}

SurgeCoeffs surge_from_json(const ordered_json& j) {
  return {j.at("X_udot").get<double>(), j.at("X_u").get<double>(),
          j.at("X_uu").get<double>(), j.at("X_uuu").get<double>()};
}

SwayYawCoeffs swayyaw_from_json(const ordered_json& j) {
  SwayYawCoeffs c;
  c.v_v = j.at("Y_v").get<double>();
  c.v_r = j.at("Y_r").get<double>();
  c.v_delta = j.at("Y_delta").get<double>();
  c.v_rrr = j.at("Y_rrr").get<double>();
  c.v_vrdelta = j.at("Y_vrdelta").get<double>();
  c.v_ur = j.at("Y_ur").get<double>();
  c.v_0 = j.at("Y_0").get<double>();
  c.r_r = j.at("R_r").get<double>();
  c.r_delta = j.at("R_delta").get<double>();
  c.r_rrr = j.at("R_rrr").get<double>();
  c.r_vrdelta = j.at("R_vrdelta").get<double>();
  c.r_ur = j.at("R_ur").get<double>();
  c.r_rdd = j.at("R_rdd").get<double>();
  c.r_vrr = j.at("R_vrr").get<double>();
  c.r_0 = j.at("R_0").get<double>();
  return c;
}

}  // namespace

std::string model_bundle_json(const ModelBundle& bundle) {
  bundle.validate();
  ordered_json j;
  j["version"] = bundle.version;
  j["config_hash"] = bundle.config_hash;
  j["seed"] = bundle.seed;
  j["method"] = bundle.method;
  j["ident_lambda"] = bundle.ident_lambda;
  j["train_lambda"] = bundle.train_lambda;
  if (bundle.surge) j["surge"] = surge_json(*bundle.surge);
  if (bundle.swayyaw) j["swayyaw"] = swayyaw_json(*bundle.swayyaw);
  if (bundle.weights) {
    j["ffn"] = weights_json(*bundle.weights);
    j["ffn_scaler"] = scaler_json(*bundle.scaler);
  }
  if (bundle.dd_weights) {
    j["datadriven"] = weights_json(*bundle.dd_weights);
    j["datadriven_scaler"] = scaler_json(*bundle.dd_scaler);
  }
  return j.dump(2) + "\n";
}

void write_model_bundle(const ModelBundle& bundle, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << model_bundle_json(bundle);
  if (!out) throw std::runtime_error("write failed: " + path);
}

ModelBundle read_model_bundle(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  ModelBundle b;
  b.version = j.value("version", std::string{});
  b.config_hash = j.value("config_hash", std::string{});
  b.seed = j.value("seed", std::uint64_t{0});
  b.method = j.value("method", std::string{});
  b.ident_lambda = j.value("ident_lambda", 0.0);
  b.train_lambda = j.value("train_lambda", 0.0);
  if (j.contains("surge")) b.surge = surge_from_json(j.at("surge"));
  if (j.contains("swayyaw")) b.swayyaw = swayyaw_from_json(j.at("swayyaw"));
  if (j.contains("ffn")) {
    b.weights = weights_from_json(j.at("ffn"));
    b.scaler = scaler_from_json(j.at("ffn_scaler"));
  }
  if (j.contains("datadriven")) {
    b.dd_weights = weights_from_json(j.at("datadriven"));
    b.dd_scaler = scaler_from_json(j.at("datadriven_scaler"));
  }
  b.validate();
  return b;
}

}  // namespace greyhelm
