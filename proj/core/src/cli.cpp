#include "mcf/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mcf/cumulant.hpp"
#include "mcf/pca.hpp"
#include "mcf/tail.hpp"

namespace mcf {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

Eigen::VectorXd vector_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    throw Error(ErrorCode::ParseError,
                std::string(what) + " must be a nonempty array");
  }
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) {
      throw Error(ErrorCode::ParseError,
                  std::string(what) + " must contain numbers");
    }
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

Eigen::MatrixXd matrix_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw Error(ErrorCode::ParseError,
                std::string(what) + " must be an array of arrays");
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      throw Error(ErrorCode::ParseError,
                  std::string(what) + " rows differ in length");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number()) {
        throw Error(ErrorCode::ParseError,
                    std::string(what) + " must contain numbers");
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          j[i][k].get<double>();
    }
  }
  return m;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot open for writing: " + path);
  }
  out << content;
  if (!out) {
    throw Error(ErrorCode::IoError, "write failed: " + path);
  }
}

json config_json(const RunConfig& cfg) {
  return json{{"seed", cfg.opt.seed},
              {"starts", cfg.opt.starts},
              {"max_iters", cfg.opt.max_iters},
              {"step_init", cfg.opt.step_init},
              {"grad_tol", cfg.opt.grad_tol},
              {"angle_dedup_deg", cfg.opt.angle_dedup_deg},
              {"ess_min", cfg.ess_min}};
}

json maxima_to_json(const std::vector<Maximum>& maxima) {
  json arr = json::array();
  for (const auto& m : maxima) {
    arr.push_back(json{{"theta", vector_to_json(m.direction.vec())},
                       {"g", m.g_value},
                       {"basin_count", m.basin_count}});
  }
  return arr;
}

/// Data-quality warnings shared by analyze and compare-pca: constant columns
/// and a standardized-looking input (all column standard deviations within
/// 1% of 1), which invalidates the anomaly-direction interpretation.
std::vector<std::string> data_warnings(const Eigen::MatrixXd& values) {
  std::vector<std::string> warnings;
  const auto n = static_cast<double>(values.rows());
  bool all_unit = values.cols() >= 2;
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    const double mean = values.col(j).mean();
    const double sd =
        std::sqrt((values.col(j).array() - mean).square().sum() / n);
    if (sd == 0.0) {
      warnings.push_back("constant column v" + std::to_string(j + 1) +
                         "; it cannot carry any anomaly direction");
      all_unit = false;
    } else if (std::abs(sd - 1.0) > 0.01) {
      all_unit = false;
    }
  }
  if (all_unit) {
    warnings.push_back(
        "input looks standardized (every column standard deviation is 1 "
        "within 1%); rescaling variables corrupts the relative tail sizes "
        "this analysis relies on, so the reported directions lose validity");
  }
  return warnings;
}

MCFResult analyze_pipeline(const RunConfig& cfg, const Eigen::MatrixXd& values,
                           std::vector<std::string>& warnings) {
  warnings = data_warnings(values);
  MCFResult result =
      mcf(DataMatrix::from_rows(values), cfg.opt, cfg.radius, cfg.ess_min);
  warnings.insert(warnings.end(), result.warnings.begin(),
                  result.warnings.end());
  return result;
}

const char* family_name(const ModelParams& model) {
  if (std::holds_alternative<GaussianParams>(model)) return "gaussian";
  if (std::holds_alternative<SkewNormalParams>(model)) return "skew-normal";
  return "gamma";
}

}  // namespace

void RunConfig::validate() const {
  opt.validate();
  if (!(ess_min > 1.0)) {
    throw Error(ErrorCode::InvalidParams, "ess_min must be > 1");
  }
  if (output_path.empty()) {
    throw Error(ErrorCode::InvalidParams, "an output path is required");
  }
  switch (command) {
    case Command::Simulate:
      if (!model.has_value()) {
        throw Error(ErrorCode::InvalidParams, "simulate requires a model");
      }
      if (n_samples < 30) {
        throw Error(ErrorCode::InvalidParams,
                    "simulate requires n_samples >= 30");
      }
      break;
    case Command::Tailcheck:
      if (!theta_a.has_value() || !theta_b.has_value()) {
        throw Error(ErrorCode::InvalidParams,
                    "tailcheck requires --theta-a and --theta-b");
      }
      [[fallthrough]];
    case Command::Analyze:
    case Command::ComparePca:
      if (input_path.empty()) {
        throw Error(ErrorCode::InvalidParams, "an input path is required");
      }
      break;
  }
}

Eigen::VectorXd parse_vector(const std::string& text) {
  std::vector<double> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string field = text.substr(pos, comma - pos);
    const auto first = field.find_first_not_of(" \t");
    if (first == std::string::npos) {
      throw Error(ErrorCode::ParseError, "empty component in vector: " + text);
    }
    const auto last = field.find_last_not_of(" \t");
    field = field.substr(first, last - first + 1);
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      throw Error(ErrorCode::ParseError, "not a number: '" + field + "'");
    }
    parts.push_back(value);
    pos = comma + 1;
  }
  Eigen::VectorXd v(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = parts[i];
  }
  return v;
}

ModelParams parse_model_params(const std::string& family,
                               const std::string& json_text) {
  std::string text = json_text;
  if (!json_text.empty() && json_text.front() != '{' &&
      std::filesystem::exists(json_text)) {
    std::ifstream in(json_text);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError,
                std::string("model params are not valid JSON: ") + e.what());
  }
  if (family == "gaussian") {
    return GaussianParams::make(matrix_from_json(j.at("sigma"), "sigma"));
  }
  if (family == "skew-normal") {
    return SkewNormalParams::make(matrix_from_json(j.at("sigma"), "sigma"),
                                  vector_from_json(j.at("alpha"), "alpha"));
  }
  if (family == "gamma") {
    if (!j.contains("alpha0") || !j["alpha0"].is_number()) {
      throw Error(ErrorCode::ParseError, "gamma params need numeric alpha0");
    }
    return GammaParams::make(j["alpha0"].get<double>(),
                             vector_from_json(j.at("alphas"), "alphas"));
  }
  throw Error(ErrorCode::InvalidParams,
              "unknown model family: " + family +
                  " (expected gaussian, skew-normal, or gamma)");
}

void write_csv(const std::string& path, const Eigen::MatrixXd& values) {
  std::string out;
  out.reserve(static_cast<std::size_t>(values.rows() + 1) * 24 *
              static_cast<std::size_t>(values.cols()));
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    if (j > 0) out += ',';
    out += 'v';
    out += std::to_string(j + 1);
  }
  out += '\n';
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_double(values(i, j));
    }
    out += '\n';
  }
  write_text_file(path, out);
}

Eigen::MatrixXd read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open for reading: " + path);
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  Eigen::Index cols = -1;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::vector<double> row;
    bool parse_ok = true;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) comma = line.size();
      std::string_view field(line.data() + pos, comma - pos);
      while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) {
        field.remove_prefix(1);
      }
      while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) {
        field.remove_suffix(1);
      }
      double value = 0.0;
      const auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), value);
      if (field.empty() || ec != std::errc() ||
          ptr != field.data() + field.size()) {
        parse_ok = false;
        break;
      }
      row.push_back(value);
      pos = comma + 1;
    }

    if (!parse_ok) {
      if (first_content_line) {
        first_content_line = false;  // header row
        continue;
      }
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": malformed CSV row");
    }
    first_content_line = false;
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
    } else if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) +
                      ": expected " + std::to_string(cols) + " columns, got " +
                      std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw Error(ErrorCode::ParseError, "no data rows in " + path);
  }
  Eigen::MatrixXd m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

std::string error_json(ErrorCode code, const std::string& message) {
  return json{{"schema_version", 1},
              {"error", json{{"code", to_string(code)}, {"message", message}}}}
      .dump();
}

RunOutputs run_simulate(const RunConfig& cfg) {
  cfg.validate();
  const ModelParams& model = *cfg.model;

  DataMatrix data = std::visit(
      [&](const auto& p) -> DataMatrix {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GaussianParams>) {
          return sample_gaussian(p, cfg.n_samples, cfg.opt.seed);
        } else if constexpr (std::is_same_v<T, SkewNormalParams>) {
          return sample_skew_normal(p, cfg.n_samples, cfg.opt.seed);
        } else {
          return sample_gamma(p, cfg.n_samples, cfg.opt.seed);
        }
      },
      model);
  write_csv(cfg.output_path, data.values());

  json params;
  json derived = json::object();
  if (const auto* g = std::get_if<GaussianParams>(&model)) {
    params = json{{"sigma", matrix_to_json(g->sigma)}};
  } else if (const auto* s = std::get_if<SkewNormalParams>(&model)) {
    params = json{{"sigma", matrix_to_json(s->sigma)},
                  {"alpha", vector_to_json(s->alpha)}};
    derived["mu"] = vector_to_json(s->mu);
  } else {
    const auto& gm = std::get<GammaParams>(model);
    params = json{{"alpha0", gm.alpha0}, {"alphas", vector_to_json(gm.alphas)}};
    Eigen::VectorXd mean = gm.alphas.array() + gm.alpha0;
    derived["mean"] = vector_to_json(mean);
  }

  const json sidecar{{"schema_version", 1},
                     {"command", "simulate"},
                     {"model", family_name(model)},
                     {"params", params},
                     {"n", cfg.n_samples},
                     {"seed", cfg.opt.seed},
                     {"derived", derived},
                     {"output", cfg.output_path}};
  const std::string sidecar_path = cfg.output_path + ".meta.json";
  write_text_file(sidecar_path, sidecar.dump(2) + "\n");
  return RunOutputs{{cfg.output_path, sidecar_path}};
}

RunOutputs run_analyze(const RunConfig& cfg) {
  cfg.validate();
  const Eigen::MatrixXd values = read_csv(cfg.input_path);
  std::vector<std::string> warnings;
  const MCFResult result = analyze_pipeline(cfg, values, warnings);

  json out{{"schema_version", 1},
           {"command", "analyze"},
           {"input", cfg.input_path},
           {"radius_used", result.radius_used.value()},
           {"radius_mode", cfg.radius.has_value() ? "given" : "auto"},
           {"maxima", maxima_to_json(result.maxima)},
           {"pc1", vector_to_json(result.pc1.vec())},
           {"ess", result.ess_at_radius},
           {"warnings", warnings},
           {"config", config_json(cfg)}};
  write_text_file(cfg.output_path, out.dump(2) + "\n");

  // Plot-ready profile: per reported maximum, G and ESS over a radius grid
  // reaching slightly past the radius used.
  const DataMatrix centered = center(DataMatrix::from_rows(values));
  std::string profile = "maximum,radius,G,ESS\n";
  std::vector<double> radii;
  const int kProfilePoints = 25;
  for (int k = 0; k <= kProfilePoints; ++k) {
    radii.push_back(result.radius_used.value() * 1.25 * k / kProfilePoints);
  }
  for (std::size_t m = 0; m < result.maxima.size(); ++m) {
    const CumulantProfile prof =
        cumulant_profile(centered, result.maxima[m].direction, radii);
    for (std::size_t i = 0; i < prof.radii.size(); ++i) {
      profile += std::to_string(m) + ',' + format_double(prof.radii[i]) + ',' +
                 format_double(prof.values[i]) + ',' +
                 format_double(prof.ess[i]) + '\n';
    }
  }
  const std::string profile_path = cfg.output_path + ".profile.csv";
  write_text_file(profile_path, profile);
  return RunOutputs{{cfg.output_path, profile_path}};
}

RunOutputs run_compare_pca(const RunConfig& cfg) {
  cfg.validate();
  const Eigen::MatrixXd values = read_csv(cfg.input_path);
  std::vector<std::string> warnings;
  const MCFResult result = analyze_pipeline(cfg, values, warnings);

  json vs_pc1 = json::array();
  for (const auto& m : result.maxima) {
    vs_pc1.push_back(axis_angle_deg(m.direction.vec(), result.pc1.vec()));
  }
  json pairwise = json::array();
  for (const auto& a : result.maxima) {
    json row = json::array();
    for (const auto& b : result.maxima) {
      row.push_back(angle_deg(a.direction.vec(), b.direction.vec()));
    }
    pairwise.push_back(row);
  }

  json out{{"schema_version", 1},
           {"command", "compare-pca"},
           {"input", cfg.input_path},
           {"radius_used", result.radius_used.value()},
           {"pc1", vector_to_json(result.pc1.vec())},
           {"maxima", maxima_to_json(result.maxima)},
           {"angles_deg",
            json{{"maxima_vs_pc1_axis", vs_pc1}, {"pairwise_maxima", pairwise}}},
           {"ess", result.ess_at_radius},
           {"warnings", warnings},
           {"config", config_json(cfg)}};
  write_text_file(cfg.output_path, out.dump(2) + "\n");
  return RunOutputs{{cfg.output_path}};
}

RunOutputs run_tailcheck(const RunConfig& cfg) {
  cfg.validate();
  const Eigen::MatrixXd values = read_csv(cfg.input_path);
  const DataMatrix centered = center(DataMatrix::from_rows(values));
  const Direction theta_a = normalize(*cfg.theta_a);
  const Direction theta_b = normalize(*cfg.theta_b);

  double r_max;
  if (cfg.radius.has_value()) {
    if (!(*cfg.radius > 0.0)) {
      throw Error(ErrorCode::InvalidParams, "radius must be > 0");
    }
    r_max = *cfg.radius;
  } else {
    r_max = auto_radius(centered, cfg.ess_min).radius.value();
  }
  std::vector<double> radii;
  for (int k = 1; k <= 10; ++k) radii.push_back(r_max * k / 10.0);

  const TailDominanceReport report =
      verify_theorem1(centered, theta_a, theta_b, radii, cfg.ess_min);

  json holds = json::array();
  for (const auto& h : report.holds_for_radii) {
    holds.push_back(json{{"radius", h.radius},
                         {"dominates", h.dominates},
                         {"ess_a", h.ess_a},
                         {"ess_b", h.ess_b},
                         {"reliable", h.reliable}});
  }
  json out{{"schema_version", 1},
           {"command", "tailcheck"},
           {"input", cfg.input_path},
           {"theta_a", vector_to_json(theta_a.vec())},
           {"theta_b", vector_to_json(theta_b.vec())},
           {"z_star", report.z_star.has_value() ? json(*report.z_star) : json()},
           {"s_star_estimate", report.s_star_estimate.has_value()
                                   ? json(*report.s_star_estimate)
                                   : json()},
           {"holds_for_radii", holds},
           {"config", config_json(cfg)}};
  write_text_file(cfg.output_path, out.dump(2) + "\n");
  return RunOutputs{{cfg.output_path}};
}

}  // namespace mcf
