#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "reactfn/errors.hpp"
#include "reactfn/histogram.hpp"
#include "reactfn/prices.hpp"
#include "reactfn/reaction.hpp"
#include "reactfn/returns.hpp"
#include "reactfn/synth.hpp"
#include "reactfn/timeutil.hpp"

namespace reactfn {

// Machine outputs print floating values with 12 significant digits so that
// identical inputs give byte-identical files.
inline std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

// JSON numbers are rounded to the same 12 significant digits before storing.
inline double json_num(double x) { return std::strtod(fmt12(x).c_str(), nullptr); }

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write " + path.string());
  out << content;
  if (!out) throw input_error("failed while writing " + path.string());
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---- returns command outputs ----

inline std::string returns_txt(const ReturnSeries& returns) {
  std::string out;
  out.reserve(returns.values.size() * 16);
  for (const double v : returns.values) {
    out += fmt12(v);
    out += '\n';
  }
  return out;
}

inline nlohmann::json returns_sidecar(const ReturnSeries& returns) {
  return nlohmann::json{{"instrument", returns.instrument},
                        {"kind", to_string(returns.kind)},
                        {"n", returns.values.size()},
                        {"scale", returns.scale.str()}};
}

// ---- estimate command outputs ----

inline std::string histogram_csv(const EmpiricalDistribution& dist) {
  std::string out = "edge_lo,edge_hi,count,rel_freq,density\n";
  for (std::size_t i = 0; i < static_cast<std::size_t>(dist.bin_count()); ++i) {
    out += fmt12(dist.edge(i));
    out += ',';
    out += fmt12(dist.edge(i + 1));
    out += ',';
    out += fmt12(dist.count(i));
    out += ',';
    out += fmt12(dist.mass(i));
    out += ',';
    out += fmt12(dist.density(i));
    out += '\n';
  }
  return out;
}

inline std::string curve_csv(const ReactionCurve& curve) {
  const auto model = reconstruct_density(curve);
  std::string out = "r_mid,value,status,delta_f,model_mass\n";
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    out += fmt12(p.r_mid);
    out += ',';
    if (p.has_value()) out += fmt12(p.value);
    out += ',';
    out += to_string(p.status);
    out += ',';
    out += fmt12(p.delta_f);
    out += ',';
    if (model[i].has_value()) out += fmt12(*model[i]);
    out += '\n';
  }
  return out;
}

inline nlohmann::json report_json(const EstimateResult& est) {
  const auto& normal = est.normal;
  const auto& curve = est.curve;

  int counts[4] = {0, 0, 0, 0};
  for (const auto& p : curve.points) ++counts[static_cast<int>(p.status)];

  nlohmann::json crossings = nlohmann::json::array();
  const auto add_crossings = [&](const SideSummary& side, const std::string& name) {
    for (const auto& c : side.crossings) {
      crossings.push_back({{"r", json_num(c.r)},
                           {"radius", json_num(c.radius)},
                           {"rising_outward", c.rising_outward},
                           {"side", name}});
    }
  };
  add_crossings(est.summary.left, "left");
  add_crossings(est.summary.right, "right");

  nlohmann::json asymmetry;
  for (int k = 1; k <= 3; ++k) {
    const auto& v = est.summary.asymmetry[static_cast<std::size_t>(k - 1)];
    asymmetry["k" + std::to_string(k)] = v.has_value() ? nlohmann::json(json_num(*v)) : nlohmann::json();
  }

  return nlohmann::json{
      {"asymmetry", asymmetry},
      {"bin_count", curve.source.bin_count},
      {"central_mass", json_num(normal.central_mass)},
      {"crossings", crossings},
      {"instrument", curve.source.instrument},
      {"kind", curve.source.kind},
      {"mu", json_num(normal.mu)},
      {"mu_minus", json_num(normal.mu_minus)},
      {"mu_plus", json_num(normal.mu_plus)},
      {"n", json_num(curve.source.n)},
      {"scale", curve.source.scale},
      {"sides",
       {{"left",
         {{"computable", est.summary.left.computable}, {"valid_points", est.summary.left.valid_points}}},
        {"right",
         {{"computable", est.summary.right.computable}, {"valid_points", est.summary.right.valid_points}}}}},
      {"sigma", json_num(normal.sigma)},
      {"status_counts",
       {{"central", counts[static_cast<int>(PointStatus::central)]},
        {"empty_bin", counts[static_cast<int>(PointStatus::empty_bin)]},
        {"log_domain_violation", counts[static_cast<int>(PointStatus::log_domain_violation)]},
        {"valid", counts[static_cast<int>(PointStatus::valid)]}}},
      {"window", normal.window}};
}

// ---- synth command ----

inline GeneratorSpec generator_spec_from_json(const nlohmann::json& j) {
  GeneratorSpec spec;
  try {
    spec.mu = j.at("mu").get<double>();
    spec.sigma = j.at("sigma").get<double>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    spec.n = j.at("n").get<std::size_t>();
    const auto& reaction = j.at("reaction");
    const auto kind = parse_shape_kind(reaction.at("kind").get<std::string>());
    const auto& params = reaction.at("params");
    switch (kind) {
      case ShapeKind::constant:
        spec.reaction = ReactionShape::constant(params.at("c").get<double>());
        break;
      case ShapeKind::linear_vee:
        spec.reaction = ReactionShape::linear_vee(params.at("a").get<double>());
        break;
      case ShapeKind::asymmetric:
        spec.reaction = ReactionShape::asymmetric(params.at("a_plus").get<double>(),
                                                  params.at("a_minus").get<double>());
        break;
      case ShapeKind::power:
        spec.reaction = ReactionShape::power(params.at("p").get<double>(), params.at("a").get<double>());
        break;
    }
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("bad generator spec: ") + e.what());
  }
  return spec;
}

inline GeneratorSpec load_generator_spec(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw input_error("cannot parse spec file " + path.string() + ": " + e.what());
  }
  return generator_spec_from_json(j);
}

inline nlohmann::json generator_spec_to_json(const GeneratorSpec& spec) {
  nlohmann::json params;
  switch (spec.reaction.kind) {
    case ShapeKind::constant: params = {{"c", spec.reaction.c}}; break;
    case ShapeKind::linear_vee: params = {{"a", spec.reaction.a}}; break;
    case ShapeKind::asymmetric:
      params = {{"a_minus", spec.reaction.a_minus}, {"a_plus", spec.reaction.a_plus}};
      break;
    case ShapeKind::power: params = {{"a", spec.reaction.a}, {"p", spec.reaction.p}}; break;
  }
  return nlohmann::json{{"mu", json_num(spec.mu)},
                        {"n", spec.n},
                        {"reaction", {{"kind", to_string(spec.reaction.kind)}, {"params", params}}},
                        {"seed", spec.seed},
                        {"sigma", json_num(spec.sigma)}};
}

/// Renders generated returns as a simple-format price file: a base price of
/// 100 compounded by each return, one row per synthetic calendar day, so that
/// daily simple returns of the emitted file reproduce the sample.
inline std::string synthetic_price_csv(const std::vector<double>& returns,
                                       Date start = Date{2000, 1, 3}, double base_price = 100.0) {
  const std::int64_t day0 = days_from_civil(start.year, start.month, start.day);
  std::string out = "timestamp,price\n";
  double price = base_price;
  out += to_string(start);
  out += ',';
  out += fmt12(price);
  out += '\n';
  for (std::size_t i = 0; i < returns.size(); ++i) {
    price *= 1.0 + returns[i];
    const Date d = civil_from_days(day0 + static_cast<std::int64_t>(i) + 1);
    out += to_string(d);
    out += ',';
    out += fmt12(price);
    out += '\n';
  }
  return out;
}

// ---- plotdata command ----

/// Histogram density with the calibrated normal overlaid, sampled at bin
/// midpoints. Columns: r,density_empirical,density_normal.
inline std::string plot_density_csv(const EmpiricalDistribution& dist, double mu, double sigma) {
  std::string out = "r,density_empirical,density_normal\n";
  for (std::size_t i = 0; i < static_cast<std::size_t>(dist.bin_count()); ++i) {
    const double r = dist.mid(i);
    out += fmt12(r);
    out += ',';
    out += fmt12(dist.density(i));
    out += ',';
    out += fmt12(normal_pdf(r, mu, sigma));
    out += '\n';
  }
  return out;
}

struct CurveCsvRow {
  double r_mid = 0.0;
  std::optional<double> value;
  std::string status;
  double delta_f = 0.0;
};

inline std::vector<CurveCsvRow> parse_curve_csv(const std::string& content) {
  std::vector<CurveCsvRow> rows;
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line) || line.rfind("r_mid,", 0) != 0)
    throw input_error("not a curve CSV (missing header)");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = detail::split_csv(line);
    if (fields.size() != 5) throw input_error("curve CSV row " + std::to_string(lineno) + " malformed");
    CurveCsvRow row;
    row.r_mid = std::strtod(fields[0].c_str(), nullptr);
    if (!fields[1].empty()) row.value = std::strtod(fields[1].c_str(), nullptr);
    row.status = fields[2];
    row.delta_f = std::strtod(fields[3].c_str(), nullptr);
    rows.push_back(row);
  }
  return rows;
}

/// Main plottable curve series (points that carry a value).
/// Columns: r_mid,value.
inline std::string plot_curve_csv(const std::vector<CurveCsvRow>& rows) {
  std::string out = "r_mid,value\n";
  for (const auto& row : rows) {
    if (!row.value.has_value()) continue;
    out += fmt12(row.r_mid);
    out += ',';
    out += fmt12(*row.value);
    out += '\n';
  }
  return out;
}

/// Bins excluded from the curve, kept separate for plotting.
/// Columns: r_mid,status,delta_f.
inline std::string plot_curve_excluded_csv(const std::vector<CurveCsvRow>& rows) {
  std::string out = "r_mid,status,delta_f\n";
  for (const auto& row : rows) {
    if (row.value.has_value()) continue;
    out += fmt12(row.r_mid);
    out += ',';
    out += row.status;
    out += ',';
    out += fmt12(row.delta_f);
    out += '\n';
  }
  return out;
}

struct HistogramCsvRow {
  double edge_lo = 0.0;
  double edge_hi = 0.0;
  double count = 0.0;
};

inline std::vector<HistogramCsvRow> parse_histogram_csv(const std::string& content) {
  std::vector<HistogramCsvRow> rows;
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line) || line.rfind("edge_lo,", 0) != 0)
    throw input_error("not a histogram CSV (missing header)");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = detail::split_csv(line);
    if (fields.size() != 5) throw input_error("histogram CSV row " + std::to_string(lineno) + " malformed");
    rows.push_back(HistogramCsvRow{std::strtod(fields[0].c_str(), nullptr),
                                   std::strtod(fields[1].c_str(), nullptr),
                                   std::strtod(fields[2].c_str(), nullptr)});
  }
  if (rows.empty()) throw input_error("histogram CSV has no rows");
  return rows;
}

inline EmpiricalDistribution histogram_from_csv_rows(const std::vector<HistogramCsvRow>& rows) {
  std::vector<double> edges;
  std::vector<double> counts;
  edges.reserve(rows.size() + 1);
  for (const auto& row : rows) {
    edges.push_back(row.edge_lo);
    counts.push_back(row.count);
  }
  edges.push_back(rows.back().edge_hi);
  double total = 0.0;
  for (const double c : counts) total += c;
  if (total <= 0.0) throw input_error("histogram CSV has zero total count");
  for (double& c : counts) c /= total;
  return EmpiricalDistribution::from_masses(std::move(edges), std::move(counts));
}

}  // namespace reactfn
