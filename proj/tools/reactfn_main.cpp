// reactfn: estimates a market reaction curve from return histograms and
// generates synthetic distorted-normal samples for validating the estimator.

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "reactfn/errors.hpp"
#include "reactfn/histogram.hpp"
#include "reactfn/io.hpp"
#include "reactfn/prices.hpp"
#include "reactfn/reaction.hpp"
#include "reactfn/returns.hpp"
#include "reactfn/synth.hpp"

namespace fs = std::filesystem;
using namespace reactfn;

namespace {

struct CommonOpts {
  std::string input;
  std::string format = "simple";
  std::string scale = "1d";
  std::string returns_kind = "simple";
  int bins = 150;
  int window = 0;
  bool overlapping = false;
  std::string out;
  std::string emit = "both";
};

void add_input_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--input", opts.input, "input file")->required();
  cmd->add_option("--format", opts.format, "price file format: simple|ohlc")
      ->check(CLI::IsMember({"simple", "ohlc"}));
  cmd->add_option("--scale", opts.scale, "return scale: 1d or <k>m (e.g. 15m)");
  cmd->add_option("--returns-kind", opts.returns_kind, "simple|log")
      ->check(CLI::IsMember({"simple", "log"}));
  cmd->add_flag("--overlapping", opts.overlapping, "overlapping minute windows");
}

fs::path prepare_out_dir(const std::string& out) {
  if (out.empty()) throw input_error("--out directory is required");
  fs::path dir(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw input_error("cannot create output directory " + dir.string());
  return dir;
}

ReturnSeries load_and_compute(const CommonOpts& opts) {
  const PriceSeries prices = load_prices(opts.input, parse_price_format(opts.format));
  log_note("loaded " + std::to_string(prices.points.size()) + " prices from " + opts.input);
  return compute_returns(prices, ReturnScale::parse(opts.scale), parse_return_kind(opts.returns_kind),
                         opts.overlapping);
}

int cmd_returns(const CommonOpts& opts) {
  const fs::path dir = prepare_out_dir(opts.out);
  const ReturnSeries returns = load_and_compute(opts);
  write_text_file(dir / "returns.txt", returns_txt(returns));
  write_text_file(dir / "returns.json", returns_sidecar(returns).dump(2) + "\n");
  return 0;
}

int cmd_estimate(const CommonOpts& opts) {
  if (opts.bins < 3) throw input_error("--bins must be >= 3");
  if (opts.window < 0) throw input_error("--window must be >= 0");
  const fs::path dir = prepare_out_dir(opts.out);
  const ReturnSeries returns = load_and_compute(opts);
  const EstimateResult est = run_estimate(returns, opts.bins, opts.window);
  log_note("calibrated sigma " + fmt12(est.normal.sigma) + " around mu " + fmt12(est.normal.mu));

  const bool want_csv = opts.emit == "csv" || opts.emit == "both";
  const bool want_json = opts.emit == "json" || opts.emit == "both";
  if (want_csv) {
    write_text_file(dir / "curve.csv", curve_csv(est.curve));
    write_text_file(dir / "histogram.csv", histogram_csv(est.dist));
  }
  if (want_json) write_text_file(dir / "report.json", report_json(est).dump(2) + "\n");
  return 0;
}

int cmd_synth(const CommonOpts& opts) {
  const fs::path dir = prepare_out_dir(opts.out);
  const GeneratorSpec spec = load_generator_spec(opts.input);
  const ReturnSeries sample = generate(spec);
  write_text_file(dir / "sample.csv", synthetic_price_csv(sample.values));
  write_text_file(dir / "sample_spec.json", generator_spec_to_json(spec).dump(2) + "\n");
  return 0;
}

int cmd_plotdata(const CommonOpts& opts) {
  const fs::path dir = prepare_out_dir(opts.out);
  const fs::path in(opts.input);
  const auto report = nlohmann::json::parse(read_text_file(in / "report.json"));
  const auto hist_rows = parse_histogram_csv(read_text_file(in / "histogram.csv"));
  const auto curve_rows = parse_curve_csv(read_text_file(in / "curve.csv"));

  const EmpiricalDistribution dist = histogram_from_csv_rows(hist_rows);
  const double mu = report.at("mu").get<double>();
  const double sigma = report.at("sigma").get<double>();

  write_text_file(dir / "plot_density.csv", plot_density_csv(dist, mu, sigma));
  write_text_file(dir / "plot_curve.csv", plot_curve_csv(curve_rows));
  write_text_file(dir / "plot_curve_excluded.csv", plot_curve_excluded_csv(curve_rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reaction-curve estimation for asset return series"};
  app.require_subcommand(1);

  CommonOpts opts;

  auto* returns_cmd = app.add_subcommand("returns", "compute a return series from a price file");
  add_input_options(returns_cmd, opts);
  returns_cmd->add_option("--out", opts.out, "output directory")->required();

  auto* estimate_cmd = app.add_subcommand("estimate", "run the full estimation pipeline");
  add_input_options(estimate_cmd, opts);
  estimate_cmd->add_option("--bins", opts.bins, "histogram bin count (default 150)");
  estimate_cmd->add_option("--window", opts.window, "calibration half-window in bins (default 0)");
  estimate_cmd->add_option("--emit", opts.emit, "csv|json|both")->check(CLI::IsMember({"csv", "json", "both"}));
  estimate_cmd->add_option("--out", opts.out, "output directory")->required();

  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic price file from a JSON spec");
  synth_cmd->add_option("--input", opts.input, "generator spec JSON")->required();
  synth_cmd->add_option("--out", opts.out, "output directory")->required();

  auto* plot_cmd = app.add_subcommand("plotdata", "emit plot-ready series from estimate outputs");
  plot_cmd->add_option("--input", opts.input, "directory with estimate outputs")->required();
  plot_cmd->add_option("--out", opts.out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (returns_cmd->parsed()) return cmd_returns(opts);
    if (estimate_cmd->parsed()) return cmd_estimate(opts);
    if (synth_cmd->parsed()) return cmd_synth(opts);
    if (plot_cmd->parsed()) return cmd_plotdata(opts);
  } catch (const data_error& e) {
    std::cerr << "error: data: " << e.what() << '\n';
    return 3;
  } catch (const input_error& e) {
    std::cerr << "error: input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
