// statcx: tables, surfaces, signal synthesis and detection from the shell.
//
// Exit codes: 0 ok, 2 I/O, 3 config (bad flags, parse errors, invalid
// parameters), 4 data shape (input too short, bad lengths).

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "run_config.hpp"
#include "statcx/complexity.hpp"
#include "statcx/error.hpp"
#include "statcx/optimizer.hpp"
#include "statcx/report_io.hpp"
#include "statcx/sigproc.hpp"
#include "statcx/signal_io.hpp"

namespace fs = std::filesystem;
using namespace statcx;

namespace {

enum Exit { kOk = 0, kIoExit = 2, kConfigExit = 3, kShapeExit = 4 };

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo:
      return kIoExit;
    case ErrorCode::kLength:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kDegenerateInput:
      return kShapeExit;
    default:
      return kConfigExit;
  }
}

struct Globals {
  std::uint64_t seed = 0;
  bool seed_given = false;
  fs::path out_dir = ".";
  std::string format = "csv";
};

fs::path output_path(const Globals& g, const std::string& explicit_name, const std::string& fallback) {
  fs::path p = explicit_name.empty() ? fs::path(fallback) : fs::path(explicit_name);
  if (p.is_relative()) p = g.out_dir / p;
  return p;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out.flush()) throw Error(ErrorCode::kIo, "write to '" + path.string() + "' failed");
}

ComplexityKind kind_or_throw(const std::string& text) {
  auto kind = parse_kind(text);
  if (!kind) throw Error(ErrorCode::kParse, "unknown kind '" + text + "'");
  return *kind;
}

std::vector<ComplexityKind> kinds_from(const std::vector<std::string>& names) {
  std::vector<ComplexityKind> kinds;
  for (const auto& name : names) {
    if (name == "all") {
      kinds.assign(std::begin(kAllKinds), std::end(kAllKinds));
      continue;
    }
    kinds.push_back(kind_or_throw(name));
  }
  return kinds;
}

SpectrumScale scale_from(const std::string& text) {
  if (text == "power") return SpectrumScale::kPower;
  if (text == "magnitude") return SpectrumScale::kMagnitude;
  throw Error(ErrorCode::kParse, "unknown spectrum scale '" + text + "'");
}

std::size_t components_for(const std::string& experiment) {
  if (experiment == "k3") return 3;
  if (experiment == "k30") return 30;
  if (experiment == "noise") return 0;
  throw Error(ErrorCode::kParse, "unknown experiment '" + experiment + "'");
}

// ---- tables

struct TablesArgs {
  std::vector<std::size_t> n_list{3, 256, 512, 1024, 2048};
  std::vector<std::string> kinds{"all"};
  std::string mode = "continuous";
  std::string output;
};

int run_tables(const Globals& g, const TablesArgs& a) {
  SearchMode mode;
  if (a.mode == "continuous") mode = SearchMode::kContinuous;
  else if (a.mode == "integer") mode = SearchMode::kInteger;
  else throw Error(ErrorCode::kParse, "unknown mode '" + a.mode + "'");

  std::vector<OptimumRecord> rows;
  for (auto kind : kinds_from(a.kinds)) {
    for (auto n : a.n_list) rows.push_back(maximize_family(kind, n, mode));
  }
  const bool json = g.format == "json";
  const auto path = output_path(g, a.output, json ? "tables.json" : "tables.csv");
  if (json) {
    write_text(path, tables_json(rows) + "\n");
  } else {
    std::ostringstream out;
    write_tables_csv(out, rows);
    write_text(path, out.str());
  }
  std::cout << "wrote " << rows.size() << " rows to " << path.string() << "\n";
  return kOk;
}

// ---- grid

struct GridArgs {
  std::string kind = "tv";
  std::size_t n = 1024;
  double step = 0.01;
  bool simplex = false;
  std::string output;
};

int run_grid(const Globals& g, const GridArgs& a) {
  const auto kind = kind_or_throw(a.kind);
  if (a.simplex && a.n != 3) throw Error(ErrorCode::kInvalidDimension, "--simplex needs n = 3");
  std::ostringstream out;
  if (a.simplex) write_simplex_grid(out, kind, a.step);
  else write_family_grid(out, kind, a.n, a.step);
  const std::string name = "grid_" + std::string(to_string(kind)) + "_" + std::to_string(a.n) +
                           (a.simplex ? "_simplex" : "") + ".csv";
  const auto path = output_path(g, a.output, name);
  write_text(path, out.str());
  std::cout << "wrote " << path.string() << "\n";
  return kOk;
}

// ---- synth

struct SynthArgs {
  std::string config;
  std::string experiment = "k3";
  std::optional<double> snr;
  std::string output = "signal.f64";
  std::string sample_format;
};

SampleFormat sample_format_or(const std::string& text, const fs::path& path) {
  if (text.empty()) return format_from_extension(path);
  auto f = parse_sample_format(text);
  if (!f) throw Error(ErrorCode::kParse, "unknown sample format '" + text + "'");
  return *f;
}

int run_synth(const Globals& g, const SynthArgs& a) {
  SignalConfig config;
  if (!a.config.empty()) {
    config = cli::load_signal_config(a.config);
    if (g.seed_given) config.seed = g.seed;
    if (a.snr) {
      double power = 0.0;
      for (const auto& h : config.components) power += 0.5 * h.amplitude * h.amplitude;
      if (!(*a.snr > 0.0)) throw Error(ErrorCode::kRange, "snr must be positive");
      if (power > 0.0) config.noise_sigma = std::sqrt(power / *a.snr);
    }
  } else {
    config = reference_config(components_for(a.experiment), g.seed, a.snr.value_or(1.0));
  }
  const auto samples = synthesize(config);
  const auto path = output_path(g, a.output, "signal.f64");
  write_samples(path, samples, sample_format_or(a.sample_format, path), config.sample_rate);
  std::cout << "samples=" << samples.size() << " snr=" << format_number(config.snr()) << " -> "
            << path.string() << "\n";
  return kOk;
}

// ---- detect

struct DetectArgs {
  std::string input;
  std::string input_format;
  std::string config;
  std::string kind = "tv";
  std::size_t window = ReferenceSetup::kWindowLength;
  std::size_t hop = 0;
  double fraction = 0.25;
  std::optional<double> threshold;
  std::optional<double> sample_rate;
  std::vector<double> indicator;
  std::string spectrum = "power";
  std::string prefix;
};

int run_detect(const Globals& g, const DetectArgs& a) {
  const auto kind = kind_or_throw(a.kind);
  const auto data = read_samples(a.input, sample_format_or(a.input_format, a.input));

  // Config file first, then whatever the input carries, then flags.
  std::optional<SignalConfig> config;
  double fs = ReferenceSetup::kSampleRate;
  Interval indicator = ReferenceSetup::kIndicator;
  if (!a.config.empty()) {
    config = cli::load_signal_config(a.config);
    fs = config->sample_rate;
    indicator = config->indicator_on;
  }
  if (data.sample_rate) fs = *data.sample_rate;
  if (a.sample_rate) fs = *a.sample_rate;
  if (!a.indicator.empty()) {
    if (a.indicator.size() != 2 || !(a.indicator[0] < a.indicator[1])) {
      throw Error(ErrorCode::kRange, "--indicator needs start,end with start < end");
    }
    indicator = {a.indicator[0], a.indicator[1]};
  }

  DetectOptions opts;
  opts.window_length = a.window;
  opts.hop = a.hop;
  opts.fraction = a.fraction;
  opts.threshold = a.threshold;
  opts.scale = scale_from(a.spectrum);
  const auto report = detect(data.samples, fs, indicator, kind, opts);

  const std::string stem =
      (a.prefix.empty() ? fs::path(a.input).stem().string() : a.prefix) + "_" + std::string(to_string(kind));
  const auto report_path = output_path(g, "", stem + "_report.json");
  const auto series_path = output_path(g, "", stem + "_series.csv");
  write_text(report_path, report_json(report, config ? &*config : nullptr) + "\n");
  std::ostringstream series;
  write_series_csv(series, report.series);
  write_text(series_path, series.str());

  const auto& m = report.metrics;
  std::cout << to_string(kind) << " threshold=" << format_number(report.threshold)
            << " hit_rate=" << format_number(m.hit_rate_on_interval)
            << " false_alarm_rate=" << format_number(m.false_alarm_rate_off_interval) << "\n";
  return kOk;
}

// ---- demo

struct DemoArgs {
  std::string experiment = "k3";
  std::size_t seeds = 1;
  std::string spectrum = "power";
};

int run_demo(const Globals& g, const DemoArgs& a) {
  const std::size_t components = components_for(a.experiment);
  if (a.seeds < 1) throw Error(ErrorCode::kRange, "--seeds must be >= 1");
  const auto scale = scale_from(a.spectrum);
  const std::size_t n = ReferenceSetup::kWindowLength;

  using nlohmann::ordered_json;
  ordered_json summary;
  summary["experiment"] = a.experiment;
  summary["window_length"] = n;
  summary["spectrum"] = scale == SpectrumScale::kPower ? "power" : "magnitude";
  ordered_json thresholds = ordered_json::object();
  for (auto kind : kAllKinds) {
    thresholds[std::string(to_string(kind))] = std::stod(format_number(threshold(kind, n)));
  }
  summary["thresholds"] = thresholds;

  ordered_json per_kind = ordered_json::object();
  ordered_json runs = ordered_json::array();
  std::vector<std::array<double, 4>> totals(std::size(kAllKinds));  // hit, fa, mean_on, mean_off
  for (std::size_t s = 0; s < a.seeds; ++s) {
    const std::uint64_t seed = g.seed + s;
    const auto config = reference_config(components, seed);
    const auto samples = synthesize(config);
    ordered_json run;
    run["seed"] = seed;
    for (std::size_t i = 0; i < std::size(kAllKinds); ++i) {
      const auto kind = kAllKinds[i];
      DetectOptions opts;
      opts.threshold = thresholds[std::string(to_string(kind))].get<double>();
      opts.scale = scale;
      const auto report = detect(samples, config, kind, opts);
      const std::string name = "demo_" + a.experiment +
                               (a.seeds > 1 ? "_seed" + std::to_string(seed) : std::string()) + "_" +
                               std::string(to_string(kind)) + "_series.csv";
      std::ostringstream series;
      write_series_csv(series, report.series);
      write_text(output_path(g, "", name), series.str());

      const auto& m = report.metrics;
      run[std::string(to_string(kind))] = {
          {"hit_rate_on_interval", std::stod(format_number(m.hit_rate_on_interval))},
          {"false_alarm_rate_off_interval", std::stod(format_number(m.false_alarm_rate_off_interval))},
          {"mean_c_on", std::stod(format_number(m.mean_c_on))},
          {"mean_c_off", std::stod(format_number(m.mean_c_off))}};
      totals[i][0] += m.hit_rate_on_interval;
      totals[i][1] += m.false_alarm_rate_off_interval;
      totals[i][2] += m.mean_c_on;
      totals[i][3] += m.mean_c_off;
    }
    runs.push_back(std::move(run));
  }
  const double count = static_cast<double>(a.seeds);
  for (std::size_t i = 0; i < std::size(kAllKinds); ++i) {
    per_kind[std::string(to_string(kAllKinds[i]))] = {
        {"mean_hit_rate_on_interval", std::stod(format_number(totals[i][0] / count))},
        {"mean_false_alarm_rate_off_interval", std::stod(format_number(totals[i][1] / count))},
        {"mean_c_on", std::stod(format_number(totals[i][2] / count))},
        {"mean_c_off", std::stod(format_number(totals[i][3] / count))}};
  }
  summary["criteria"] = per_kind;
  summary["runs"] = runs;
  const auto path = output_path(g, "", "demo_" + a.experiment + "_summary.json");
  write_text(path, summary.dump(2) + "\n");
  std::cout << "wrote " << path.string() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"statcx: statistical complexity of spectral distributions"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Base seed for synthesized signals")
      ->each([&](const std::string&) { g.seed_given = true; });
  app.add_option("--out-dir", g.out_dir, "Directory for outputs")->capture_default_str();
  app.add_option("--format", g.format, "Table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  TablesArgs tables;
  auto* c_tables = app.add_subcommand("tables", "Optimal family parameters per (kind, N)");
  c_tables->add_option("--n", tables.n_list, "Window dimensions")->delimiter(',')->capture_default_str();
  c_tables->add_option("--kinds", tables.kinds, "sq, jsd, tv or all")->delimiter(',')->capture_default_str();
  c_tables->add_option("--mode", tables.mode, "continuous or integer")->capture_default_str();
  c_tables->add_option("-o,--output", tables.output, "Output file");

  GridArgs grid;
  auto* c_grid = app.add_subcommand("grid", "Complexity surface over (omega, p_max) or the N=3 simplex");
  c_grid->add_option("--kind", grid.kind)->capture_default_str();
  c_grid->add_option("--n", grid.n)->capture_default_str();
  c_grid->add_option("--step", grid.step)->capture_default_str();
  c_grid->add_flag("--simplex", grid.simplex, "(p1, p2) grid of the N=3 simplex");
  c_grid->add_option("-o,--output", grid.output, "Output file");

  SynthArgs synth;
  auto* c_synth = app.add_subcommand("synth", "Synthesize a gated harmonic signal");
  c_synth->add_option("--config", synth.config, "JSON signal config");
  c_synth->add_option("--experiment", synth.experiment, "k3, k30 or noise (without --config)")
      ->capture_default_str();
  c_synth->add_option("--snr", synth.snr, "Per-sample SNR; sets the noise level");
  c_synth->add_option("-o,--output", synth.output)->capture_default_str();
  c_synth->add_option("--sample-format", synth.sample_format, "f64, csv or wav (default: by extension)");

  DetectArgs det;
  auto* c_detect = app.add_subcommand("detect", "Windowed complexity detection on a sample file");
  c_detect->add_option("input", det.input, "Sample file")->required();
  c_detect->add_option("--input-format", det.input_format, "f64, csv or wav (default: by extension)");
  c_detect->add_option("--config", det.config, "Signal config for sample rate and indicator");
  c_detect->add_option("--kind", det.kind)->capture_default_str();
  c_detect->add_option("--window", det.window)->capture_default_str();
  c_detect->add_option("--hop", det.hop, "0 means one window")->capture_default_str();
  c_detect->add_option("--fraction", det.fraction)->capture_default_str();
  c_detect->add_option("--threshold", det.threshold, "Fixed level instead of fraction * C_max");
  c_detect->add_option("--sample-rate", det.sample_rate);
  c_detect->add_option("--indicator", det.indicator, "start,end in seconds")->delimiter(',');
  c_detect->add_option("--spectrum", det.spectrum, "power or magnitude")->capture_default_str();
  c_detect->add_option("--prefix", det.prefix, "Output file stem (default: input stem)");

  DemoArgs demo;
  auto* c_demo = app.add_subcommand("demo", "Reference experiment with all three criteria");
  c_demo->add_option("experiment", demo.experiment, "k3 or k30")->capture_default_str();
  c_demo->add_option("--seeds", demo.seeds, "Number of seeds, starting at --seed")->capture_default_str();
  c_demo->add_option("--spectrum", demo.spectrum, "power or magnitude")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigExit;
  }

  try {
    if (*c_tables) return run_tables(g, tables);
    if (*c_grid) return run_grid(g, grid);
    if (*c_synth) return run_synth(g, synth);
    if (*c_detect) return run_detect(g, det);
    if (*c_demo) return run_demo(g, demo);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kOk;
}
