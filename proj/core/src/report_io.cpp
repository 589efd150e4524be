#include "statcx/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace statcx {
namespace {

using nlohmann::ordered_json;

// Rounds through the same six-digit text used by the CSV writers so CSV and
// JSON outputs agree.
ordered_json number(double value) {
  if (!std::isfinite(value)) return nullptr;
  return std::stod(format_number(value));
}

std::string_view scale_name(SpectrumScale scale) {
  return scale == SpectrumScale::kPower ? "power" : "magnitude";
}

ordered_json config_object(const SignalConfig& config) {
  ordered_json components = ordered_json::array();
  for (const auto& h : config.components) {
    components.push_back({{"amplitude", h.amplitude}, {"frequency", h.frequency}, {"phase", h.phase}});
  }
  return {{"sample_rate", config.sample_rate},
          {"duration", config.duration},
          {"components", components},
          {"noise_sigma", config.noise_sigma},
          {"indicator", {{"start", config.indicator_on.start}, {"end", config.indicator_on.end}}},
          {"seed", config.seed},
          {"snr", number(config.snr())}};
}

ordered_json record_object(const OptimumRecord& r) {
  return {{"kind", std::string(to_string(r.kind))},
          {"n", r.n},
          {"c_star", number(r.c_star)},
          {"p_max_star", number(r.p_max_star)},
          {"omega_star", number(r.omega_star)},
          {"n_minus_k_star", r.n_minus_k_star},
          {"mode", r.mode == SearchMode::kContinuous ? "continuous" : "integer"}};
}

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

void write_tables_csv(std::ostream& out, std::span<const OptimumRecord> rows) {
  out << "kind,n,c_star,p_max_star,omega_star,n_minus_k_star\n";
  for (const auto& r : rows) {
    out << to_string(r.kind) << ',' << r.n << ',' << format_number(r.c_star) << ','
        << format_number(r.p_max_star) << ',' << format_number(r.omega_star) << ','
        << r.n_minus_k_star << '\n';
  }
}

void write_series_csv(std::ostream& out, const WindowSeries& series) {
  out << "t_center,c_value,decision\n";
  for (const auto& w : series.windows) {
    out << format_number(w.t_center) << ',' << format_number(w.c_value) << ','
        << (w.decision ? 1 : 0) << '\n';
  }
}

std::string distribution_json(const DiscreteDistribution& p) {
  ordered_json arr = ordered_json::array();
  for (double x : p) arr.push_back(x);
  return arr.dump();
}

std::string signal_config_json(const SignalConfig& config) { return config_object(config).dump(2); }

std::string report_json(const DetectionReport& report, const SignalConfig* config) {
  ordered_json doc;
  if (config) doc["config"] = config_object(*config);
  doc["kind"] = std::string(to_string(report.kind));
  doc["fraction"] = report.fraction;
  doc["threshold"] = number(report.threshold);
  doc["spectrum"] = std::string(scale_name(report.scale));
  doc["window_length"] = report.series.window_length;
  doc["hop"] = report.series.hop;
  doc["sample_rate"] = report.series.sample_rate;
  const auto& m = report.metrics;
  doc["metrics"] = {{"hit_rate_on_interval", number(m.hit_rate_on_interval)},
                    {"false_alarm_rate_off_interval", number(m.false_alarm_rate_off_interval)},
                    {"windows_on", m.windows_on},
                    {"windows_off", m.windows_off},
                    {"hits", m.hits},
                    {"false_alarms", m.false_alarms},
                    {"mean_c_on", number(m.mean_c_on)},
                    {"mean_c_off", number(m.mean_c_off)}};
  ordered_json series = ordered_json::array();
  for (const auto& w : report.series.windows) {
    series.push_back({{"t_center", number(w.t_center)},
                      {"c_value", number(w.c_value)},
                      {"decision", w.decision}});
  }
  doc["series"] = std::move(series);
  return doc.dump(2);
}

std::string tables_json(std::span<const OptimumRecord> rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows) arr.push_back(record_object(r));
  return arr.dump(2);
}

}  // namespace statcx
