#include "run_config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "statcx/error.hpp"

namespace statcx::cli {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::string_view where, std::initializer_list<std::string_view> keys) {
  if (!obj.is_object()) throw Error(ErrorCode::kParse, std::string(where) + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto k : keys) known = known || key == k;
    if (!known) throw Error(ErrorCode::kParse, "unknown key '" + key + "' in " + std::string(where));
  }
}

double number_at(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) throw Error(ErrorCode::kParse, std::string("'") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

SignalConfig parse_signal_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  reject_unknown(doc, "config",
                 {"sample_rate", "duration", "components", "noise_sigma", "snr", "indicator", "seed"});

  SignalConfig config;
  const double fs = number_at(doc, "sample_rate", config.sample_rate);
  if (!(fs >= 1.0) || fs != std::floor(fs) || fs > 4294967295.0) {
    throw Error(ErrorCode::kRange, "sample_rate must be a positive integer");
  }
  config.sample_rate = static_cast<std::uint32_t>(fs);
  config.duration = number_at(doc, "duration", config.duration);

  if (doc.contains("components")) {
    const auto& list = doc.at("components");
    if (!list.is_array()) throw Error(ErrorCode::kParse, "'components' must be an array");
    for (const auto& item : list) {
      reject_unknown(item, "component", {"amplitude", "frequency", "phase"});
      Harmonic h;
      h.amplitude = number_at(item, "amplitude", h.amplitude);
      if (!item.contains("frequency")) throw Error(ErrorCode::kParse, "component without 'frequency'");
      h.frequency = number_at(item, "frequency", 0.0);
      h.phase = number_at(item, "phase", h.phase);
      config.components.push_back(h);
    }
  }

  if (doc.contains("indicator")) {
    const auto& ind = doc.at("indicator");
    reject_unknown(ind, "indicator", {"start", "end"});
    config.indicator_on.start = number_at(ind, "start", config.indicator_on.start);
    config.indicator_on.end = number_at(ind, "end", config.indicator_on.end);
  }

  if (doc.contains("seed")) {
    const auto& s = doc.at("seed");
    if (!s.is_number_unsigned()) throw Error(ErrorCode::kParse, "'seed' must be a nonnegative integer");
    config.seed = s.get<std::uint64_t>();
  }

  if (doc.contains("noise_sigma")) {
    config.noise_sigma = number_at(doc, "noise_sigma", 0.0);
  } else if (doc.contains("snr") && !doc.at("snr").is_null()) {
    const double snr = number_at(doc, "snr", 1.0);
    if (!(snr > 0.0)) throw Error(ErrorCode::kRange, "snr must be positive");
    double power = 0.0;
    for (const auto& h : config.components) power += 0.5 * h.amplitude * h.amplitude;
    config.noise_sigma = power > 0.0 ? std::sqrt(power / snr) : 1.0;
  }

  config.validate();
  return config;
}

SignalConfig load_signal_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_signal_config(text.str());
}

}  // namespace statcx::cli
