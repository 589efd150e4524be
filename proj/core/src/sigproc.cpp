#include "statcx/sigproc.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>

#include "statcx/error.hpp"
#include "statcx/optimizer.hpp"
#include "statcx/random.hpp"
#include "summation.hpp"

namespace statcx {
namespace {

// Plan creation and destruction in FFTW are not thread-safe.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

double sample_time(std::size_t index, double sample_rate) {
  return static_cast<double>(index) / sample_rate;
}

// Mixes the seed so the frequency/phase draw and the noise stream of the
// same seed are not the same sequence.
constexpr std::uint64_t kConfigStream = 0x9E3779B97F4A7C15ULL;

}  // namespace

void SignalConfig::validate() const {
  if (sample_rate == 0) throw Error(ErrorCode::kRange, "sample_rate must be positive");
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw Error(ErrorCode::kRange, "duration must be positive");
  }
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw Error(ErrorCode::kRange, "noise_sigma must be >= 0");
  }
  if (!(indicator_on.start >= 0.0 && indicator_on.start < indicator_on.end &&
        indicator_on.end <= duration)) {
    throw Error(ErrorCode::kRange, "indicator interval must satisfy 0 <= start < end <= duration");
  }
  const double nyquist = 0.5 * static_cast<double>(sample_rate);
  for (const auto& h : components) {
    if (!std::isfinite(h.amplitude) || !std::isfinite(h.phase) || !(h.frequency >= 0.0)) {
      throw Error(ErrorCode::kRange, "harmonic fields must be finite with frequency >= 0");
    }
    if (h.frequency >= nyquist) {
      throw Error(ErrorCode::kAliasing, "frequency " + std::to_string(h.frequency) +
                                            " Hz is not below Nyquist " + std::to_string(nyquist));
    }
  }
}

std::size_t SignalConfig::sample_count() const {
  return static_cast<std::size_t>(std::llround(static_cast<double>(sample_rate) * duration));
}

double SignalConfig::snr() const {
  double power = 0.0;
  for (const auto& h : components) power += 0.5 * h.amplitude * h.amplitude;
  if (noise_sigma == 0.0) return std::numeric_limits<double>::infinity();
  return power / (noise_sigma * noise_sigma);
}

SignalConfig reference_config(std::size_t components, std::uint64_t seed, double snr) {
  if (!(snr > 0.0)) throw Error(ErrorCode::kRange, "snr must be positive");
  constexpr std::size_t n = ReferenceSetup::kWindowLength;
  constexpr std::size_t lo = ReferenceSetup::kMinBin;
  constexpr std::size_t hi = n / 2 - ReferenceSetup::kMinBin;
  if (components > hi - lo + 1) {
    throw Error(ErrorCode::kRange, "too many components for distinct bins");
  }

  SignalConfig config;
  config.sample_rate = ReferenceSetup::kSampleRate;
  config.duration = ReferenceSetup::kDuration;
  config.indicator_on = ReferenceSetup::kIndicator;
  config.seed = seed;

  // Partial Fisher-Yates over the admissible bins.
  PortableRng rng(seed ^ kConfigStream);
  std::vector<std::size_t> bins(hi - lo + 1);
  for (std::size_t i = 0; i < bins.size(); ++i) bins[i] = lo + i;
  const double bin_width = static_cast<double>(config.sample_rate) / static_cast<double>(n);
  for (std::size_t i = 0; i < components; ++i) {
    const std::size_t j = i + rng.below(bins.size() - i);
    std::swap(bins[i], bins[j]);
    Harmonic h;
    h.amplitude = 1.0;
    h.frequency = static_cast<double>(bins[i]) * bin_width;
    h.phase = 2.0 * std::numbers::pi * rng.uniform01();
    config.components.push_back(h);
  }

  if (components == 0) {
    config.noise_sigma = 1.0;
  } else {
    const double power = 0.5 * static_cast<double>(components);
    config.noise_sigma = std::sqrt(power / snr);
  }
  return config;
}

std::vector<double> synthesize(const SignalConfig& config) {
  config.validate();
  const std::size_t count = config.sample_count();
  const double fs = static_cast<double>(config.sample_rate);
  std::vector<double> out(count, 0.0);

  for (std::size_t i = 0; i < count; ++i) {
    const double t = sample_time(i, fs);
    if (!config.indicator_on.contains(t)) continue;
    double acc = 0.0;
    for (const auto& h : config.components) {
      acc += h.amplitude * std::cos(2.0 * std::numbers::pi * h.frequency * t + h.phase);
    }
    out[i] = acc;
  }

  if (config.noise_sigma > 0.0) {
    PortableRng rng(config.seed);
    for (double& x : out) x += config.noise_sigma * rng.normal();
  }
  return out;
}

// ---------------------------------------------------------------------------

struct SpectrumAnalyzer::Impl {
  std::size_t n;
  SpectrumScale scale;
  double* input = nullptr;
  fftw_complex* output = nullptr;
  fftw_plan plan = nullptr;
  std::vector<double> weights;

  Impl(std::size_t length, SpectrumScale s) : n(length), scale(s), weights(length) {
    std::lock_guard lock(fftw_planner_mutex());
    input = fftw_alloc_real(n);
    output = fftw_alloc_complex(n / 2 + 1);
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), input, output, FFTW_ESTIMATE);
  }

  ~Impl() {
    std::lock_guard lock(fftw_planner_mutex());
    if (plan) fftw_destroy_plan(plan);
    fftw_free(input);
    fftw_free(output);
  }
};

SpectrumAnalyzer::SpectrumAnalyzer(std::size_t window_length, SpectrumScale scale) {
  if (window_length < 2 || !std::has_single_bit(window_length)) {
    throw Error(ErrorCode::kLength,
                "window length " + std::to_string(window_length) + " is not a power of two >= 2");
  }
  impl_ = std::make_unique<Impl>(window_length, scale);
}

SpectrumAnalyzer::~SpectrumAnalyzer() = default;
SpectrumAnalyzer::SpectrumAnalyzer(SpectrumAnalyzer&&) noexcept = default;
SpectrumAnalyzer& SpectrumAnalyzer::operator=(SpectrumAnalyzer&&) noexcept = default;

std::size_t SpectrumAnalyzer::window_length() const noexcept { return impl_->n; }

DiscreteDistribution SpectrumAnalyzer::operator()(std::span<const double> window) {
  Impl& s = *impl_;
  if (window.size() != s.n) {
    throw Error(ErrorCode::kLength, "window has " + std::to_string(window.size()) +
                                        " samples, analyzer expects " + std::to_string(s.n));
  }
  for (std::size_t i = 0; i < s.n; ++i) {
    if (!std::isfinite(window[i])) throw Error(ErrorCode::kRange, "non-finite sample");
    s.input[i] = window[i];
  }
  fftw_execute(s.plan);

  // Real input: bin N - k is the conjugate of bin k.
  const std::size_t half = s.n / 2;
  for (std::size_t k = 0; k <= half; ++k) {
    const double re = s.output[k][0];
    const double im = s.output[k][1];
    const double power = re * re + im * im;
    const double w = s.scale == SpectrumScale::kPower ? power : std::sqrt(power);
    s.weights[k] = w;
    if (k != 0 && k != half) s.weights[s.n - k] = w;
  }

  if (std::all_of(s.weights.begin(), s.weights.end(), [](double w) { return w == 0.0; })) {
    return uniform(s.n);
  }
  return normalize(s.weights);
}

DiscreteDistribution spectrum_distribution(std::span<const double> window, SpectrumScale scale) {
  SpectrumAnalyzer analyzer(window.size(), scale);
  return analyzer(window);
}

// ---------------------------------------------------------------------------

WindowSeries complexity_series(std::span<const double> samples, double sample_rate,
                               const SeriesOptions& options) {
  if (options.hop < 1) throw Error(ErrorCode::kRange, "hop must be >= 1");
  if (!(sample_rate > 0.0)) throw Error(ErrorCode::kRange, "sample_rate must be positive");
  SpectrumAnalyzer analyzer(options.window_length, options.scale);
  if (samples.size() < options.window_length) {
    throw Error(ErrorCode::kLength, "signal of " + std::to_string(samples.size()) +
                                        " samples is shorter than one window");
  }

  WindowSeries series{options.window_length, options.hop, sample_rate, options.threshold, {}};
  const std::size_t n = options.window_length;
  for (std::size_t first = 0; first + n <= samples.size(); first += options.hop) {
    DiscreteDistribution p = analyzer(samples.subspan(first, n));
    const double c = complexity(options.kind, p);
    const double t_center = (static_cast<double>(first) + 0.5 * static_cast<double>(n)) / sample_rate;
    series.windows.push_back({first, t_center, std::move(p), c, c > options.threshold});
  }
  return series;
}

DetectionMetrics score_windows(const WindowSeries& series, Interval indicator_on) {
  DetectionMetrics m;
  detail::CompensatedSum sum_on;
  detail::CompensatedSum sum_off;
  for (const auto& w : series.windows) {
    const double t_first = sample_time(w.first_sample, series.sample_rate);
    const double t_last = sample_time(w.first_sample + series.window_length - 1, series.sample_rate);
    if (indicator_on.contains(t_first) && indicator_on.contains(t_last)) {
      ++m.windows_on;
      m.hits += w.decision;
      sum_on += w.c_value;
    } else if (t_last < indicator_on.start || t_first > indicator_on.end) {
      ++m.windows_off;
      m.false_alarms += w.decision;
      sum_off += w.c_value;
    }
  }
  if (m.windows_on > 0) {
    m.hit_rate_on_interval = static_cast<double>(m.hits) / static_cast<double>(m.windows_on);
    m.mean_c_on = sum_on.value() / static_cast<double>(m.windows_on);
  }
  if (m.windows_off > 0) {
    m.false_alarm_rate_off_interval =
        static_cast<double>(m.false_alarms) / static_cast<double>(m.windows_off);
    m.mean_c_off = sum_off.value() / static_cast<double>(m.windows_off);
  }
  return m;
}

DetectionReport detect(std::span<const double> samples, double sample_rate, Interval indicator_on,
                       ComplexityKind kind, const DetectOptions& options) {
  const double level = options.threshold
                           ? *options.threshold
                           : threshold(kind, options.window_length, options.fraction);
  SeriesOptions series_options;
  series_options.window_length = options.window_length;
  series_options.hop = options.hop == 0 ? options.window_length : options.hop;
  series_options.kind = kind;
  series_options.threshold = level;
  series_options.scale = options.scale;

  DetectionReport report{kind, options.fraction, level, options.scale,
                         complexity_series(samples, sample_rate, series_options), {}};
  report.metrics = score_windows(report.series, indicator_on);
  return report;
}

DetectionReport detect(std::span<const double> samples, const SignalConfig& config,
                       ComplexityKind kind, const DetectOptions& options) {
  return detect(samples, static_cast<double>(config.sample_rate), config.indicator_on, kind, options);
}

}  // namespace statcx
