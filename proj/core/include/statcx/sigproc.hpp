#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "statcx/complexity.hpp"
#include "statcx/distribution.hpp"

namespace statcx {

struct Harmonic {
  double amplitude = 1.0;
  double frequency = 0.0;  // Hz
  double phase = 0.0;      // radians
};

/// Closed time interval in seconds.
struct Interval {
  double start = 0.0;
  double end = 0.0;

  bool contains(double t) const noexcept { return t >= start && t <= end; }
};

/// Harmonics gated by an indicator interval, plus white Gaussian noise.
struct SignalConfig {
  std::uint32_t sample_rate = 8192;
  double duration = 10.0;
  std::vector<Harmonic> components;
  double noise_sigma = 0.0;
  Interval indicator_on{3.0, 7.0};
  std::uint64_t seed = 0;

  /// Throws kAliasing for a frequency at or above Nyquist and kRange for
  /// any other violated field constraint.
  void validate() const;

  std::size_t sample_count() const;

  /// Per-sample SNR, sum(A_i^2 / 2) / sigma^2; +inf without noise.
  double snr() const;
};

/// Defaults of the bundled detection experiments.
struct ReferenceSetup {
  static constexpr std::uint32_t kSampleRate = 8192;
  static constexpr std::size_t kWindowLength = 2048;
  static constexpr double kDuration = 10.0;
  static constexpr Interval kIndicator{3.0, 7.0};
  static constexpr std::size_t kMinBin = 16;
};

/// Reference experiment with `components` equal-amplitude harmonics at
/// distinct bin-aligned frequencies m * fs / N, m in [16, N/2 - 16], random
/// phases, and noise set to the requested per-sample SNR. With zero
/// components the result is unit-variance noise.
SignalConfig reference_config(std::size_t components, std::uint64_t seed, double snr = 1.0);

/// x(t) = I(t) * sum A_i cos(2 pi f_i t + phi_i) + w(t) at t = n / fs.
std::vector<double> synthesize(const SignalConfig& config);

enum class SpectrumScale { kPower, kMagnitude };

/// Two-sided DFT spectrum of a power-of-two window, normalized to a
/// distribution over all N bins (DC included). Reuses one FFT plan across
/// calls; a single instance is not safe for concurrent use.
class SpectrumAnalyzer {
 public:
  explicit SpectrumAnalyzer(std::size_t window_length, SpectrumScale scale = SpectrumScale::kPower);
  ~SpectrumAnalyzer();
  SpectrumAnalyzer(SpectrumAnalyzer&&) noexcept;
  SpectrumAnalyzer& operator=(SpectrumAnalyzer&&) noexcept;
  SpectrumAnalyzer(const SpectrumAnalyzer&) = delete;
  SpectrumAnalyzer& operator=(const SpectrumAnalyzer&) = delete;

  std::size_t window_length() const noexcept;

  /// An all-zero window maps to the uniform distribution.
  DiscreteDistribution operator()(std::span<const double> window);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

DiscreteDistribution spectrum_distribution(std::span<const double> window,
                                           SpectrumScale scale = SpectrumScale::kPower);

struct WindowResult {
  std::size_t first_sample;
  double t_center;  // seconds
  DiscreteDistribution distribution;
  double c_value;
  bool decision;  // c_value > threshold
};

struct WindowSeries {
  std::size_t window_length;
  std::size_t hop;
  double sample_rate;
  double threshold;
  std::vector<WindowResult> windows;
};

struct SeriesOptions {
  std::size_t window_length = ReferenceSetup::kWindowLength;
  std::size_t hop = ReferenceSetup::kWindowLength;
  ComplexityKind kind = ComplexityKind::kTv;
  double threshold = 0.0;
  SpectrumScale scale = SpectrumScale::kPower;
};

/// Slides a window over the samples; the trailing partial window is dropped.
WindowSeries complexity_series(std::span<const double> samples, double sample_rate,
                               const SeriesOptions& options);

struct DetectionMetrics {
  std::size_t windows_on = 0;   // fully inside the indicator interval
  std::size_t windows_off = 0;  // fully outside it
  std::size_t hits = 0;
  std::size_t false_alarms = 0;
  double hit_rate_on_interval = 0.0;
  double false_alarm_rate_off_interval = 0.0;
  double mean_c_on = 0.0;
  double mean_c_off = 0.0;
};

struct DetectionReport {
  ComplexityKind kind;
  double fraction;
  double threshold;
  SpectrumScale scale;
  WindowSeries series;
  DetectionMetrics metrics;
};

struct DetectOptions {
  std::size_t window_length = ReferenceSetup::kWindowLength;
  std::size_t hop = 0;  // 0 means hop = window_length
  double fraction = 0.25;
  /// Skips the optimizer when the caller already knows the level.
  std::optional<double> threshold;
  SpectrumScale scale = SpectrumScale::kPower;
};

DetectionMetrics score_windows(const WindowSeries& series, Interval indicator_on);

DetectionReport detect(std::span<const double> samples, double sample_rate, Interval indicator_on,
                       ComplexityKind kind, const DetectOptions& options = {});

DetectionReport detect(std::span<const double> samples, const SignalConfig& config,
                       ComplexityKind kind, const DetectOptions& options = {});

}  // namespace statcx
