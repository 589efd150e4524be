#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace statcx {

enum class SampleFormat {
  kRawF64,  // little-endian IEEE-754 doubles, no header
  kCsv,     // single column with header `x`
  kWav,     // 16-bit PCM mono
};

std::optional<SampleFormat> parse_sample_format(std::string_view text) noexcept;
std::string_view to_string(SampleFormat format) noexcept;

/// Picks a format from the extension: .wav, .csv, anything else raw.
SampleFormat format_from_extension(const std::filesystem::path& path);

struct SampleData {
  std::vector<double> samples;
  std::optional<std::uint32_t> sample_rate;  // known for WAV only
};

/// WAV output is peak-normalized into [-1, 1) before quantization, so the
/// scale of the signal is not preserved; spectral distributions are.
void write_samples(const std::filesystem::path& path, std::span<const double> samples,
                   SampleFormat format, std::uint32_t sample_rate);

SampleData read_samples(const std::filesystem::path& path, SampleFormat format);

}  // namespace statcx
