#include "statcx/signal_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "statcx/error.hpp"

namespace statcx {
namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <typename T>
void put_le(std::ostream& out, T value) {
  std::array<unsigned char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
bool get_le(std::istream& in, T& value) {
  std::array<unsigned char, sizeof(T)> bytes;
  if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) return false;
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  std::memcpy(&value, bytes.data(), sizeof(T));
  return true;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  return in;
}

void write_wav(std::ostream& out, std::span<const double> samples, std::uint32_t sample_rate) {
  double peak = 0.0;
  for (double x : samples) peak = std::max(peak, std::fabs(x));
  const double scale = peak > 0.0 ? 32767.0 / peak : 0.0;

  const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  out.write("RIFF", 4);
  put_le<std::uint32_t>(out, 36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  put_le<std::uint32_t>(out, 16);
  put_le<std::uint16_t>(out, 1);  // PCM
  put_le<std::uint16_t>(out, 1);  // mono
  put_le<std::uint32_t>(out, sample_rate);
  put_le<std::uint32_t>(out, sample_rate * 2);
  put_le<std::uint16_t>(out, 2);
  put_le<std::uint16_t>(out, 16);
  out.write("data", 4);
  put_le<std::uint32_t>(out, data_bytes);
  for (double x : samples) {
    const double q = std::clamp(std::round(x * scale), -32768.0, 32767.0);
    put_le<std::int16_t>(out, static_cast<std::int16_t>(q));
  }
}

SampleData read_wav(std::istream& in) {
  char tag[4];
  std::uint32_t size = 0;
  if (!in.read(tag, 4) || std::memcmp(tag, "RIFF", 4) != 0) throw Error(ErrorCode::kParse, "not a RIFF file");
  get_le(in, size);
  if (!in.read(tag, 4) || std::memcmp(tag, "WAVE", 4) != 0) throw Error(ErrorCode::kParse, "not a WAVE file");

  SampleData data;
  bool have_format = false;
  while (in.read(tag, 4) && get_le(in, size)) {
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      std::uint16_t audio_format = 0, channels = 0, block_align = 0, bits = 0;
      std::uint32_t rate = 0, byte_rate = 0;
      get_le(in, audio_format);
      get_le(in, channels);
      get_le(in, rate);
      get_le(in, byte_rate);
      get_le(in, block_align);
      get_le(in, bits);
      if (!in) throw Error(ErrorCode::kParse, "truncated fmt chunk");
      if (audio_format != 1 || channels != 1 || bits != 16) {
        throw Error(ErrorCode::kParse, "only 16-bit PCM mono WAV is supported");
      }
      in.ignore(size - 16 + (size & 1));
      data.sample_rate = rate;
      have_format = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      if (!have_format) throw Error(ErrorCode::kParse, "data chunk before fmt chunk");
      data.samples.reserve(size / 2);
      for (std::uint32_t i = 0; i < size / 2; ++i) {
        std::int16_t v = 0;
        if (!get_le(in, v)) throw Error(ErrorCode::kParse, "truncated data chunk");
        data.samples.push_back(static_cast<double>(v) / 32768.0);
      }
      return data;
    } else {
      in.ignore(size + (size & 1));
    }
  }
  throw Error(ErrorCode::kParse, "WAV file has no data chunk");
}

}  // namespace

std::optional<SampleFormat> parse_sample_format(std::string_view text) noexcept {
  if (text == "f64" || text == "raw") return SampleFormat::kRawF64;
  if (text == "csv") return SampleFormat::kCsv;
  if (text == "wav") return SampleFormat::kWav;
  return std::nullopt;
}

std::string_view to_string(SampleFormat format) noexcept {
  switch (format) {
    case SampleFormat::kRawF64: return "f64";
    case SampleFormat::kCsv: return "csv";
    case SampleFormat::kWav: return "wav";
  }
  return "?";
}

SampleFormat format_from_extension(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".wav") return SampleFormat::kWav;
  if (ext == ".csv") return SampleFormat::kCsv;
  return SampleFormat::kRawF64;
}

void write_samples(const std::filesystem::path& path, std::span<const double> samples,
                   SampleFormat format, std::uint32_t sample_rate) {
  auto out = open_out(path);
  switch (format) {
    case SampleFormat::kRawF64:
      for (double x : samples) put_le<double>(out, x);
      break;
    case SampleFormat::kCsv:
      out.precision(17);
      out << "x\n";
      for (double x : samples) out << x << '\n';
      break;
    case SampleFormat::kWav:
      write_wav(out, samples, sample_rate);
      break;
  }
  if (!out.flush()) throw Error(ErrorCode::kIo, "write to '" + path.string() + "' failed");
}

SampleData read_samples(const std::filesystem::path& path, SampleFormat format) {
  auto in = open_in(path);
  SampleData data;
  switch (format) {
    case SampleFormat::kRawF64: {
      double x = 0.0;
      while (get_le(in, x)) data.samples.push_back(x);
      if (in.gcount() != 0) throw Error(ErrorCode::kParse, "raw file length is not a multiple of 8");
      break;
    }
    case SampleFormat::kCsv: {
      std::string line;
      if (!std::getline(in, line)) throw Error(ErrorCode::kParse, "empty sample CSV");
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line != "x") throw Error(ErrorCode::kParse, "expected header 'x', got '" + line + "'");
      while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t used = 0;
        try {
          data.samples.push_back(std::stod(line, &used));
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != line.size()) throw Error(ErrorCode::kParse, "bad sample '" + line + "'");
      }
      break;
    }
    case SampleFormat::kWav:
      data = read_wav(in);
      break;
  }
  return data;
}

}  // namespace statcx
