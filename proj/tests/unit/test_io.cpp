#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "statcx/report_io.hpp"
#include "statcx/signal_io.hpp"
#include "test_support.hpp"

using namespace statcx;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("statcx_io_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("sample formats round-trip") {
  TempDir tmp;
  std::mt19937_64 rng(1);
  std::normal_distribution<double> gauss;
  std::vector<double> x(1000);
  for (auto& v : x) v = gauss(rng);

  write_samples(tmp.path / "a.f64", x, SampleFormat::kRawF64, 8192);
  CHECK(fs::file_size(tmp.path / "a.f64") == 8000);
  CHECK(read_samples(tmp.path / "a.f64", SampleFormat::kRawF64).samples == x);

  write_samples(tmp.path / "a.csv", x, SampleFormat::kCsv, 8192);
  CHECK(read_samples(tmp.path / "a.csv", SampleFormat::kCsv).samples == x);

  write_samples(tmp.path / "a.wav", x, SampleFormat::kWav, 8192);
  const auto wav = read_samples(tmp.path / "a.wav", SampleFormat::kWav);
  CHECK(wav.sample_rate == 8192u);
  REQUIRE(wav.samples.size() == x.size());
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::fabs(v));
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(wav.samples[i] >= -1.0);
    CHECK(wav.samples[i] < 1.0);
    CHECK(std::fabs(wav.samples[i] * 32768.0 / 32767.0 - x[i] / peak) <= 1.0 / 32767.0);
  }
}

TEST_CASE("sample format helpers and errors") {
  CHECK(format_from_extension("x.wav") == SampleFormat::kWav);
  CHECK(format_from_extension("x.csv") == SampleFormat::kCsv);
  CHECK(format_from_extension("x.bin") == SampleFormat::kRawF64);
  CHECK(parse_sample_format("f64") == SampleFormat::kRawF64);
  CHECK_FALSE(parse_sample_format("mp3").has_value());

  TempDir tmp;
  CHECK(code_of([&] { read_samples(tmp.path / "missing.f64", SampleFormat::kRawF64); }) == ErrorCode::kIo);
  {
    std::ofstream(tmp.path / "short.f64", std::ios::binary) << "abc";
  }
  CHECK(code_of([&] { read_samples(tmp.path / "short.f64", SampleFormat::kRawF64); }) == ErrorCode::kParse);
  {
    std::ofstream(tmp.path / "bad.csv") << "y\n1\n";
  }
  CHECK(code_of([&] { read_samples(tmp.path / "bad.csv", SampleFormat::kCsv); }) == ErrorCode::kParse);
  CHECK(code_of([&] { write_samples(tmp.path / "nodir" / "x.f64", {}, SampleFormat::kRawF64, 1); }) ==
        ErrorCode::kIo);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.046527) == "0.046527");
  CHECK(format_number(0.1416556789) == "0.141656");
  CHECK(format_number(1234567.0) == "1.23457e+06");
}

TEST_CASE("tables CSV") {
  const OptimumRecord rows[] = {
      {ComplexityKind::kTv, 512, 0.89006, 0.99908, 0.511952, SearchMode::kContinuous, 56}};
  std::ostringstream out;
  write_tables_csv(out, rows);
  CHECK(out.str() == "kind,n,c_star,p_max_star,omega_star,n_minus_k_star\ntv,512,0.511952,0.99908,0.89006,56\n");
  const auto doc = nlohmann::json::parse(tables_json(rows));
  CHECK(doc[0]["kind"] == "tv");
  CHECK(doc[0]["n_minus_k_star"] == 56);
}

TEST_CASE("series CSV and report JSON") {
  const auto config = reference_config(3, 2);
  DetectOptions options;
  options.threshold = 0.1417;
  const auto report = detect(synthesize(config), config, ComplexityKind::kTv, options);

  std::ostringstream csv;
  write_series_csv(csv, report.series);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "t_center,c_value,decision");
  std::size_t rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == report.series.windows.size());

  const auto doc = nlohmann::json::parse(report_json(report, &config));
  CHECK(doc["kind"] == "tv");
  CHECK(doc["threshold"] == 0.1417);
  CHECK(doc["spectrum"] == "power");
  CHECK(doc["config"]["sample_rate"] == 8192);
  CHECK(doc["config"]["components"].size() == 3);
  CHECK(doc["metrics"]["windows_on"] == 16);
  CHECK(doc["series"].size() == report.series.windows.size());
  CHECK(nlohmann::json::parse(report_json(report)).contains("config") == false);

  const auto arr = nlohmann::json::parse(distribution_json(DiscreteDistribution({0.25, 0.75})));
  CHECK(arr.size() == 2);
  CHECK(arr[1] == 0.75);
}
