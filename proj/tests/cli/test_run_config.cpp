#include <doctest.h>

#include <cmath>

#include "run_config.hpp"
#include "statcx/error.hpp"
#include "statcx/report_io.hpp"
#include "test_support.hpp"

using namespace statcx;

TEST_CASE("signal config parses every field") {
  const auto c = cli::parse_signal_config(R"({
    "sample_rate": 4096, "duration": 2,
    "components": [{"amplitude": 2, "frequency": 100, "phase": 0.5}],
    "noise_sigma": 0.25, "indicator": {"start": 0.5, "end": 1.5}, "seed": 9})");
  CHECK(c.sample_rate == 4096);
  CHECK(c.duration == 2.0);
  REQUIRE(c.components.size() == 1);
  CHECK(c.components[0].amplitude == 2.0);
  CHECK(c.components[0].frequency == 100.0);
  CHECK(c.components[0].phase == 0.5);
  CHECK(c.noise_sigma == 0.25);
  CHECK(c.indicator_on.start == 0.5);
  CHECK(c.indicator_on.end == 1.5);
  CHECK(c.seed == 9);
}

TEST_CASE("snr sets the noise level only without noise_sigma") {
  const auto c = cli::parse_signal_config(
      R"({"components": [{"frequency": 100}, {"frequency": 200}], "snr": 4})");
  CHECK(c.noise_sigma == doctest::Approx(0.5));
  CHECK(c.snr() == doctest::Approx(4.0));
  const auto d = cli::parse_signal_config(
      R"({"components": [{"frequency": 100}], "snr": 4, "noise_sigma": 1})");
  CHECK(d.noise_sigma == 1.0);
}

TEST_CASE("echoed config round-trips") {
  auto ref = reference_config(3, 5);
  const auto back = cli::parse_signal_config(signal_config_json(ref));
  CHECK(back.sample_rate == ref.sample_rate);
  CHECK(back.components.size() == 3);
  CHECK(back.seed == 5);
  CHECK(std::fabs(back.noise_sigma - ref.noise_sigma) <= 1e-12);
}

TEST_CASE("config errors") {
  CHECK(code_of([] { cli::parse_signal_config("{"); }) == ErrorCode::kParse);
  CHECK(code_of([] { cli::parse_signal_config(R"({"bogus": 1})"); }) == ErrorCode::kParse);
  CHECK(code_of([] { cli::parse_signal_config(R"({"components": [{"frequency": 1, "x": 2}]})"); }) ==
        ErrorCode::kParse);
  CHECK(code_of([] { cli::parse_signal_config(R"({"duration": "long"})"); }) == ErrorCode::kParse);
  CHECK(code_of([] { cli::parse_signal_config(R"({"seed": -1})"); }) == ErrorCode::kParse);
  CHECK(code_of([] { cli::parse_signal_config(R"({"components": [{"frequency": 5000}]})"); }) ==
        ErrorCode::kAliasing);
  CHECK(code_of([] { cli::parse_signal_config(R"({"duration": -1})"); }) == ErrorCode::kRange);
  CHECK(code_of([] { cli::load_signal_config("/nonexistent/cfg.json"); }) == ErrorCode::kIo);
}
