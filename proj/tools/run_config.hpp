#pragma once

#include <filesystem>
#include <string>

#include "statcx/sigproc.hpp"

namespace statcx::cli {

/// Reads a signal config from JSON. Accepted keys mirror the echoed config
/// in detection reports: sample_rate, duration, components[{amplitude,
/// frequency, phase}], noise_sigma, snr, indicator{start, end}, seed.
/// `snr` only matters when noise_sigma is absent. Unknown keys and type
/// errors raise kParse; the result is validated.
SignalConfig parse_signal_config(const std::string& text);
SignalConfig load_signal_config(const std::filesystem::path& path);

}  // namespace statcx::cli
