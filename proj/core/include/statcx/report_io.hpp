#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "statcx/distribution.hpp"
#include "statcx/optimizer.hpp"
#include "statcx/sigproc.hpp"

namespace statcx {

/// Plain-text numbers with six significant digits and a dot separator.
std::string format_number(double value);

/// `kind,n,c_star,p_max_star,omega_star,n_minus_k_star`
void write_tables_csv(std::ostream& out, std::span<const OptimumRecord> rows);

/// `t_center,c_value,decision`
void write_series_csv(std::ostream& out, const WindowSeries& series);

/// JSON array of probabilities.
std::string distribution_json(const DiscreteDistribution& p);

std::string signal_config_json(const SignalConfig& config);

/// Kind, threshold, metrics and series; `config` is echoed when known.
std::string report_json(const DetectionReport& report, const SignalConfig* config = nullptr);

std::string tables_json(std::span<const OptimumRecord> rows);

}  // namespace statcx
